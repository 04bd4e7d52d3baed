"""Command-line entry point for parameter sweeps and estimation runs.

Every command reads an optional flat config file (``dotted.key = value`` per
line, ``#`` starts a comment) and writes a CSV table. Summary lines are
prefixed with ``#`` so plain CSV readers skip them.

Exit codes: 0 success, 1 check failure or non-identifiable configuration,
2 configuration error.
"""
from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Sequence, TextIO

import numpy as np

from .dilation import oracle_suite
from .estimation import (
    Geometry,
    NonIdentifiableError,
    PhaseModel,
    calibrate,
    calibration_plan,
    crb_experiment,
    joint_plan,
    mle_joint,
    sample_control,
)
from .fisher import (
    _binary_bloch,
    beta_factor,
    control_fisher,
    curve_argmax,
    curve_crossing,
    phase_avg_numeric,
    standard_avg,
    standard_probe_fisher,
    superposed_avg,
    switched_avg,
)
from .noise import (
    EnvironmentModel,
    KrausChannel,
    PauliNoise,
    affine_of_channel,
    depolarizing,
    identity_channel,
    pauli_channel,
)
from .qubit import rotation_derivative, rotation_matrix
from .superposed import TransformData, optimal_geometry, transform_data

EXIT_OK, EXIT_CHECK, EXIT_CONFIG = 0, 1, 2
STRATEGIES = ("superposed", "standard", "switched")

CONFIG_KEYS = {
    "noise.family": "depolarizing | pauli | identity (default depolarizing)",
    "noise.alpha": "depolarizing contraction factor in [-1/3, 1] (default 0.5)",
    "noise.p": "Pauli probabilities p0, px, py, pz",
    "env.overlaps": "'unbiased' or four comma-separated complex overlaps, e.g. 1, 0, 0, 0",
    "geometry.mode": "optimal | explicit (default optimal)",
    "geometry.n": "rotation axis, three comma-separated reals",
    "geometry.r": "probe Bloch vector, three comma-separated reals",
    "geometry.omega": "measurement direction for the standard probe (default: probe direction)",
    "control.pc": "control weight pc in [0, 1] (default 0.5)",
    "phase.xi": "true phase for estimate (default pi/3)",
    "phase.min": "sweep-phase grid start (default 0)",
    "phase.max": "sweep-phase grid end (default 2 pi)",
    "phase.step": "sweep-phase grid step (default 2 pi / 64)",
    "phase.average": "true to append phase averages to the sweep-phase summary",
    "alpha.min": "sweep-alpha grid start (default 0)",
    "alpha.max": "sweep-alpha grid end (default 1)",
    "alpha.step": "sweep-alpha grid step (default 0.01)",
    "sweep.strategies": "subset of superposed, standard, switched (default all)",
    "sweep.numeric": "true to add a quadrature column for the superposed average",
    "quadrature.panels": "Simpson panels for numeric averages (default 4096)",
    "estimate.mode": "phase | calibrate | joint (default phase)",
    "estimate.L": "shots per record (default 10000)",
    "estimate.trials": "Monte-Carlo trials (default 500 for phase, 20 otherwise)",
    "estimate.phases": "calibration phases or joint configurations (default 6)",
    "estimate.interval": "MLE search interval, two reals (default 0, pi)",
    "oracle.configs": "random configurations for oracle-check (default 100)",
    "oracle.fault": "constant added to the analytic At matrix (negative control, default 0)",
    "seed": "unsigned integer seed (default 0)",
    "output.plot": "path of a gnuplot script to write next to the CSV",
}


class ConfigError(ValueError):
    """Malformed or inconsistent configuration."""


# ---------------------------------------------------------------- config


def parse_config_text(text: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in CONFIG_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        out[key] = value
    return out


@dataclass
class Config:
    values: dict[str, str]

    @classmethod
    def load(cls, path: str | None, overrides: Sequence[str] = ()) -> "Config":
        values: dict[str, str] = {}
        if path is not None:
            try:
                values = parse_config_text(Path(path).read_text())
            except OSError as exc:
                raise ConfigError(f"cannot read config file: {exc}") from exc
        for item in overrides:
            values.update(parse_config_text(item))
        return cls(values)

    def has(self, key: str) -> bool:
        return key in self.values

    def str(self, key: str, default: str) -> str:
        return self.values.get(key, default).strip().lower()

    def float(self, key: str, default: float) -> float:
        if key not in self.values:
            return default
        try:
            return _parse_real(self.values[key])
        except ValueError as exc:
            raise ConfigError(f"{key}: {exc}") from exc

    def int(self, key: str, default: int) -> int:
        if key not in self.values:
            return default
        try:
            return int(self.values[key])
        except ValueError as exc:
            raise ConfigError(f"{key}: expected an integer, got {self.values[key]!r}") from exc

    def bool(self, key: str, default: bool = False) -> bool:
        if key not in self.values:
            return default
        v = self.values[key].strip().lower()
        if v in ("1", "true", "yes", "on"):
            return True
        if v in ("0", "false", "no", "off"):
            return False
        raise ConfigError(f"{key}: expected a boolean, got {self.values[key]!r}")

    def reals(self, key: str, size: int | None = None) -> np.ndarray | None:
        if key not in self.values:
            return None
        try:
            vals = np.array([_parse_real(x) for x in self.values[key].split(",")])
        except ValueError as exc:
            raise ConfigError(f"{key}: {exc}") from exc
        if size is not None and vals.size != size:
            raise ConfigError(f"{key}: expected {size} values, got {vals.size}")
        return vals


def _parse_real(text: str) -> float:
    t = text.strip().lower().replace(" ", "")
    # accept simple multiples of pi such as "pi/3" or "2*pi"
    if "pi" in t:
        num, _, den = t.partition("/")
        coef = num.replace("*", "").replace("pi", "")
        c = 1.0 if coef in ("", "+") else -1.0 if coef == "-" else float(coef)
        return c * math.pi / (float(den) if den else 1.0)
    return float(t)


def _grid(lo: float, hi: float, step: float) -> np.ndarray:
    if step <= 0:
        raise ConfigError(f"grid step must be positive, got {step}")
    if hi < lo:
        raise ConfigError(f"grid end {hi} is below its start {lo}")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return lo + step * np.arange(count)


# ---------------------------------------------------------------- setup


@dataclass
class Setup:
    noise: KrausChannel
    env: EnvironmentModel
    td: TransformData
    n: np.ndarray
    r: np.ndarray
    omega: np.ndarray
    pc: float

    @property
    def coherence(self) -> float:
        return math.sqrt((1.0 - self.pc) * self.pc)

    def model(self) -> PhaseModel:
        return PhaseModel(self.td.s0, self.td.s, Geometry(self.n, self.r, self.pc))


def build_setup(cfg: Config) -> Setup:
    family = cfg.str("noise.family", "depolarizing")
    try:
        if family == "depolarizing":
            noise = pauli_channel(depolarizing(cfg.float("noise.alpha", 0.5)))
        elif family == "pauli":
            p = cfg.reals("noise.p", 4)
            if p is None:
                raise ConfigError("noise.p is required for the pauli family")
            noise = pauli_channel(PauliNoise(*p))
        elif family == "identity":
            noise = identity_channel(4)
        else:
            raise ConfigError(f"noise.family: unknown family {family!r}")

        raw_env = cfg.values.get("env.overlaps", "unbiased").strip()
        if raw_env.lower() == "unbiased":
            env = EnvironmentModel.unbiased(4)
        else:
            try:
                g = [complex(x.strip().replace(" ", "")) for x in raw_env.split(",")]
            except ValueError as exc:
                raise ConfigError(f"env.overlaps: {exc}") from exc
            if len(g) != 4:
                raise ConfigError(f"env.overlaps: expected 4 overlaps, got {len(g)}")
            env = EnvironmentModel(np.array(g))

        td = transform_data(noise, env)
        pc = cfg.float("control.pc", 0.5)
        if not 0.0 <= pc <= 1.0:
            raise ConfigError(f"control.pc must lie in [0, 1], got {pc}")

        mode = cfg.str("geometry.mode", "optimal")
        if mode == "optimal":
            n, r = optimal_geometry(td.s)
        elif mode == "explicit":
            n, r = cfg.reals("geometry.n", 3), cfg.reals("geometry.r", 3)
            if n is None or r is None:
                raise ConfigError("geometry.n and geometry.r are required in explicit mode")
            Geometry(n, r, pc)  # validation
            n = n / np.linalg.norm(n)
        else:
            raise ConfigError(f"geometry.mode: expected optimal or explicit, got {mode!r}")
    except (ArithmeticError, ConfigError):
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    omega = cfg.reals("geometry.omega", 3)
    if omega is None:
        norm = np.linalg.norm(r)
        omega = r / norm if norm > 1e-12 else np.array([1.0, 0.0, 0.0])
    elif np.linalg.norm(omega) < 1e-12:
        raise ConfigError("geometry.omega must be nonzero")
    else:
        omega = omega / np.linalg.norm(omega)
    return Setup(noise, env, td, np.asarray(n, float), np.asarray(r, float), omega, pc)


# ---------------------------------------------------------------- csv


def fmt(x) -> str:
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".12g")


@dataclass
class CsvTable:
    header: list[str]
    rows: list[list]
    summary: list[tuple[str, object]]

    def __post_init__(self):
        for row in self.rows:
            if len(row) != len(self.header):
                raise ValueError("CSV rows must match the header width")

    def write(self, fh: TextIO) -> None:
        fh.write(",".join(self.header) + "\n")
        for row in self.rows:
            fh.write(",".join(fmt(v) for v in row) + "\n")
        for key, value in self.summary:
            text = value if isinstance(value, str) else fmt(value)
            fh.write(f"# {key} = {text}\n")


def read_csv(text: str) -> tuple[list[str], np.ndarray, dict[str, str]]:
    """Parse a table written by :class:`CsvTable` back into header, data and summary."""
    lines = text.splitlines()
    header = lines[0].split(",")
    rows, summary = [], {}
    for line in lines[1:]:
        if line.startswith("#"):
            key, _, value = line[1:].partition("=")
            summary[key.strip()] = value.strip()
        elif line:
            rows.append([float(v) for v in line.split(",")])
    return header, np.array(rows, dtype=float).reshape(-1, len(header)), summary


def gnuplot_script(csv_path: str, header: Sequence[str], xlabel: str) -> str:
    plots = ", \\\n     ".join(
        f"'{csv_path}' using 1:{i + 1} with lines title '{name}'" for i, name in enumerate(header) if i
    )
    return (
        "set datafile separator ','\n"
        "set datafile commentschars '#'\n"
        "set key autotitle columnhead\n"
        f"set xlabel '{xlabel}'\n"
        "set ylabel 'Fisher information'\n"
        f"plot {plots}\n"
    )


# ---------------------------------------------------------------- commands


def _strategies(cfg: Config) -> list[str]:
    raw = cfg.values.get("sweep.strategies")
    if raw is None:
        return list(STRATEGIES)
    chosen = [s.strip().lower() for s in raw.split(",") if s.strip()]
    bad = [s for s in chosen if s not in STRATEGIES]
    if bad or not chosen:
        raise ConfigError(f"sweep.strategies must be a nonempty subset of {STRATEGIES}, got {raw!r}")
    return [s for s in STRATEGIES if s in chosen]


def _superposed_integrand(beta: float) -> Callable[[float], float]:
    return lambda x: beta**2 * math.sin(x) ** 2 / (16.0 - (1.0 + beta * abs(math.cos(x))) ** 2)


def cmd_sweep_alpha(cfg: Config, args: argparse.Namespace) -> CsvTable:
    if cfg.str("noise.family", "depolarizing") != "depolarizing":
        raise ConfigError("sweep-alpha requires noise.family = depolarizing")
    lo, hi = cfg.float("alpha.min", 0.0), cfg.float("alpha.max", 1.0)
    step = args.grid_step if args.grid_step is not None else cfg.float("alpha.step", 0.01)
    if lo < 0.0 or hi > 1.0:
        raise ConfigError(f"alpha range must lie within [0, 1], got [{lo}, {hi}]")
    grid = _grid(lo, hi, step)
    panels = args.panels if args.panels is not None else cfg.int("quadrature.panels", 4096)
    strategies = _strategies(cfg)
    funcs = {"superposed": superposed_avg, "standard": standard_avg, "switched": switched_avg}

    header = ["alpha"] + [f"fbar_{s}" for s in strategies]
    numeric = cfg.bool("sweep.numeric")
    if numeric and "superposed" in strategies:
        header.append("fbar_superposed_numeric")
    rows = []
    for a in grid:
        a = min(float(a), 1.0)
        row = [a] + [funcs[s](a) for s in strategies]
        if numeric and "superposed" in strategies:
            row.append(phase_avg_numeric(_superposed_integrand(beta_factor(alpha=a)), panels))
        rows.append(row)

    summary: list[tuple[str, object]] = []
    if grid.size >= 3:
        for s in strategies:
            if s != "standard":  # the standard curve increases monotonically
                summary.append((f"argmax_{s}", curve_argmax(funcs[s], lo, hi, step)))
        pairs = [("superposed", "standard"), ("switched", "superposed")]
        for a_name, b_name in pairs:
            if a_name in strategies and b_name in strategies:
                roots = curve_crossing(funcs[a_name], funcs[b_name], lo, hi, step)
                summary.append((f"crossing_{a_name}_{b_name}", " ".join(fmt(x) for x in roots) or "none"))
    return CsvTable(header, rows, summary)


def sweep_phase_row(setup: Setup, xi: float) -> list[float]:
    """xi, fc_control, fq_control, fc_standard, fq_standard, q_factor, p_plus."""
    td, n, w = setup.td, setup.n, setup.coherence
    r1 = rotation_matrix(n, xi) @ setup.r
    dr1 = rotation_derivative(n, r1)
    q = float(td.s0 + td.s @ r1)
    dq = float(td.s @ dr1)
    d2q = float(td.s @ rotation_derivative(n, dr1))
    fc = _binary_bloch(2 * w * q, 2 * w * dq, 2 * w * d2q)
    fq = control_fisher(setup.pc, q, dq, "quantum")
    aff = affine_of_channel(setup.noise)
    try:
        fc_std, fq_std = standard_probe_fisher(aff.A, aff.c, n, setup.r, xi, setup.omega)
    except ValueError:
        # pure output leaving the sphere cannot happen for a channel; guard against rounding
        fc_std, fq_std = math.nan, math.nan
    return [xi, fc, fq, fc_std, fq_std, q, 0.5 + w * q]


def cmd_sweep_phase(cfg: Config, args: argparse.Namespace) -> CsvTable:
    setup = build_setup(cfg)
    lo, hi = cfg.float("phase.min", 0.0), cfg.float("phase.max", 2 * math.pi)
    step = args.grid_step if args.grid_step is not None else cfg.float("phase.step", 2 * math.pi / 64)
    grid = _grid(lo, hi, step)
    header = ["xi", "fc_control", "fq_control", "fc_standard", "fq_standard", "q_factor", "p_plus"]
    rows = [sweep_phase_row(setup, float(x)) for x in grid]
    summary: list[tuple[str, object]] = [
        ("s0", setup.td.s0),
        ("s", " ".join(fmt(v) for v in setup.td.s)),
        ("n", " ".join(fmt(v) for v in setup.n)),
        ("r", " ".join(fmt(v) for v in setup.r)),
        ("pc", setup.pc),
    ]
    if cfg.bool("phase.average"):
        panels = args.panels if args.panels is not None else cfg.int("quadrature.panels", 4096)
        for col, name in ((1, "fc_control"), (3, "fc_standard")):
            avg = phase_avg_numeric(lambda x, c=col: sweep_phase_row(setup, x)[c], panels)
            summary.append((f"average_{name}", avg))
    return CsvTable(header, rows, summary)


def cmd_estimate(cfg: Config, args: argparse.Namespace) -> CsvTable:
    setup = build_setup(cfg)
    mode = cfg.str("estimate.mode", "phase")
    L = cfg.int("estimate.L", 10_000)
    trials = cfg.int("estimate.trials", 500 if mode == "phase" else 20)
    if L < 1 or trials < 1:
        raise ConfigError("estimate.L and estimate.trials must be positive")
    seed = args.seed if args.seed is not None else cfg.int("seed", 0)
    xi = cfg.float("phase.xi", math.pi / 3)
    td = setup.td

    if mode == "phase":
        interval = cfg.reals("estimate.interval", 2)
        interval = (0.0, math.pi) if interval is None else (float(interval[0]), float(interval[1]))
        rep = crb_experiment(setup.model(), xi, L, trials, seed, interval)
        rows = [[k, x] for k, x in enumerate(rep.estimates)]
        summary = [
            ("xi_true", xi),
            ("L", L),
            ("trials", trials),
            ("seed", seed),
            ("rng", rep.rng),
            ("fisher", rep.fisher),
            ("bias", rep.bias),
            ("mse", rep.mse),
            ("crb", rep.crb),
            ("ratio", rep.ratio if not rep.unbounded else "unbounded"),
        ]
        return CsvTable(["trial", "xi_hat"], rows, summary)

    children = np.random.SeedSequence(seed).spawn(trials)
    if mode == "calibrate":
        phases, geoms = calibration_plan(cfg.int("estimate.phases", 6), setup.pc)
        rows = []
        for k, child in enumerate(children):
            rng = np.random.Generator(np.random.PCG64(child))
            recs = [
                sample_control(float(0.5 + g.coherence * (td.s0 + td.s @ g.rotated(x))), L, rng)
                for x, g in zip(phases, geoms)
            ]
            cal = calibrate(phases, recs, geoms)
            rows.append([k, cal.s0, *cal.s, cal.residual])
        est = np.array([r[1:5] for r in rows])
        summary = [
            ("s0_true", td.s0),
            ("s_true", " ".join(fmt(v) for v in td.s)),
            ("s0_mean", est[:, 0].mean()),
            ("s_mean", " ".join(fmt(v) for v in est[:, 1:].mean(axis=0))),
            ("L", L),
            ("trials", trials),
            ("seed", seed),
        ]
        return CsvTable(["trial", "s0_hat", "sx_hat", "sy_hat", "sz_hat", "residual"], rows, summary)

    if mode == "joint":
        geoms = joint_plan(cfg.int("estimate.phases", 6), setup.pc)
        rows = []
        for k, child in enumerate(children):
            rng = np.random.Generator(np.random.PCG64(child))
            recs = [
                sample_control(float(0.5 + g.coherence * (td.s0 + td.s @ g.rotated(xi))), L, rng)
                for g in geoms
            ]
            je = mle_joint(recs, geoms)
            rows.append([k, je.xi, je.s0, *je.s])
        xs = np.array([r[1] for r in rows])
        summary = [
            ("xi_true", xi),
            ("s0_true", td.s0),
            ("s_true", " ".join(fmt(v) for v in td.s)),
            ("mse_xi", float(np.mean((xs - xi) ** 2))),
            ("L", L),
            ("trials", trials),
            ("seed", seed),
        ]
        return CsvTable(["trial", "xi_hat", "s0_hat", "sx_hat", "sy_hat", "sz_hat"], rows, summary)

    raise ConfigError(f"estimate.mode: expected phase, calibrate or joint, got {mode!r}")


def cmd_oracle_check(cfg: Config, args: argparse.Namespace) -> tuple[CsvTable, bool]:
    seed = args.seed if args.seed is not None else cfg.int("seed", 0)
    fault = args.fault if args.fault is not None else cfg.float("oracle.fault", 0.0)
    rep = oracle_suite(cfg.int("oracle.configs", 100), seed=seed, fault=fault)
    ok = rep.passed()
    rows = [list(r) for r in rep.rows]
    summary: list[tuple[str, object]] = [
        ("configs", rep.configs),
        ("seed", seed),
        ("max_dev_joint", rep.max_dev_joint),
        ("max_dev_dp", rep.max_dev_dp),
        ("max_dev_kraus", rep.max_dev_kraus),
        ("max_dev_unitarity", rep.max_dev_unitarity),
        ("status", "pass" if ok else "FAIL"),
    ]
    if rep.first_failure is not None:
        for key, value in rep.first_failure.items():
            arr = np.atleast_1d(value)
            if np.iscomplexobj(arr):
                text = " ".join(f"{z.real:.12g}{z.imag:+.12g}j" for z in arr)
            else:
                text = " ".join(fmt(v) for v in arr)
            summary.append((f"first_failure.{key}", text))
    header = ["config", "dev_joint", "dev_dp", "dev_kraus", "dev_unitarity"]
    return CsvTable(header, rows, summary), ok


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    keys = "\n".join(f"  {k:<20} {v}" for k, v in CONFIG_KEYS.items())
    parser = argparse.ArgumentParser(
        prog="qsuperpose",
        description="Phase estimation with coherently superposed noisy unitaries.",
        epilog=f"config keys (flat 'key = value' file, '#' comments):\n{keys}",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("sweep-alpha", "phase-averaged Fisher information versus the depolarizing factor"),
        ("sweep-phase", "Fisher information, Q factor and P+ versus the phase"),
        ("estimate", "Monte-Carlo maximum-likelihood estimation"),
        ("oracle-check", "certify the closed forms against the dilation oracle"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="flat key = value config file")
        p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE", help="override a config key")
        p.add_argument("--out", help="CSV output path (default stdout)")
        p.add_argument("--seed", type=_u64, help="unsigned 64-bit seed")
        p.add_argument("--grid-step", type=float, help="grid step for sweeps")
        p.add_argument("--panels", type=int, help="Simpson panels for numeric averages")
        p.add_argument("--plot", help="write a gnuplot script for the CSV to this path")
        if name == "oracle-check":
            p.add_argument("--fault", type=float, help="perturb the analytic At matrix (negative control)")
    return parser


def _u64(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer, got {text}")
    return value


def _emit(table: CsvTable, out: str | None) -> None:
    if out is None:
        table.write(sys.stdout)
    else:
        with open(out, "w", newline="") as fh:
            table.write(fh)


def main(argv: Iterable[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(None if argv is None else list(argv))
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    ok = True
    try:
        cfg = Config.load(args.config, args.set)
        if args.panels is not None and (args.panels < 2 or args.panels % 2):
            raise ConfigError(f"--panels must be a positive even integer, got {args.panels}")
        if args.command == "sweep-alpha":
            table, xlabel = cmd_sweep_alpha(cfg, args), "alpha"
        elif args.command == "sweep-phase":
            table, xlabel = cmd_sweep_phase(cfg, args), "xi"
        elif args.command == "estimate":
            table, xlabel = cmd_estimate(cfg, args), "trial"
        else:
            (table, ok), xlabel = cmd_oracle_check(cfg, args), "config"
    except ConfigError as exc:
        print(f"qsuperpose: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NonIdentifiableError as exc:
        print(f"qsuperpose: not identifiable: {exc}", file=sys.stderr)
        return EXIT_CHECK

    _emit(table, args.out)
    plot = args.plot or cfg.values.get("output.plot")
    if plot:
        Path(plot).write_text(gnuplot_script(args.out or "data.csv", table.header, xlabel))
    if not ok:
        print("qsuperpose: oracle check failed; see first_failure in the summary", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
