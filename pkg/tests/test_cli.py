from __future__ import annotations

import math
import subprocess
import sys

import numpy as np
import pytest

from qsuperpose.cli import Config, ConfigError, fmt, main, parse_config_text, read_csv


def run(tmp_path, *argv, config=None):
    out = tmp_path / "out.csv"
    args = list(argv) + ["--out", str(out)]
    if config is not None:
        cfg = tmp_path / "run.cfg"
        cfg.write_text(config)
        args += ["--config", str(cfg)]
    code = main(args)
    return code, (out.read_text() if out.exists() else "")


def test_config_parsing():
    vals = parse_config_text("# comment\nnoise.alpha = 0.3  # trailing\n\ncontrol.pc=0.4\n")
    assert vals == {"noise.alpha": "0.3", "control.pc": "0.4"}
    with pytest.raises(ConfigError):
        parse_config_text("bogus.key = 1")
    with pytest.raises(ConfigError):
        parse_config_text("noise.alpha 0.3")
    cfg = Config({"phase.xi": "pi/3", "geometry.n": "0, 0, 1", "phase.average": "yes"})
    assert cfg.float("phase.xi", 0) == pytest.approx(math.pi / 3)
    assert np.allclose(cfg.reals("geometry.n", 3), [0, 0, 1])
    assert cfg.bool("phase.average")
    assert Config({"phase.max": "2*pi"}).float("phase.max", 0) == pytest.approx(2 * math.pi)


def test_fmt():
    assert fmt(math.inf) == "inf"
    assert fmt(3) == "3"
    assert fmt(0.1 + 0.2) == "0.3"
    assert fmt(1 / 3) == "0.333333333333"


def test_sweep_alpha_endpoints(tmp_path):
    code, text = run(tmp_path, "sweep-alpha", "--set", "alpha.max = 0")
    assert code == 0
    header, data, _ = read_csv(text)
    assert header == ["alpha", "fbar_superposed", "fbar_standard", "fbar_switched"]
    assert data[0, 1] == pytest.approx(0.0267, abs=1e-4)
    assert data[0, 2] == 0 and data[0, 3] == pytest.approx(0, abs=1e-12)
    code, text = run(tmp_path, "sweep-alpha", "--set", "alpha.min = 1")
    _, data, _ = read_csv(text)
    assert np.allclose(data[0], [1, 0, 1, 0], atol=1e-12)


def test_sweep_alpha_summary_and_numeric(tmp_path):
    code, text = run(tmp_path, "sweep-alpha", "--panels", "512", config="sweep.numeric = true\n")
    assert code == 0
    header, data, summary = read_csv(text)
    assert data.shape == (101, 5)
    assert np.max(np.abs(data[:, 1] - data[:, 4])) < 1e-9
    assert float(summary["argmax_superposed"]) == pytest.approx(0.34, abs=0.02)
    assert float(summary["crossing_superposed_standard"]) == pytest.approx(0.26, abs=0.02)


def test_sweep_alpha_strategies_subset(tmp_path):
    code, text = run(tmp_path, "sweep-alpha", "--set", "sweep.strategies = standard")
    header, data, summary = read_csv(text)
    assert header == ["alpha", "fbar_standard"] and not summary
    assert run(tmp_path, "sweep-alpha", "--set", "sweep.strategies = nope")[0] == 2
    assert run(tmp_path, "sweep-alpha", "--set", "noise.family = identity")[0] == 2


def test_sweep_phase_depolarizing(tmp_path):
    code, text = run(tmp_path, "sweep-phase", "--grid-step", str(math.pi / 4), config="noise.alpha = 0\n")
    assert code == 0
    header, data, _ = read_csv(text)
    assert header == ["xi", "fc_control", "fq_control", "fc_standard", "fq_standard", "q_factor", "p_plus"]
    assert data[0, 1] == 0.0
    assert data[2, 1] == pytest.approx(0.05, abs=1e-12)
    assert np.all(data[:, 1] <= data[:, 2] + 1e-12)


def test_sweep_phase_noiseless(tmp_path):
    code, text = run(tmp_path, "sweep-phase", config="noise.family = identity\n")
    _, data, _ = read_csv(text)
    assert np.all(data[:, 1] == 0)


def test_sweep_phase_explicit_geometry_and_average(tmp_path):
    cfg = (
        "noise.family = pauli\nnoise.p = 0.5, 0.2, 0.2, 0.1\n"
        "env.overlaps = 0.5, 0.5j, 0.5, -0.5\ngeometry.mode = explicit\n"
        "geometry.n = 0, 1, 0\ngeometry.r = 0.6, 0, 0.3\ncontrol.pc = 0.3\nphase.average = true\n"
    )
    code, text = run(tmp_path, "sweep-phase", config=cfg)
    assert code == 0
    _, data, summary = read_csv(text)
    assert np.all(data[:, 1] <= data[:, 2] + 1e-12)
    assert float(summary["average_fc_control"]) >= 0
    assert float(summary["pc"]) == 0.3


def test_sweep_phase_pure_output_stays_finite(tmp_path):
    # Q = 1 at pc = 1/2 makes the control outcome certain, but dQ vanishes there too
    cfg = "noise.family = identity\nenv.overlaps = 1, 0, 0, 0\ngeometry.mode = explicit\ngeometry.n = 0,0,1\ngeometry.r = 1,0,0\n"
    code, text = run(tmp_path, "sweep-phase", config=cfg)
    assert code == 0
    _, data, _ = read_csv(text)
    assert np.all(np.isfinite(data[:, 1]))


def test_csv_serializes_divergence():
    import io

    from qsuperpose.cli import CsvTable

    buf = io.StringIO()
    CsvTable(["xi", "fc"], [[0.5, math.inf]], [("note", "x")]).write(buf)
    assert buf.getvalue() == "xi,fc\n0.5,inf\n# note = x\n"
    _, data, _ = read_csv(buf.getvalue())
    assert math.isinf(data[0, 1])


@pytest.mark.parametrize(
    "cfg",
    [
        "noise.alpha = 2\n",
        "control.pc = 1.5\n",
        "geometry.mode = explicit\n",
        "env.overlaps = 1, 0\n",
        "noise.family = pauli\n",
        "geometry.mode = sideways\n",
        "estimate.L = many\n",
    ],
)
def test_config_errors_exit_2(tmp_path, cfg, capsys):
    code, _ = run(tmp_path, "estimate", config=cfg)
    assert code == 2
    assert "config error" in capsys.readouterr().err


def test_missing_config_file(tmp_path):
    assert main(["sweep-alpha", "--config", str(tmp_path / "absent.cfg")]) == 2


def test_estimate_phase_ratio_and_determinism(tmp_path):
    code, first = run(tmp_path, "estimate", "--seed", "17")
    assert code == 0
    _, data, summary = read_csv(first)
    assert data.shape == (500, 2)
    assert 0.85 <= float(summary["ratio"]) <= 1.15
    _, second = run(tmp_path, "estimate", "--seed", "17")
    assert first == second


def test_estimate_non_identifiable_exit_code(tmp_path, capsys):
    code, _ = run(tmp_path, "estimate", config="noise.family = identity\n")
    assert code == 1
    assert "not identifiable" in capsys.readouterr().err


def test_estimate_unbounded_crb(tmp_path):
    code, text = run(tmp_path, "estimate", config="phase.xi = 0\nestimate.trials = 5\n")
    _, _, summary = read_csv(text)
    assert summary["crb"] == "inf" and summary["ratio"] == "unbounded"


def test_estimate_calibrate(tmp_path):
    cfg = "noise.alpha = 0\nestimate.mode = calibrate\nestimate.L = 100000\nestimate.trials = 10\n"
    code, text = run(tmp_path, "estimate", config=cfg)
    assert code == 0
    header, data, summary = read_csv(text)
    assert header[:5] == ["trial", "s0_hat", "sx_hat", "sy_hat", "sz_hat"]
    assert np.allclose(data[:, 1].mean(), 0.25, atol=3e-3)
    assert np.allclose(data[:, 2:5].mean(axis=0), 0.125, atol=3e-3)


def test_estimate_joint(tmp_path):
    cfg = "estimate.mode = joint\nestimate.L = 100000\nestimate.trials = 3\n"
    code, text = run(tmp_path, "estimate", config=cfg)
    assert code == 0
    _, data, _ = read_csv(text)
    assert np.allclose(data[:, 1], math.pi / 3, atol=0.1)


def test_oracle_check(tmp_path):
    code, text = run(tmp_path, "oracle-check", "--set", "oracle.configs = 10")
    assert code == 0
    _, data, summary = read_csv(text)
    assert data.shape == (10, 5) and summary["status"] == "pass"
    code, text = run(tmp_path, "oracle-check", "--set", "oracle.configs = 3", "--fault", "1e-3")
    assert code == 1
    _, _, summary = read_csv(text)
    assert summary["status"] == "FAIL" and "first_failure.g" in summary


def test_csv_round_trip(tmp_path):
    from qsuperpose.fisher import superposed_avg

    _, text = run(tmp_path, "sweep-alpha", "--grid-step", "0.05")
    _, data, _ = read_csv(text)
    for a, value in data[:, :2]:
        assert float(fmt(superposed_avg(a))) == value
        assert value == pytest.approx(superposed_avg(a), rel=1e-11, abs=1e-15)


def test_plot_script(tmp_path):
    plot = tmp_path / "fig.gp"
    code, _ = run(tmp_path, "sweep-alpha", "--grid-step", "0.1", "--plot", str(plot))
    assert code == 0
    script = plot.read_text()
    assert "set datafile separator ','" in script and "using 1:2" in script


def test_bad_arguments_exit_2(tmp_path):
    assert main(["nonsense"]) == 2
    assert main(["sweep-alpha", "--seed", "-1"]) == 2
    assert main(["sweep-alpha", "--panels", "7"]) == 2


def test_module_entry_point(tmp_path):
    out = tmp_path / "o.csv"
    res = subprocess.run(
        [sys.executable, "-m", "qsuperpose", "sweep-alpha", "--grid-step", "0.5", "--out", str(out)],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0
    assert out.read_text().startswith("alpha,")
