"""Monte-Carlo measurement of the control qubit and maximum-likelihood estimation.

The control outcome ``+`` has probability ``P+ = 1/2 + sqrt((1-pc) pc) Q_xi`` with
``Q_xi = s0 + s . R(n, xi) r``. Estimators here only need ``(s0, s)`` and the
probe geometry, never the underlying Kraus set.

Randomness: numpy's PCG64 bit generator, one child ``SeedSequence`` per trial
spawned from the user seed, so reports are reproducible bit for bit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike
from scipy import optimize
from scipy.special import xlogy

from .fisher import EPS, fisher_binary
from .qubit import as_axis

__all__ = [
    "NonIdentifiableError",
    "ShotRecord",
    "Geometry",
    "PhaseModel",
    "EstimationReport",
    "JointEstimate",
    "Calibration",
    "RNG_NAME",
    "sample_control",
    "log_likelihood",
    "mle_phase",
    "mle_joint",
    "calibrate",
    "calibration_plan",
    "joint_plan",
    "crb_experiment",
]

RNG_NAME = "numpy.PCG64 (SeedSequence.spawn per trial)"
P_FLOOR = 1e-15


class NonIdentifiableError(ValueError):
    """The data cannot determine the requested parameters."""


@dataclass(frozen=True)
class ShotRecord:
    L: int
    L_plus: int
    config_id: str = ""

    def __post_init__(self):
        if self.L < 1:
            raise ValueError(f"shot count must be positive, got {self.L}")
        if not 0 <= self.L_plus <= self.L:
            raise ValueError(f"L_plus = {self.L_plus} outside [0, {self.L}]")

    @property
    def frequency(self) -> float:
        return self.L_plus / self.L


@dataclass(frozen=True, eq=False)
class Geometry:
    """Known rotation axis, probe Bloch vector and control weight of one configuration."""

    n: np.ndarray
    r: np.ndarray
    pc: float = 0.5

    def __post_init__(self):
        object.__setattr__(self, "n", as_axis(self.n))
        r = np.asarray(self.r, dtype=float)
        if r.shape != (3,) or np.linalg.norm(r) > 1.0 + 1e-9:
            raise ValueError(f"probe Bloch vector must be a 3-vector in the unit ball, got {r!r}")
        object.__setattr__(self, "r", r)
        if not 0.0 <= self.pc <= 1.0:
            raise ValueError(f"control weight pc must lie in [0, 1], got {self.pc}")

    @property
    def coherence(self) -> float:
        return math.sqrt((1.0 - self.pc) * self.pc)

    def rotated(self, xi: ArrayLike) -> np.ndarray:
        """R(n, xi) r for scalar or array ``xi``; shape (..., 3)."""
        xi = np.asarray(xi, dtype=float)
        n, r = self.n, self.r
        par = (n @ r) * n
        perp = r - par
        c, s = np.cos(xi)[..., None], np.sin(xi)[..., None]
        return par + c * perp + s * np.cross(n, r)


@dataclass(frozen=True, eq=False)
class PhaseModel:
    """Outcome model P+(xi) for known nuisance parameters (s0, s) and geometry."""

    s0: float
    s: np.ndarray
    geometry: Geometry

    def q(self, xi: ArrayLike) -> np.ndarray:
        return self.s0 + self.geometry.rotated(xi) @ np.asarray(self.s, dtype=float)

    def dq(self, xi: ArrayLike) -> np.ndarray:
        r1 = self.geometry.rotated(xi)
        return np.cross(self.geometry.n, r1) @ np.asarray(self.s, dtype=float)

    def p_plus(self, xi: ArrayLike) -> np.ndarray:
        return 0.5 + self.geometry.coherence * self.q(xi)

    def dp_plus(self, xi: ArrayLike) -> np.ndarray:
        return self.geometry.coherence * self.dq(xi)

    def fisher(self, xi: float) -> float:
        return fisher_binary(float(self.p_plus(xi)), float(self.dp_plus(xi)))


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def sample_control(p_plus: float, L: int, seed=None, config_id: str = "") -> ShotRecord:
    """Binomial(L, p_plus) count of ``+`` outcomes."""
    if not 0.0 <= p_plus <= 1.0:
        raise ValueError(f"probability must lie in [0, 1], got {p_plus}")
    if L < 1:
        raise ValueError(f"shot count must be positive, got {L}")
    return ShotRecord(L, int(_rng(seed).binomial(L, p_plus)), config_id)


def log_likelihood(record: ShotRecord, p_plus: ArrayLike) -> np.ndarray | float:
    """L+ log p + (L - L+) log(1 - p); -inf where p in {0, 1} contradicts the counts."""
    p = np.asarray(p_plus, dtype=float)
    with np.errstate(divide="ignore"):
        out = xlogy(record.L_plus, p) + xlogy(record.L - record.L_plus, 1.0 - p)
    return float(out) if out.ndim == 0 else out


def _nll_clipped(records: Sequence[ShotRecord], p: np.ndarray) -> float:
    p = np.clip(p, P_FLOOR, 1.0 - P_FLOOR)
    return -float(sum(log_likelihood(rec, pi) for rec, pi in zip(records, p)))


def mle_phase(
    record: ShotRecord,
    model: PhaseModel,
    interval: tuple[float, float] = (0.0, math.pi),
    step: float = 1e-3,
    tol: float = 1e-6,
) -> float:
    """Maximum-likelihood phase: grid scan over ``interval``, then bounded refinement.

    Ties on the grid go to the smaller phase. The default interval avoids the
    xi <-> 2 pi - xi ambiguity of a probe in the rotation plane.
    """
    lo, hi = interval
    grid = np.arange(lo, hi + step / 2, step)
    grid = grid[grid <= hi]
    p = model.p_plus(grid)
    if np.ptp(p) < 1e-12:
        raise NonIdentifiableError("P+ does not depend on the phase for this configuration")
    ll = log_likelihood(record, np.clip(p, 0.0, 1.0))
    i = int(np.argmax(ll))
    a, b = grid[max(i - 1, 0)], grid[min(i + 1, grid.size - 1)]

    def nll(x):
        return -log_likelihood(record, float(np.clip(model.p_plus(x), P_FLOOR, 1 - P_FLOOR)))

    res = optimize.minimize_scalar(nll, bounds=(a, b), method="bounded", options={"xatol": tol})
    if res.success and -res.fun >= ll[i]:
        return float(res.x)
    return float(grid[i])


@dataclass
class EstimationReport:
    xi_true: float
    L: int
    trials: int
    seed: int
    estimates: np.ndarray
    fisher: float
    rng: str = RNG_NAME

    @property
    def mse(self) -> float:
        return float(np.mean((self.estimates - self.xi_true) ** 2))

    @property
    def bias(self) -> float:
        return float(np.mean(self.estimates) - self.xi_true)

    @property
    def crb(self) -> float:
        """Cramér-Rao reference 1 / (L F); infinite when F vanishes (below 1e-12)."""
        if self.fisher <= EPS:
            return math.inf
        return 1.0 / (self.L * self.fisher)

    @property
    def unbounded(self) -> bool:
        return math.isinf(self.crb)

    @property
    def ratio(self) -> float:
        return self.mse / self.crb if not self.unbounded else 0.0


def crb_experiment(
    model: PhaseModel,
    xi: float,
    L: int,
    trials: int,
    seed: int = 0,
    interval: tuple[float, float] = (0.0, math.pi),
) -> EstimationReport:
    """Repeat sampling + :func:`mle_phase` and compare the MSE with 1 / (L F_c)."""
    grid = np.linspace(*interval, 257)
    if np.ptp(model.p_plus(grid)) < 1e-12:
        raise NonIdentifiableError("P+ does not depend on the phase for this configuration")
    p = float(model.p_plus(xi))
    children = np.random.SeedSequence(seed).spawn(trials)
    est = np.empty(trials)
    for k, child in enumerate(children):
        rec = sample_control(p, L, child, config_id=f"trial-{k}")
        est[k] = mle_phase(rec, model, interval=interval)
    return EstimationReport(xi_true=xi, L=L, trials=trials, seed=seed, estimates=est, fisher=model.fisher(xi))


@dataclass(frozen=True)
class JointEstimate:
    xi: float
    s0: float
    s: np.ndarray
    log_likelihood: float


def _profile_scan(grid: np.ndarray, records, geometries) -> tuple[np.ndarray, np.ndarray]:
    """Least-squares (s0, s) at every grid phase and the matching negative log-likelihood."""
    w = np.array([g.coherence for g in geometries])
    q_hat = np.array([(2 * rec.frequency - 1) / (2 * g.coherence) for rec, g in zip(records, geometries)])
    # rows[k, i] = [1, R(n_i, xi_k) r_i]
    rows = np.concatenate(
        [np.ones((grid.size, len(geometries), 1)), np.stack([g.rotated(grid) for g in geometries], axis=1)],
        axis=2,
    )
    sol = np.einsum("kji,i->kj", np.linalg.pinv(rows), q_hat)
    p = np.clip(0.5 + w * np.einsum("kij,kj->ki", rows, sol), P_FLOOR, 1.0 - P_FLOOR)
    lp = np.array([rec.L_plus for rec in records])
    lm = np.array([rec.L - rec.L_plus for rec in records])
    nll = -(lp * np.log(p) + lm * np.log1p(-p)).sum(axis=1)
    return sol, nll


def _joint_p(theta: np.ndarray, geometries) -> np.ndarray:
    xi, s0, s = theta[0], theta[1], theta[2:]
    return np.array([0.5 + g.coherence * (s0 + s @ g.rotated(xi)) for g in geometries])


def _joint_fim(theta: np.ndarray, records, geometries) -> np.ndarray:
    xi, s = theta[0], theta[2:]
    fim = np.zeros((5, 5))
    p = _joint_p(theta, geometries)
    for rec, g, pi in zip(records, geometries, p):
        r1 = g.rotated(xi)
        grad = g.coherence * np.array([s @ np.cross(g.n, r1), 1.0, *r1])
        pi = min(max(pi, 1e-9), 1 - 1e-9)
        fim += rec.L * np.outer(grad, grad) / (pi * (1 - pi))
    return fim


def mle_joint(
    records: Sequence[ShotRecord],
    geometries: Sequence[Geometry],
    interval: tuple[float, float] = (0.0, 2 * math.pi),
    xi_step: float = 0.01,
    max_cond: float = 1e8,
) -> JointEstimate:
    """Joint maximum likelihood for (xi, s0, s) from several known geometries.

    Start: for each phase on a grid the model is linear in (s0, s), so a
    least-squares fit of the empirical Q values gives a profile; the best grid
    point seeds a Nelder-Mead search over all five parameters.
    """
    if len(records) != len(geometries):
        raise ValueError("one geometry is needed per record")
    if len(records) < 5:
        raise ValueError(f"at least 5 configurations are needed for 5 unknowns, got {len(records)}")
    grid = np.arange(interval[0], interval[1], xi_step)
    sol, nll = _profile_scan(grid, records, geometries)
    k = int(np.argmin(nll))
    best_theta = np.concatenate([[grid[k]], sol[k]])
    best = _nll_clipped(records, _joint_p(best_theta, geometries))
    fim = _joint_fim(best_theta, records, geometries)
    if np.linalg.cond(fim) > max_cond:
        raise NonIdentifiableError(
            f"Fisher information matrix is ill-conditioned (cond = {np.linalg.cond(fim):.3g})"
        )
    res = optimize.minimize(
        lambda th: _nll_clipped(records, _joint_p(th, geometries)),
        best_theta,
        method="Nelder-Mead",
        options={"xatol": 1e-9, "fatol": 1e-10, "maxiter": 20000, "maxfev": 40000},
    )
    theta = res.x if res.fun <= best else best_theta
    return JointEstimate(float(theta[0]), float(theta[1]), theta[2:].copy(), -float(min(res.fun, best)))


@dataclass(frozen=True)
class Calibration:
    s0: float
    s: np.ndarray
    residual: float
    q_hat: np.ndarray = field(repr=False)


def calibrate(
    known_phases: Sequence[float],
    observations: Sequence[ShotRecord | float],
    geometries: Geometry | Sequence[Geometry],
) -> Calibration:
    """Least-squares fit of Q = s0 + s . R(n, xi) r from known phases.

    ``observations`` are shot records or exact probabilities P+. A single fixed
    geometry only probes the span of {1, cos xi, sin xi}, so at least two
    distinct geometries are generally required for a full-rank design.
    """
    if isinstance(geometries, Geometry):
        geometries = [geometries] * len(known_phases)
    if not len(known_phases) == len(observations) == len(geometries):
        raise ValueError("phases, observations and geometries must have equal length")
    if len(known_phases) < 4:
        raise ValueError(f"at least 4 known phases are required, got {len(known_phases)}")
    q_hat = []
    for obs, g in zip(observations, geometries):
        p = obs.frequency if isinstance(obs, ShotRecord) else float(obs)
        if g.coherence == 0.0:
            raise NonIdentifiableError("control weight pc in {0, 1} carries no information on Q")
        q_hat.append((2.0 * p - 1.0) / (2.0 * g.coherence))
    q_hat = np.array(q_hat)
    rows = np.array([[1.0, *g.rotated(xi)] for xi, g in zip(known_phases, geometries)])
    if np.linalg.matrix_rank(rows, tol=1e-10) < 4:
        raise NonIdentifiableError("calibration design is singular; vary phases and probe geometries")
    sol, *_ = np.linalg.lstsq(rows, q_hat, rcond=None)
    residual = float(np.linalg.norm(rows @ sol - q_hat))
    return Calibration(float(sol[0]), sol[1:].copy(), residual, q_hat)


def calibration_plan(count: int = 6, pc: float = 0.5) -> tuple[np.ndarray, list[Geometry]]:
    """Equispaced phases cycling through the x, y, z axes with a probe orthogonal to each axis."""
    phases = 2 * math.pi * np.arange(count) / count
    e = np.eye(3)
    geoms = [Geometry(e[k % 3], e[(k + 1) % 3], pc) for k in range(count)]
    return phases, geoms


def joint_plan(count: int = 6, pc: float = 0.5) -> list[Geometry]:
    """Geometries for joint estimation: coordinate axes cycled against tetrahedral probes.

    Axis-aligned probes orthogonal to their axes let a phase shift be absorbed
    into s; probes with components along the axis avoid that degeneracy.
    """
    if count < 5:
        raise ValueError(f"joint estimation needs at least 5 configurations, got {count}")
    e = np.eye(3)
    tet = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]]) / math.sqrt(3.0)
    return [Geometry(e[k % 3], tet[k % 4], pc) for k in range(count)]
