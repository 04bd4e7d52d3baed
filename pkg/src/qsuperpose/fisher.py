"""Fisher information for phase estimation with the superposed channel and its references.

Divergent values (a vanishing denominator with a nonzero numerator) are returned
as ``math.inf`` so sweeps can continue. Removable 0/0 points, where a pure
outcome probability touches 0 or 1 with zero slope, are resolved with the
second-derivative limit of the binary Fisher information.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Literal

import numpy as np
from numpy.typing import ArrayLike
from scipy import optimize

from .noise import depolarizing, pauli_channel
from .qubit import rotation_derivative, rotation_matrix, unitary_qubit
from .superposed import TransformData

__all__ = [
    "FisherPoint",
    "FisherCurve",
    "EPS",
    "fisher_binary",
    "qfi_qubit",
    "control_fisher",
    "control_fisher_geometric",
    "control_fisher_optimal",
    "pauli_unbiased_fisher",
    "beta_factor",
    "phase_avg_closed",
    "phase_avg_numeric",
    "superposed_avg",
    "standard_probe_fisher",
    "standard_avg",
    "switched_avg",
    "noncommutativity_index",
    "noncommutativity_sum",
    "noncommutativity_matrix_index",
    "noncommutativity_avg",
    "arbitrary_env_svector",
    "curve_argmax",
    "curve_crossing",
]

EPS = 1e-12
Kind = Literal["classical", "quantum"]


@dataclass(frozen=True)
class FisherPoint:
    xi: float
    value: float
    kind: Kind = "classical"

    @property
    def divergent(self) -> bool:
        return math.isinf(self.value)


@dataclass
class FisherCurve:
    """Fisher values per strategy label on a shared, strictly increasing grid."""

    grid: np.ndarray
    values: dict[str, np.ndarray] = field(default_factory=dict)
    parameter: str = "alpha"

    def __post_init__(self):
        self.grid = np.asarray(self.grid, dtype=float)
        if self.grid.size > 1 and np.any(np.diff(self.grid) <= 0):
            raise ValueError("grid must be strictly increasing")


def _ratio(num: float, den: float) -> float:
    if den <= EPS:
        return 0.0 if abs(num) <= EPS else math.inf
    return num / den


def fisher_binary(p_plus: float, dp_plus: float) -> float:
    """(dP)^2 / (P (1 - P)) for a two-outcome measurement."""
    if not EPS < p_plus < 1.0 - EPS:
        return math.inf
    return dp_plus**2 / ((1.0 - p_plus) * p_plus)


def _binary_bloch(w: float, dw: float, d2w: float) -> float:
    """Fisher information of outcome probabilities (1 +- w)/2 as a function of xi.

    At |w| -> 1 with dw -> 0 the value tends to |d2w| (second-order expansion).
    """
    den = 1.0 - w * w
    if den <= EPS:
        if abs(dw) <= 1e-7:
            return abs(d2w)
        return math.inf
    return dw * dw / den


def qfi_qubit(r_xi: ArrayLike, dr_xi: ArrayLike) -> float:
    """(r.dr)^2 / (1 - r^2) + dr^2, reducing to dr^2 for pure states."""
    r = np.asarray(r_xi, dtype=float)
    dr = np.asarray(dr_xi, dtype=float)
    norm = float(np.linalg.norm(r))
    if norm > 1.0 + 1e-9:
        raise ValueError(f"unphysical Bloch vector, |r| = {norm}")
    if norm >= 1.0 - 1e-9:
        if abs(r @ dr) > 1e-9:
            raise ValueError("pure state with a derivative leaving the sphere (r . dr != 0)")
        return float(dr @ dr)
    return float((r @ dr) ** 2 / (1.0 - r @ r) + dr @ dr)


def control_fisher(pc: float, q: float, dq: float, kind: Kind = "classical") -> float:
    """Control-qubit Fisher information for a given coupling factor Q and its slope.

    classical: 4(1-pc)pc dQ^2 / (1 - 4(1-pc)pc Q^2)
    quantum:   4(1-pc)pc dQ^2 / (1 - Q^2)
    """
    x = 4.0 * (1.0 - pc) * pc
    num = x * dq * dq
    if kind == "classical":
        return _ratio(num, 1.0 - x * q * q)
    if kind == "quantum":
        return _ratio(num, 1.0 - q * q)
    raise ValueError(f"unknown Fisher kind {kind!r}")


def control_fisher_geometric(td: TransformData, n: ArrayLike, r: ArrayLike, xi: float) -> float:
    """((s x n).r1)^2 / (1 - (s0 + s.r1)^2) with r1 = R(n, xi) r, at pc = 1/2."""
    R = rotation_matrix(n, xi)
    r1 = R @ np.asarray(r, dtype=float)
    q = td.s0 + td.s @ r1
    dq = float(np.cross(td.s, n) @ r1)
    d2q = float(td.s @ rotation_derivative(n, rotation_derivative(n, r1)))
    return _binary_bloch(q, dq, d2q)


def control_fisher_optimal(s0: float, s_norm: float, xi: float) -> float:
    """||s||^2 sin^2 xi / (1 - (s0 + ||s|| |cos xi|)^2).

    This is the per-phase maximum over the two aligned probes r = +-s/||s||
    with the axis orthogonal to s.
    """
    den = 1.0 - (s0 + s_norm * abs(math.cos(xi))) ** 2
    return _ratio(s_norm**2 * math.sin(xi) ** 2, den)


def pauli_unbiased_fisher(p0: float, xi: float) -> float:
    """Control Fisher information for Pauli noise with <g|e_j> = 1/2, optimal geometry."""
    if not 0.0 <= p0 <= 1.0:
        raise ValueError(f"p0 must lie in [0, 1], got {p0}")
    a = (1.0 - p0) * p0
    return a * math.sin(xi) ** 2 / (4.0 - (0.5 + math.sqrt(a) * abs(math.cos(xi))) ** 2)


def beta_factor(*, p0: float | None = None, alpha: float | None = None) -> float:
    """Noise factor 2 sqrt((1-p0) p0), or (sqrt 3 / 2) sqrt((1-alpha)(1+3 alpha)) for depolarizing."""
    if (p0 is None) == (alpha is None):
        raise TypeError("give exactly one of p0 or alpha")
    if p0 is not None:
        if not 0.0 <= p0 <= 1.0:
            raise ValueError(f"p0 must lie in [0, 1], got {p0}")
        return 2.0 * math.sqrt((1.0 - p0) * p0)
    if not -1.0 / 3.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [-1/3, 1], got {alpha}")
    return math.sqrt(3.0) / 2.0 * math.sqrt(max((1.0 - alpha) * (1.0 + 3.0 * alpha), 0.0))


def phase_avg_closed(beta: float) -> float:
    """Phase average of beta^2 sin^2 xi / (16 - (1 + beta |cos xi|)^2) in closed form."""
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta must lie in [0, 1], got {beta}")
    b2 = beta * beta
    bracket = math.sqrt(9.0 - b2) * math.atan(math.sqrt((3.0 + beta) / (3.0 - beta))) + math.sqrt(
        25.0 - b2
    ) * math.atan(math.sqrt((5.0 - beta) / (5.0 + beta)))
    return 1.0 - bracket / (2.0 * math.pi)


def phase_avg_numeric(f: Callable[[float], float], panels: int = 4096) -> float:
    """Average of f over [0, 2 pi) by composite Simpson's rule (error O(h^4) for smooth f).

    ``panels`` must be even; a multiple of 8 places pi/2 and 3 pi/2 on Simpson
    pair boundaries so |cos|-type kinks do not degrade the order.
    """
    if panels < 2 or panels % 2:
        raise ValueError(f"panel count must be a positive even integer, got {panels}")
    xs = np.linspace(0.0, 2.0 * math.pi, panels + 1)
    ys = np.array([f(float(x)) for x in xs])
    if not np.all(np.isfinite(ys)):
        return math.inf
    h = 2.0 * math.pi / panels
    total = ys[0] + ys[-1] + 4.0 * ys[1:-1:2].sum() + 2.0 * ys[2:-1:2].sum()
    return float(total * h / 3.0 / (2.0 * math.pi))


def superposed_avg(alpha: float) -> float:
    """Phase-averaged control Fisher information for depolarizing noise, unbiased environment."""
    return phase_avg_closed(beta_factor(alpha=alpha))


def standard_probe_fisher(
    A: ArrayLike,
    c: ArrayLike,
    n: ArrayLike,
    r: ArrayLike,
    xi: float,
    omega: ArrayLike | None = None,
) -> tuple[float | None, float]:
    """(classical, quantum) Fisher information of a probe sent once through the noisy unitary.

    The classical value uses a spin measurement along ``omega`` and is ``None``
    when no measurement direction is given.
    """
    A = np.asarray(A, dtype=float)
    c = np.asarray(c, dtype=float)
    r1 = rotation_matrix(n, xi) @ np.asarray(r, dtype=float)
    out = A @ r1 + c
    d_out = A @ rotation_derivative(n, r1)
    fq = qfi_qubit(out, d_out)
    if omega is None:
        return None, fq
    omega = np.asarray(omega, dtype=float)
    d2_out = A @ rotation_derivative(n, rotation_derivative(n, r1))
    fc = _binary_bloch(float(omega @ out), float(omega @ d_out), float(omega @ d2_out))
    return fc, fq


def standard_avg(alpha: float) -> float:
    """1 - sqrt(1 - alpha^2): phase average of alpha^2 sin^2 / (1 - alpha^2 cos^2)."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    return 1.0 - math.sqrt(1.0 - alpha * alpha)


def switched_avg(alpha: float) -> float:
    """Reference curve for the switched channel with indefinite causal order (published closed form)."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    a = alpha
    return (
        1.0
        - math.sqrt(3.0) / 8.0 * (1.0 - a) * math.sqrt((1.0 - a) * (3.0 + 5.0 * a))
        - math.sqrt((5.0 + 6.0 * a - 3.0 * a * a) * (5.0 - 2.0 * a + 5.0 * a * a)) / 8.0
    )


def noncommutativity_index(alpha: float, xi: float) -> float:
    """8 (1-alpha) alpha sin^2(xi/2) + 3 (1-alpha)^2 for the depolarized unitary."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    return 8.0 * (1.0 - alpha) * alpha * math.sin(xi / 2.0) ** 2 + 3.0 * (1.0 - alpha) ** 2


def noncommutativity_sum(kraus: ArrayLike) -> float:
    """sum_{j,k} tr([K_j, K_k]^dagger [K_j, K_k])."""
    k = np.asarray(kraus, dtype=complex)
    comm = np.einsum("jab,kbc->jkac", k, k) - np.einsum("kab,jbc->jkac", k, k)
    return float(np.einsum("jkab,jkab->", comm.conj(), comm).real)


def noncommutativity_matrix_index(alpha: float, n: ArrayLike, xi: float) -> float:
    """Commutator-sum index of the Kraus set Lambda_j U_xi for depolarizing noise."""
    lam = pauli_channel(depolarizing(alpha)).kraus
    return noncommutativity_sum(lam @ unitary_qubit(n, xi))


def noncommutativity_avg(alpha: float) -> float:
    """Phase average (1 - alpha)(3 + alpha)."""
    return (1.0 - alpha) * (3.0 + alpha)


def arbitrary_env_svector(alpha: float, g1: complex, e: ArrayLike) -> np.ndarray:
    """Interference vector s for depolarizing noise with arbitrary overlaps (g1, e)."""
    e = np.asarray(e, dtype=complex)
    norm2 = abs(g1) ** 2 + float(np.sum(np.abs(e) ** 2))
    if abs(norm2 - 1.0) > 1e-10:
        raise ValueError(f"overlaps must be normalized, got |g1|^2 + |e|^2 = {norm2}")
    if not -1.0 / 3.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [-1/3, 1], got {alpha}")
    t0 = complex(g1) * math.sqrt(1.0 + 3.0 * alpha) / 2.0
    t = e * math.sqrt(1.0 - alpha) / 2.0
    s = 2.0 * (t0.conjugate() * t).real + 1j * np.cross(t.conj(), t)
    if np.max(np.abs(s.imag)) > 1e-12:
        raise ArithmeticError("s vector has a nonzero imaginary part")
    return s.real


def curve_argmax(f: Callable[[float], float], lo: float = 0.0, hi: float = 1.0, step: float = 0.01) -> float:
    """Location of the maximum: grid scan, then bounded refinement around the best node."""
    grid = np.arange(lo, hi + step / 2, step)
    vals = np.array([f(float(x)) for x in grid])
    i = int(np.argmax(vals))
    a, b = grid[max(i - 1, 0)], grid[min(i + 1, grid.size - 1)]
    res = optimize.minimize_scalar(lambda x: -f(x), bounds=(a, b), method="bounded", options={"xatol": 1e-10})
    return float(res.x) if -res.fun >= vals[i] else float(grid[i])


def curve_crossing(
    f: Callable[[float], float], g: Callable[[float], float], lo: float = 0.0, hi: float = 1.0, step: float = 0.01
) -> list[float]:
    """All sign changes of f - g found on the grid, refined by Brent's method.

    Grid nodes where f - g vanishes exactly (shared endpoints) are skipped.
    """
    grid = np.arange(lo, hi + step / 2, step)
    d = np.array([f(float(x)) - g(float(x)) for x in grid])
    roots = []
    for i in range(grid.size - 1):
        if d[i] * d[i + 1] < 0:
            roots.append(float(optimize.brentq(lambda x: f(x) - g(x), grid[i], grid[i + 1], xtol=1e-12)))
    return roots
