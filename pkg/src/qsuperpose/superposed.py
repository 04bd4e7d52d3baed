"""Coherent superposition of two identical noisy unitaries driven by a control qubit.

The interference between the two paths is carried by the transformation operator
``T = sum_j <g|e_j> Lambda_j``. Everything about the probe/control joint output
follows from T's Pauli coordinates ``(t0, t)`` through the derived quantities

* ``s0 = |t0|^2 + t.t*``
* ``s  = 2 Re(t0* t) + i t* x t``   (real)
* ``At`` with ``T (r.sigma) T^dagger = (s.r) I + (At r).sigma``

Joint states are 4x4 matrices ordered probe (x) control, control basis (|0_c>, |1_c>).
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from .noise import (
    EnvironmentModel,
    KrausChannel,
    NoisyUnitaryChannel,
    affine_of_channel,
    apply_kraus,
)
from .qubit import (
    I2,
    as_axis,
    bloch_to_density,
    pauli_coords,
    rotation_derivative,
    rotation_matrix,
    sigma_dot,
)

__all__ = [
    "TransformData",
    "SuperposedChannel",
    "ControlReadout",
    "DegenerateBranchWarning",
    "transform_data",
    "interference_vector",
    "q_factor",
    "dq_factor",
    "s01_operator",
    "s00_operator",
    "joint_output",
    "joint_output_general",
    "control_readout",
    "control_reduced_state",
    "optimal_geometry",
]

REAL_TOL = 1e-12
DEGENERATE_P = 1e-12


class DegenerateBranchWarning(RuntimeWarning):
    """A control outcome has (numerically) zero probability."""


@dataclass(frozen=True, eq=False)
class TransformData:
    T: np.ndarray
    t0: complex
    t: np.ndarray
    s0: float
    s: np.ndarray
    At: np.ndarray


def _at_matrix(t0: complex, t: np.ndarray) -> np.ndarray:
    # column l is the sigma-part of T sigma_l T^dagger, from the expanded Pauli products
    cols = []
    for r in np.eye(3):
        v = (
            (t @ r) * t.conj()
            + (t.conj() @ r) * t
            + (abs(t0) ** 2 - t @ t.conj()) * r
            + 1j * np.cross(t0.conjugate() * t - t0 * t.conj(), r)
        )
        cols.append(v)
    return np.stack(cols, axis=1)


def _real_or_raise(x, what: str):
    x = np.asarray(x)
    if np.max(np.abs(x.imag), initial=0.0) > REAL_TOL:
        raise ArithmeticError(f"{what} has an imaginary part {np.max(np.abs(x.imag)):.3g}")
    return x.real


def transform_data(noise: KrausChannel, env: EnvironmentModel) -> TransformData:
    """Pauli data of ``T = sum_j g_j Lambda_j`` for a noise channel and its environment."""
    if len(noise) != len(env):
        raise ValueError(f"{len(noise)} Kraus operators but {len(env)} environment overlaps")
    T = np.einsum("j,jab->ab", env.overlaps, noise.kraus)
    t0, t = pauli_coords(T)
    s0 = float(_real_or_raise(abs(t0) ** 2 + t @ t.conj(), "s0"))
    s = _real_or_raise(2 * (t0.conjugate() * t).real + 1j * np.cross(t.conj(), t), "s")
    At = _real_or_raise(_at_matrix(t0, t), "At")
    return TransformData(T=T, t0=t0, t=t, s0=s0, s=s, At=At)


def interference_vector(td: TransformData) -> np.ndarray:
    """Bloch part of T T^dagger: t0* t + t0 t* + i t x t*."""
    t0, t = td.t0, td.t
    v = t0.conjugate() * t + t0 * t.conj() + 1j * np.cross(t, t.conj())
    return _real_or_raise(v, "interference vector")


def q_factor(td: TransformData, n: ArrayLike, xi: float, r: ArrayLike) -> float:
    """Q_xi = s0 + s . (R(n, xi) r), the trace of the interference block."""
    return float(td.s0 + td.s @ (rotation_matrix(n, xi) @ np.asarray(r, dtype=float)))


def dq_factor(td: TransformData, n: ArrayLike, xi: float, r: ArrayLike) -> float:
    """d Q_xi / d xi = s . (n x r1)."""
    r1 = rotation_matrix(n, xi) @ np.asarray(r, dtype=float)
    return float(td.s @ rotation_derivative(n, r1))


def s01_operator(td: TransformData, n: ArrayLike, xi: float, r: ArrayLike) -> np.ndarray:
    """Interference block T U rho U^dagger T^dagger, assembled from its Bloch form."""
    r1 = rotation_matrix(n, xi) @ np.asarray(r, dtype=float)
    q = td.s0 + td.s @ r1
    v = interference_vector(td) + td.At @ r1
    return 0.5 * (q * I2 + sigma_dot(v))


def s00_operator(branch: NoisyUnitaryChannel, r: ArrayLike) -> np.ndarray:
    """Single-path output N(U rho U^dagger), from the affine Bloch action."""
    aff = affine_of_channel(branch.noise)
    return bloch_to_density(aff(rotation_matrix(branch.axis, branch.xi) @ np.asarray(r, dtype=float)))


@dataclass(frozen=True, eq=False)
class SuperposedChannel:
    """Two copies of ``branch`` with independent environments; control sqrt(pc)|0> + sqrt(1-pc)|1>."""

    branch: NoisyUnitaryChannel
    pc: float = 0.5

    def __post_init__(self):
        if not 0.0 <= self.pc <= 1.0:
            raise ValueError(f"control weight pc must lie in [0, 1], got {self.pc}")

    @property
    def coherence(self) -> float:
        """sqrt((1 - pc) pc)."""
        return float(np.sqrt((1.0 - self.pc) * self.pc))

    def transform(self) -> TransformData:
        return transform_data(self.branch.noise, self.branch.env)

    def with_phase(self, xi: float) -> "SuperposedChannel":
        return SuperposedChannel(self.branch.with_phase(xi), self.pc)


def joint_output(sc: SuperposedChannel, r: ArrayLike, td: TransformData | None = None) -> np.ndarray:
    """4x4 probe (x) control state produced from probe Bloch vector ``r``.

    ``td`` may be supplied to reuse (or deliberately perturb) the transform data.
    """
    td = sc.transform() if td is None else td
    b = sc.branch
    s00 = s00_operator(b, r)
    s01 = s01_operator(td, b.axis, b.xi, r)
    diag = np.diag([sc.pc, 1.0 - sc.pc]).astype(complex)
    off = sc.coherence * np.array([[0, 1], [1, 0]], dtype=complex)
    return np.kron(s00, diag) + np.kron(s01, off)


def joint_output_general(
    kraus1: ArrayLike,
    env1: EnvironmentModel,
    kraus2: ArrayLike,
    env2: EnvironmentModel,
    rho: ArrayLike,
    rho_c: ArrayLike,
) -> np.ndarray:
    """Four-block output for two arbitrary channels and an arbitrary control state."""
    k1 = np.asarray(kraus1, dtype=complex)
    k2 = np.asarray(kraus2, dtype=complex)
    rho = np.asarray(rho, dtype=complex)
    rho_c = np.asarray(rho_c, dtype=complex)
    T1 = np.einsum("j,jab->ab", env1.overlaps, k1)
    T2 = np.einsum("j,jab->ab", env2.overlaps, k2)
    s00 = apply_kraus(k1, rho)
    s11 = apply_kraus(k2, rho)
    s01 = T1 @ rho @ T2.conj().T
    e = np.eye(2)
    out = np.zeros((4, 4), dtype=complex)
    for a, b, block in ((0, 0, s00), (0, 1, s01), (1, 0, s01.conj().T), (1, 1, s11)):
        out += rho_c[a, b] * np.kron(block, np.outer(e[a], e[b]))
    return out


@dataclass(frozen=True, eq=False)
class ControlReadout:
    """Fourier-basis measurement of the control qubit.

    ``r_plus``/``r_minus`` are the unnormalized conditional probe Bloch vectors;
    the ``post`` vectors are ``None`` when the outcome is degenerate.
    """

    p_plus: float
    p_minus: float
    q: float
    r_plus: np.ndarray
    r_minus: np.ndarray
    r_post_plus: np.ndarray | None
    r_post_minus: np.ndarray | None

    @property
    def degenerate(self) -> bool:
        return self.r_post_plus is None or self.r_post_minus is None


def control_readout(sc: SuperposedChannel, r: ArrayLike, td: TransformData | None = None) -> ControlReadout:
    td = sc.transform() if td is None else td
    b = sc.branch
    r = np.asarray(r, dtype=float)
    r1 = rotation_matrix(b.axis, b.xi) @ r
    w = sc.coherence
    q = float(td.s0 + td.s @ r1)
    p_plus = 0.5 + w * q
    p_minus = 1.0 - p_plus
    # the noise term enters as (A U r + c)/2, i.e. half the single-path Bloch vector
    single = affine_of_channel(b.noise)(r1)
    v = interference_vector(td) + td.At @ r1
    r_plus = 0.5 * single + w * v
    r_minus = 0.5 * single - w * v
    posts = []
    for p, rv, label in ((p_plus, r_plus, "+"), (p_minus, r_minus, "-")):
        if p <= DEGENERATE_P:
            warnings.warn(
                f"control outcome {label} has probability {p:.3g}; conditional state undefined",
                DegenerateBranchWarning,
                stacklevel=2,
            )
            posts.append(None)
        else:
            posts.append(rv / p)
    return ControlReadout(p_plus, p_minus, q, r_plus, r_minus, posts[0], posts[1])


def control_reduced_state(sc: SuperposedChannel, r: ArrayLike, td: TransformData | None = None) -> np.ndarray:
    """Bloch vector [2 sqrt((1-pc) pc) Q, 0, 2 pc - 1] of the control after tracing out the probe."""
    td = sc.transform() if td is None else td
    q = q_factor(td, sc.branch.axis, sc.branch.xi, r)
    return np.array([2.0 * sc.coherence * q, 0.0, 2.0 * sc.pc - 1.0])


def optimal_geometry(s: ArrayLike) -> tuple[np.ndarray, np.ndarray]:
    """Axis n orthogonal to s and unit probe r parallel to s.

    With s = 0 there is nothing to align with; z-axis and x-probe are returned.
    """
    s = np.asarray(s, dtype=float)
    norm = np.linalg.norm(s)
    if norm < 1e-15:
        return np.array([0.0, 0.0, 1.0]), np.array([1.0, 0.0, 0.0])
    r = s / norm
    # cross with the basis vector least aligned with s
    e = np.eye(3)[np.argmin(np.abs(r))]
    n = np.cross(r, e)
    return as_axis(n / np.linalg.norm(n)), r
