"""Qubit noise channels as Kraus sets paired with an environment model.

A channel is a list of Kraus operators; its environment is the list of overlaps
``g_j = <g|e_j>`` between the initial environment state and the environment
basis used to extract each Kraus operator. The overlaps are all the superposed
channel needs to know about the environment.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from .qubit import I2, PAULI, as_axis, is_unitary, rotation_matrix, unitary_qubit

__all__ = [
    "KrausChannel",
    "EnvironmentModel",
    "AffineMap",
    "PauliNoise",
    "NoisyUnitaryChannel",
    "pauli_channel",
    "depolarizing",
    "identity_channel",
    "affine_of_channel",
    "apply_kraus",
    "apply_noisy_unitary",
    "kraus_mix",
]

TP_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """Ordered Kraus set; zero operators are kept so indices line up with overlaps."""

    kraus: np.ndarray

    def __post_init__(self):
        k = np.array(self.kraus, dtype=complex)
        if k.ndim != 3 or k.shape[1:] != (2, 2):
            raise ValueError(f"Kraus operators must be a (K, 2, 2) array, got {k.shape}")
        if not np.all(np.isfinite(k)):
            raise ValueError("Kraus operators contain non-finite entries")
        dev = np.max(np.abs(np.einsum("kji,kjl->il", k.conj(), k) - I2))
        if dev > TP_TOL:
            raise ValueError(f"Kraus set is not trace preserving (deviation {dev:.3g})")
        k.setflags(write=False)
        object.__setattr__(self, "kraus", k)

    def __len__(self) -> int:
        return self.kraus.shape[0]

    def padded(self, size: int) -> "KrausChannel":
        """Same channel with zero operators appended up to ``size`` elements."""
        if size < len(self):
            raise ValueError(f"cannot pad {len(self)} Kraus operators down to {size}")
        pad = np.zeros((size - len(self), 2, 2), dtype=complex)
        return KrausChannel(np.concatenate([self.kraus, pad]))


@dataclass(frozen=True, eq=False)
class EnvironmentModel:
    """Overlaps ``<g|e_j>`` of the initial environment state with the environment basis."""

    overlaps: np.ndarray

    def __post_init__(self):
        g = np.array(self.overlaps, dtype=complex).reshape(-1)
        norm2 = float(np.sum(np.abs(g) ** 2))
        if abs(norm2 - 1.0) > TP_TOL:
            raise ValueError(f"environment overlaps must satisfy sum |g_j|^2 = 1, got {norm2}")
        g.setflags(write=False)
        object.__setattr__(self, "overlaps", g)

    def __len__(self) -> int:
        return self.overlaps.shape[0]

    @classmethod
    def unbiased(cls, size: int = 4) -> "EnvironmentModel":
        """Environment treating every Kraus index evenly: g_j = 1/sqrt(K)."""
        return cls(np.full(size, 1.0 / np.sqrt(size)))

    @classmethod
    def aligned(cls, size: int, index: int = 0) -> "EnvironmentModel":
        """Environment starting in one of its basis states."""
        g = np.zeros(size, dtype=complex)
        g[index] = 1.0
        return cls(g)

    def padded(self, size: int) -> "EnvironmentModel":
        if size < len(self):
            raise ValueError(f"cannot pad {len(self)} overlaps down to {size}")
        return EnvironmentModel(np.concatenate([self.overlaps, np.zeros(size - len(self))]))


@dataclass(frozen=True, eq=False)
class AffineMap:
    """Bloch action r -> A r + c of a qubit channel."""

    A: np.ndarray
    c: np.ndarray

    def __call__(self, r: ArrayLike) -> np.ndarray:
        return self.A @ np.asarray(r, dtype=float) + self.c


@dataclass(frozen=True)
class PauliNoise:
    p0: float
    px: float
    py: float
    pz: float

    def __post_init__(self):
        p = self.probs
        if np.any(p < 0) or np.any(p > 1):
            raise ValueError(f"Pauli probabilities must lie in [0, 1], got {tuple(p)}")
        if abs(p.sum() - 1.0) > 1e-12:
            raise ValueError(f"Pauli probabilities must sum to 1, got {p.sum()}")

    @property
    def probs(self) -> np.ndarray:
        return np.array([self.p0, self.px, self.py, self.pz], dtype=float)


@dataclass(frozen=True, eq=False)
class NoisyUnitaryChannel:
    """U_xi followed by a noise channel; Kraus operators Lambda_j U_xi."""

    axis: np.ndarray
    xi: float
    noise: KrausChannel
    env: EnvironmentModel

    def __post_init__(self):
        object.__setattr__(self, "axis", as_axis(self.axis))
        if len(self.noise) != len(self.env):
            raise ValueError(
                f"{len(self.noise)} Kraus operators but {len(self.env)} environment overlaps"
            )

    @property
    def unitary(self) -> np.ndarray:
        return unitary_qubit(self.axis, self.xi)

    @property
    def kraus(self) -> np.ndarray:
        return self.noise.kraus @ self.unitary

    def with_phase(self, xi: float) -> "NoisyUnitaryChannel":
        return NoisyUnitaryChannel(self.axis, xi, self.noise, self.env)


def pauli_channel(p: PauliNoise) -> KrausChannel:
    """Kraus set {sqrt(p0) I, sqrt(px) X, sqrt(py) Y, sqrt(pz) Z}, always four elements."""
    return KrausChannel(np.sqrt(p.probs)[:, None, None] * PAULI)


def depolarizing(alpha: float) -> PauliNoise:
    """Pauli noise contracting every Bloch vector by ``alpha``.

    Complete positivity requires alpha in [-1/3, 1].
    """
    if not -1.0 / 3.0 - 1e-15 <= alpha <= 1.0 + 1e-15:
        raise ValueError(f"depolarizing contraction factor must lie in [-1/3, 1], got {alpha}")
    alpha = min(max(alpha, -1.0 / 3.0), 1.0)
    flip = (1.0 - alpha) / 4.0
    return PauliNoise(1.0 - 3.0 * flip, flip, flip, flip)


def identity_channel(size: int = 4) -> KrausChannel:
    k = np.zeros((size, 2, 2), dtype=complex)
    k[0] = I2
    return KrausChannel(k)


def apply_kraus(kraus: ArrayLike, rho: ArrayLike) -> np.ndarray:
    """sum_j K_j rho K_j^dagger."""
    k = np.asarray(kraus, dtype=complex)
    return np.einsum("kij,jl,kml->im", k, np.asarray(rho, dtype=complex), k.conj())


def affine_of_channel(ch: KrausChannel) -> AffineMap:
    """A_kl = tr(sigma_k N(sigma_l)) / 2 and c_k = tr(sigma_k N(I)) / 2."""
    if not isinstance(ch, KrausChannel):
        ch = KrausChannel(ch)
    images = np.stack([apply_kraus(ch.kraus, PAULI[l]) for l in range(4)])
    # m[k, l] = tr(sigma_k N(sigma_l)) / 2
    m = np.einsum("kij,lji->kl", PAULI, images).real / 2.0
    return AffineMap(A=m[1:, 1:].copy(), c=m[1:, 0].copy())


def apply_noisy_unitary(ch: NoisyUnitaryChannel, r: ArrayLike) -> np.ndarray:
    """Bloch vector A U_xi r + c of the channel output."""
    aff = affine_of_channel(ch.noise)
    return aff(rotation_matrix(ch.axis, ch.xi) @ np.asarray(r, dtype=float))


def kraus_mix(
    ch: KrausChannel, env: EnvironmentModel, u: ArrayLike
) -> tuple[KrausChannel, EnvironmentModel]:
    """Unitarily equivalent Kraus set and the matching environment overlaps.

    K'_k = sum_j u_kj K_j and, with the rotated basis |e'_k> = sum_j u*_kj |e_j>,
    the overlaps become g'_k = sum_j u*_kj g_j. Lists shorter than ``u`` are
    padded with zero operators (an enlarged environment).
    """
    u = np.asarray(u, dtype=complex)
    if not is_unitary(u):
        raise ValueError("mixing matrix is not unitary")
    size = u.shape[0]
    if size < len(ch) or len(ch) != len(env):
        raise ValueError(
            f"mixing matrix of size {size} incompatible with {len(ch)} Kraus operators "
            f"and {len(env)} overlaps"
        )
    k = ch.padded(size).kraus
    g = env.padded(size).overlaps
    return KrausChannel(np.einsum("kj,jab->kab", u, k)), EnvironmentModel(u.conj() @ g)

