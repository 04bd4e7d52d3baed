"""Dense 2x2 qubit algebra: Pauli basis, Bloch maps, SU(2) unitaries and their
SO(3) rotation representation.

Pauli ordering is (I, X, Y, Z) everywhere; index 0 is the identity.
"""
from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike

__all__ = [
    "I2",
    "SX",
    "SY",
    "SZ",
    "PAULI",
    "as_axis",
    "sigma_dot",
    "pauli_coords",
    "bloch_to_density",
    "density_to_bloch",
    "unitary_qubit",
    "rotation_matrix",
    "rotation_derivative",
    "sigma_bilinear",
    "is_unitary",
    "partial_trace",
]

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = np.stack([I2, SX, SY, SZ])

STATE_TOL = 1e-9


def as_axis(n: ArrayLike, tol: float = STATE_TOL) -> np.ndarray:
    """Return ``n`` as a float 3-vector after checking it has unit norm."""
    n = np.asarray(n, dtype=float)
    if n.shape != (3,) or not np.all(np.isfinite(n)):
        raise ValueError(f"rotation axis must be a finite 3-vector, got {n!r}")
    if abs(np.linalg.norm(n) - 1.0) > tol:
        raise ValueError(f"rotation axis must be a unit vector, |n| = {np.linalg.norm(n)}")
    return n


def _as_state_vector(r: ArrayLike) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    if r.shape != (3,) or not np.all(np.isfinite(r)):
        raise ValueError(f"Bloch vector must be a finite 3-vector, got {r!r}")
    if np.linalg.norm(r) > 1.0 + STATE_TOL:
        raise ValueError(f"unphysical Bloch vector, |r| = {np.linalg.norm(r)} > 1")
    return r


def sigma_dot(v: ArrayLike) -> np.ndarray:
    """v . sigma for a real or complex 3-vector."""
    v = np.asarray(v)
    return np.tensordot(v, PAULI[1:], axes=1)


def pauli_coords(m: ArrayLike) -> tuple[complex, np.ndarray]:
    """Coordinates (m0, m_vec) of a 2x2 operator with m = m0 I + m_vec . sigma."""
    m = np.asarray(m, dtype=complex)
    coords = np.einsum("kij,ji->k", PAULI, m) / 2.0
    return complex(coords[0]), coords[1:]


def bloch_to_density(r: ArrayLike) -> np.ndarray:
    """(I + r . sigma) / 2."""
    r = _as_state_vector(r)
    return 0.5 * (I2 + sigma_dot(r))


def density_to_bloch(rho: ArrayLike, tol: float = STATE_TOL) -> np.ndarray:
    """Bloch vector r_k = tr(rho sigma_k) of a Hermitian unit-trace 2x2 matrix."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise ValueError("density operator is not Hermitian")
    if abs(np.trace(rho) - 1.0) > tol:
        raise ValueError(f"density operator has trace {np.trace(rho)}, expected 1")
    _, v = pauli_coords(rho)
    return 2.0 * v.real


def unitary_qubit(n: ArrayLike, xi: float) -> np.ndarray:
    """exp(-i xi/2 n . sigma) = cos(xi/2) I - i sin(xi/2) n . sigma."""
    n = as_axis(n)
    return np.cos(xi / 2) * I2 - 1j * np.sin(xi / 2) * sigma_dot(n)


def rotation_matrix(n: ArrayLike, xi: float) -> np.ndarray:
    """Rodrigues matrix of the rotation by angle ``xi`` around ``n``.

    This is the Bloch-space image of :func:`unitary_qubit`:
    U rho U^dagger has Bloch vector ``rotation_matrix(n, xi) @ r``.
    """
    n = as_axis(n)
    k = np.array([[0.0, -n[2], n[1]], [n[2], 0.0, -n[0]], [-n[1], n[0], 0.0]])
    return np.eye(3) + np.sin(xi) * k + (1.0 - np.cos(xi)) * (k @ k)


def rotation_derivative(n: ArrayLike, r1: ArrayLike) -> np.ndarray:
    """d/dxi of the rotated vector r1(xi) = R(n, xi) r, which is n x r1."""
    return np.cross(as_axis(n), np.asarray(r1, dtype=float))


def sigma_bilinear(a: ArrayLike, b: ArrayLike) -> tuple[complex, np.ndarray]:
    """Return (a.b, i a x b) so that (a.sigma)(b.sigma) = (a.b) I + (i a x b).sigma.

    Both vectors may be complex; no conjugation is applied.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    return complex(a @ b), 1j * np.cross(a, b)


def is_unitary(u: ArrayLike, tol: float = 1e-10) -> bool:
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return bool(np.max(np.abs(u @ u.conj().T - np.eye(u.shape[0]))) <= tol)


def partial_trace(rho: ArrayLike, dims: tuple[int, ...], keep: tuple[int, ...]) -> np.ndarray:
    """Reduced density matrix on the subsystems listed in ``keep`` (in order)."""
    rho = np.asarray(rho, dtype=complex)
    n = len(dims)
    t = rho.reshape(dims + dims)
    traced = [i for i in range(n) if i not in keep]
    # einsum letters: row indices then column indices; traced pairs share a letter
    letters = "abcdefghijklmnopqrstuvwxyz"
    rows = list(letters[:n])
    cols = list(letters[n : 2 * n])
    for i in traced:
        cols[i] = rows[i]
    out = "".join(rows[i] for i in keep) + "".join(cols[i] for i in keep)
    red = np.einsum("".join(rows) + "".join(cols) + "->" + out, t)
    d = int(np.prod([dims[i] for i in keep]))
    return red.reshape(d, d)
