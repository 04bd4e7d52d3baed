"""Brute-force Stinespring oracle for the superposed channel.

Each noisy branch is realised as a unitary on probe (x) environment, the two
environments are kept as separate registers, and the compound
probe (x) control (x) env1 (x) env2 state is evolved as a pure vector before the
environments are traced out. Nothing here uses the Bloch-representation
formulas of :mod:`qsuperpose.superposed`; the two routes are compared in tests
and by ``oracle_suite``.

Tensor ordering is always probe, control, env1, env2; a dilated unitary acts on
probe (x) env with index ``probe * K + env``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike

from .noise import EnvironmentModel, KrausChannel, PauliNoise, kraus_mix, pauli_channel
from .qubit import I2, bloch_to_density, is_unitary, unitary_qubit

__all__ = [
    "DilatedUnitary",
    "CompoundMixture",
    "TInvarianceReport",
    "OracleReport",
    "complete_unitary",
    "branch_dilation",
    "evolve_superposed",
    "trace_out_envs",
    "oracle_joint_state",
    "check_T_invariance",
    "random_unitary",
    "oracle_suite",
]

DROP_TOL = 1e-10
MAX_ENV_DIM = 8


@dataclass(frozen=True, eq=False)
class DilatedUnitary:
    """Unitary ``U_J`` on probe (x) env together with the environment start state."""

    U: np.ndarray
    g: np.ndarray  # amplitudes of |g> in the environment basis

    @property
    def env_dim(self) -> int:
        return self.g.shape[0]

    def kraus(self) -> np.ndarray:
        """Partial inner products <e_j| U_J |g>, shape (K, 2, 2)."""
        K = self.env_dim
        u = self.U.reshape(2, K, 2, K)
        return np.einsum("ajbl,l->jab", u, self.g)

    def transform(self) -> np.ndarray:
        """<g| U_J |g>."""
        K = self.env_dim
        u = self.U.reshape(2, K, 2, K)
        return np.einsum("j,ajbl,l->ab", self.g.conj(), u, self.g)


def _gram_schmidt_complete(fixed: Sequence[np.ndarray], dim: int, order: Sequence[int]) -> np.ndarray:
    """Extend orthonormal ``fixed`` columns to a basis using standard vectors in ``order``."""
    basis = [np.asarray(v, dtype=complex) for v in fixed]
    for idx in order:
        if len(basis) == dim:
            break
        v = np.zeros(dim, dtype=complex)
        v[idx] = 1.0
        for b in basis:
            v = v - (b.conj() @ v) * b
        # second pass keeps the completion orthonormal to ~1e-15
        for b in basis:
            v = v - (b.conj() @ v) * b
        norm = np.linalg.norm(v)
        if norm > DROP_TOL:
            basis.append(v / norm)
    if len(basis) != dim:
        raise ArithmeticError(f"basis completion produced {len(basis)} of {dim} vectors")
    return np.stack(basis, axis=1)


def complete_unitary(
    kraus: KrausChannel | ArrayLike,
    env: EnvironmentModel,
    pivot_order: Sequence[int] | None = None,
) -> DilatedUnitary:
    """Unitary with ``U_J (|psi> (x) |g>) = sum_j K_j|psi> (x) |e_j>``.

    ``|g> = sum_j g_j* |e_j>`` so that ``<g|e_j> = g_j``. The remaining columns are
    filled by Gram-Schmidt over standard basis vectors taken in ``pivot_order``
    (ascending by default); any completion gives the same channel.
    """
    k = kraus.kraus if isinstance(kraus, KrausChannel) else np.asarray(kraus, dtype=complex)
    K = k.shape[0]
    if K != len(env):
        raise ValueError(f"{K} Kraus operators but {len(env)} environment overlaps")
    if K > MAX_ENV_DIM:
        raise ValueError(f"environment dimension {K} exceeds the supported maximum {MAX_ENV_DIM}")
    dim = 2 * K
    g = env.overlaps.conj()
    e = np.eye(K)
    inputs = [np.kron(np.eye(2)[a], g) for a in range(2)]
    outputs = [sum(np.kron(k[j][:, a], e[j]) for j in range(K)) for a in range(2)]
    gram = np.array([[x.conj() @ y for y in outputs] for x in outputs])
    dev = np.max(np.abs(gram - np.eye(2)))
    if dev > 1e-9:
        raise ValueError(f"dilation columns are not orthonormal (deviation {dev:.3g}); invalid channel")
    order = range(dim) if pivot_order is None else pivot_order
    b_in = _gram_schmidt_complete(inputs, dim, order)
    b_out = _gram_schmidt_complete(outputs, dim, order)
    return DilatedUnitary(U=b_out @ b_in.conj().T, g=g)


def branch_dilation(
    noise: KrausChannel,
    env: EnvironmentModel,
    unitary: ArrayLike,
    pivot_order: Sequence[int] | None = None,
) -> DilatedUnitary:
    """Dilation of the noisy unitary branch: Kraus operators Lambda_j U."""
    return complete_unitary(noise.kraus @ np.asarray(unitary, dtype=complex), env, pivot_order)


@dataclass(frozen=True, eq=False)
class CompoundMixture:
    """Convex mixture of pure probe-control-env1-env2 tensors, shape (2, 2, K1, K2) each."""

    weights: np.ndarray
    states: list = field(default_factory=list)


def _pure_components(r: ArrayLike) -> list[tuple[float, np.ndarray]]:
    rho = bloch_to_density(r)
    vals, vecs = np.linalg.eigh(rho)
    return [(float(w), vecs[:, i]) for i, w in enumerate(vals) if w > 1e-15]


def evolve_superposed(
    U1: DilatedUnitary,
    U2: DilatedUnitary,
    unitary_branch: ArrayLike | None,
    r: ArrayLike,
    pc: float,
) -> CompoundMixture:
    """Controlled evolution: control |0_c> routes the probe through ``U1`` with env1,
    control |1_c> through ``U2`` with env2.

    ``unitary_branch`` is applied to the probe before the noise dilation on both
    paths; pass ``None`` when the dilations already include it.
    """
    if not 0.0 <= pc <= 1.0:
        raise ValueError(f"control weight pc must lie in [0, 1], got {pc}")
    for u in (U1, U2):
        if not is_unitary(u.U):
            raise ValueError("dilated unitary is not unitary")
    K1, K2 = U1.env_dim, U2.env_dim
    ub = I2 if unitary_branch is None else np.asarray(unitary_branch, dtype=complex)
    W1 = (U1.U @ np.kron(ub, np.eye(K1))).reshape(2, K1, 2, K1)
    W2 = (U2.U @ np.kron(ub, np.eye(K2))).reshape(2, K2, 2, K2)
    control = np.array([np.sqrt(pc), np.sqrt(1.0 - pc)])
    weights, states = [], []
    for w, psi in _pure_components(r):
        # probe, control, env1, env2
        state = np.einsum("a,c,j,k->acjk", psi, control, U1.g, U2.g)
        out = np.empty_like(state)
        out[:, 0] = np.einsum("ajbl,blk->ajk", W1, state[:, 0])
        out[:, 1] = np.einsum("akbl,bjl->ajk", W2, state[:, 1])
        weights.append(w)
        states.append(out)
    return CompoundMixture(np.array(weights), states)


def trace_out_envs(state: CompoundMixture) -> np.ndarray:
    """Probe (x) control density matrix, 4x4."""
    rho = np.zeros((2, 2, 2, 2), dtype=complex)
    for w, psi in zip(state.weights, state.states):
        rho += w * np.einsum("acjk,bdjk->acbd", psi, psi.conj())
    return rho.reshape(4, 4)


def oracle_joint_state(
    noise: KrausChannel,
    env: EnvironmentModel,
    n: ArrayLike,
    xi: float,
    r: ArrayLike,
    pc: float,
    pivot_order: Sequence[int] | None = None,
) -> np.ndarray:
    """Joint probe-control output of the superposed channel, by full dilation."""
    d1 = complete_unitary(noise, env, pivot_order)
    d2 = complete_unitary(noise, env, pivot_order)
    return trace_out_envs(evolve_superposed(d1, d2, unitary_qubit(n, xi), r, pc))


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary from the QR decomposition of a Ginibre matrix."""
    z = (rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


@dataclass(frozen=True)
class TInvarianceReport:
    T_overlaps: np.ndarray
    T_mixed: np.ndarray
    T_dilation: np.ndarray

    @property
    def max_deviation(self) -> float:
        return float(
            max(
                np.max(np.abs(self.T_overlaps - self.T_mixed)),
                np.max(np.abs(self.T_overlaps - self.T_dilation)),
                np.max(np.abs(self.T_mixed - self.T_dilation)),
            )
        )


def check_T_invariance(ch: KrausChannel, env: EnvironmentModel, u: ArrayLike) -> TInvarianceReport:
    """Transformation operator computed three ways, to be compared.

    The routes are the overlap sum, the unitarily mixed Kraus set with its
    rotated overlaps, and <g|U_J|g> from a dilation.
    """
    t_a = np.einsum("j,jab->ab", env.overlaps, ch.kraus)
    ch2, env2 = kraus_mix(ch, env, u)
    t_b = np.einsum("j,jab->ab", env2.overlaps, ch2.kraus)
    t_c = complete_unitary(ch2, env2).transform()
    return TInvarianceReport(t_a, t_b, t_c)


@dataclass
class OracleReport:
    configs: int = 0
    max_dev_joint: float = 0.0
    max_dev_dp: float = 0.0
    max_dev_kraus: float = 0.0
    max_dev_unitarity: float = 0.0
    first_failure: dict | None = None
    rows: list = field(default_factory=list)

    def passed(self, tol_joint: float = 1e-10, tol_dp: float = 1e-6, tol_kraus: float = 1e-12) -> bool:
        return (
            self.max_dev_joint <= tol_joint
            and self.max_dev_dp <= tol_dp
            and self.max_dev_kraus <= tol_kraus
            and self.max_dev_unitarity <= 1e-10
        )


def random_config(rng: np.random.Generator) -> dict:
    """Random Pauli noise, environment, axis, phase, probe and control weight."""
    p = rng.dirichlet(np.ones(4))
    g = rng.normal(size=4) + 1j * rng.normal(size=4)
    n = rng.normal(size=3)
    r = rng.normal(size=3)
    return {
        "p": p,
        "g": g / np.linalg.norm(g),
        "n": n / np.linalg.norm(n),
        "xi": float(rng.uniform(0.0, 2 * np.pi)),
        "r": r / np.linalg.norm(r) * rng.uniform() ** (1 / 3),
        "pc": float(rng.uniform()),
    }


def oracle_suite(
    configs: int = 100,
    seed: int = 0,
    h: float = 1e-5,
    fault: float = 0.0,
    tol_joint: float = 1e-10,
    tol_dp: float = 1e-6,
) -> OracleReport:
    """Compare the closed-form joint state and dP+/dxi against the dilation oracle.

    ``fault`` adds a constant to every entry of the analytic ``At`` (negative control).
    """
    # local import: superposed is the route under test, not a dependency of the oracle
    from dataclasses import replace

    from .noise import NoisyUnitaryChannel
    from .superposed import SuperposedChannel, dq_factor, joint_output

    rng = np.random.default_rng(seed)
    rep = OracleReport()
    plus = np.kron(np.eye(2), np.full((2, 2), 0.5))
    for i in range(configs):
        cfg = random_config(rng)
        noise = pauli_channel(PauliNoise(*cfg["p"]))
        env = EnvironmentModel(cfg["g"])
        sc = SuperposedChannel(NoisyUnitaryChannel(cfg["n"], cfg["xi"], noise, env), cfg["pc"])
        td = sc.transform()
        if fault:
            td = replace(td, At=td.At + fault)
        analytic = joint_output(sc, cfg["r"], td)
        dil = complete_unitary(noise, env)
        dev_kraus = float(np.max(np.abs(dil.kraus() - noise.kraus)))
        dev_unit = float(np.max(np.abs(dil.U @ dil.U.conj().T - np.eye(dil.U.shape[0]))))
        oracle = oracle_joint_state(noise, env, cfg["n"], cfg["xi"], cfg["r"], cfg["pc"])
        dev_joint = float(np.max(np.abs(analytic - oracle)))

        def p_plus(xi):
            rho = oracle_joint_state(noise, env, cfg["n"], xi, cfg["r"], cfg["pc"])
            return float(np.trace(plus @ rho).real)

        fd = (p_plus(cfg["xi"] + h) - p_plus(cfg["xi"] - h)) / (2 * h)
        dp = sc.coherence * dq_factor(td, cfg["n"], cfg["xi"], cfg["r"])
        dev_dp = abs(fd - dp)
        rep.configs += 1
        rep.max_dev_joint = max(rep.max_dev_joint, dev_joint)
        rep.max_dev_dp = max(rep.max_dev_dp, dev_dp)
        rep.max_dev_kraus = max(rep.max_dev_kraus, dev_kraus)
        rep.max_dev_unitarity = max(rep.max_dev_unitarity, dev_unit)
        rep.rows.append((i, dev_joint, dev_dp, dev_kraus, dev_unit))
        if rep.first_failure is None and (dev_joint > tol_joint or dev_dp > tol_dp):
            rep.first_failure = {"index": i, **cfg}
    return rep
