from __future__ import annotations

import math

import numpy as np
import pytest
from conftest import random_ball, random_unit

from qsuperpose.dilation import (
    CompoundMixture,
    check_T_invariance,
    complete_unitary,
    evolve_superposed,
    oracle_joint_state,
    oracle_suite,
    random_unitary,
    trace_out_envs,
)
from qsuperpose.noise import (
    EnvironmentModel,
    KrausChannel,
    NoisyUnitaryChannel,
    PauliNoise,
    depolarizing,
    identity_channel,
    pauli_channel,
)
from qsuperpose.qubit import I2, bloch_to_density, unitary_qubit
from qsuperpose.superposed import SuperposedChannel, joint_output, transform_data

UNBIASED = EnvironmentModel.unbiased()


def random_env(rng, size=4):
    g = rng.normal(size=size) + 1j * rng.normal(size=size)
    return EnvironmentModel(g / np.linalg.norm(g))


def test_complete_unitary_identity_channel():
    d = complete_unitary(identity_channel(), EnvironmentModel.aligned(4, 0))
    assert np.allclose(d.kraus()[0], I2, atol=1e-15)
    assert np.allclose(d.kraus()[1:], 0, atol=1e-15)


def test_complete_unitary_recovers_depolarizing():
    ch = pauli_channel(depolarizing(0.5))
    d = complete_unitary(ch, UNBIASED)
    assert np.max(np.abs(d.kraus() - ch.kraus)) < 1e-12
    assert np.max(np.abs(d.U @ d.U.conj().T - np.eye(8))) < 1e-10


def test_complete_unitary_random(rng):
    for _ in range(50):
        ch = pauli_channel(PauliNoise(*rng.dirichlet(np.ones(4))))
        env = random_env(rng)
        d = complete_unitary(ch, env)
        assert np.max(np.abs(d.U @ d.U.conj().T - np.eye(8))) < 1e-10
        assert np.max(np.abs(d.kraus() - ch.kraus)) < 1e-12
        # <g|e_j> reproduces the stored overlaps
        assert np.allclose(d.g.conj(), env.overlaps)


def test_complete_unitary_rejects_invalid():
    with pytest.raises(ValueError):
        complete_unitary(0.5 * pauli_channel(depolarizing(0.5)).kraus, UNBIASED)
    big = KrausChannel(np.concatenate([[I2], np.zeros((8, 2, 2))]))
    with pytest.raises(ValueError):
        complete_unitary(big, EnvironmentModel.aligned(9, 0))


def test_evolve_pc_extremes_leave_other_env_untouched(rng):
    ch, env = pauli_channel(depolarizing(0.3)), random_env(rng)
    d = complete_unitary(ch, env)
    u = unitary_qubit(random_unit(rng), 0.8)
    for pc, untouched in ((1.0, "env2"), (0.0, "env1")):
        mix = evolve_superposed(d, d, u, random_ball(rng), pc)
        rho_env = sum(
            w * (np.einsum("acjk,acjl->kl", s, s.conj()) if untouched == "env2"
                 else np.einsum("acjk,aclk->jl", s, s.conj()))
            for w, s in zip(mix.weights, mix.states)
        )
        assert np.max(np.abs(rho_env - np.outer(d.g, d.g.conj()))) < 1e-12


def test_evolve_noiseless_probe_factor(rng):
    env = EnvironmentModel.aligned(4, 0)
    d = complete_unitary(identity_channel(), env)
    n, xi = random_unit(rng), 1.7
    psi = np.array([0.6, 0.8j])
    r = np.real([psi.conj() @ s @ psi for s in (np.array([[0, 1], [1, 0]]), np.array([[0, -1j], [1j, 0]]), np.diag([1, -1]))])
    mix = evolve_superposed(d, d, unitary_qubit(n, xi), r, 0.4)
    assert len(mix.states) == 1
    probe = mix.states[0][:, :, 0, 0].sum(axis=1)
    probe = probe / np.linalg.norm(probe)
    target = unitary_qubit(n, xi) @ psi
    assert abs(abs(np.vdot(probe, target)) - 1) < 1e-12


def test_evolve_rejects_bad_pc(rng):
    d = complete_unitary(identity_channel(), UNBIASED)
    with pytest.raises(ValueError):
        evolve_superposed(d, d, None, (0, 0, 1), 1.5)


def test_trace_out_product_without_evolution(rng):
    d = complete_unitary(identity_channel(), EnvironmentModel.aligned(4, 0))
    r = random_ball(rng)
    pc = 0.3
    rho = trace_out_envs(evolve_superposed(d, d, None, r, pc))
    c = np.array([math.sqrt(pc), math.sqrt(1 - pc)])
    assert np.allclose(rho, np.kron(bloch_to_density(r), np.outer(c, c)), atol=1e-14)


def test_trace_out_is_a_state(rng):
    for _ in range(20):
        ch = pauli_channel(PauliNoise(*rng.dirichlet(np.ones(4))))
        rho = oracle_joint_state(ch, random_env(rng), random_unit(rng), rng.uniform(0, 6), random_ball(rng), rng.uniform())
        assert np.allclose(rho, rho.conj().T, atol=1e-14)
        assert abs(np.trace(rho) - 1) < 1e-10
        assert np.linalg.eigvalsh(rho).min() > -1e-10


def test_oracle_matches_depolarizing_joint_output(rng):
    ch, env = pauli_channel(depolarizing(0.5)), UNBIASED
    for _ in range(10):
        n, xi, r, pc = random_unit(rng), rng.uniform(0, 6), random_ball(rng), rng.uniform()
        sc = SuperposedChannel(NoisyUnitaryChannel(n, xi, ch, env), pc)
        assert np.max(np.abs(oracle_joint_state(ch, env, n, xi, r, pc) - joint_output(sc, r))) < 1e-12


def test_oracle_noiseless_factorizes():
    env = EnvironmentModel([0.6, 0.8j, 0, 0])
    n, xi, r, pc = (0, 0, 1), 0.4, (0.5, 0.2, 0.1), 0.5
    rho = oracle_joint_state(identity_channel(), env, n, xi, r, pc)
    u = unitary_qubit(n, xi)
    probe = u @ bloch_to_density(r) @ u.conj().T
    control = np.array([[0.5, 0.5 * 0.36], [0.5 * 0.36, 0.5]])
    assert np.allclose(rho, np.kron(probe, control), atol=1e-14)


def test_completion_choice_does_not_matter(rng):
    for _ in range(10):
        ch = pauli_channel(PauliNoise(*rng.dirichlet(np.ones(4))))
        env = random_env(rng)
        args = (random_unit(rng), rng.uniform(0, 6), random_ball(rng), rng.uniform())
        a = oracle_joint_state(ch, env, *args)
        b = oracle_joint_state(ch, env, *args, pivot_order=rng.permutation(8))
        assert np.max(np.abs(a - b)) < 1e-12


def test_dilation_transform_is_T(rng):
    for _ in range(20):
        ch = pauli_channel(PauliNoise(*rng.dirichlet(np.ones(4))))
        env = random_env(rng)
        assert np.max(np.abs(complete_unitary(ch, env).transform() - transform_data(ch, env).T)) < 1e-12


def test_T_invariance_examples(rng):
    ch = pauli_channel(depolarizing(0.3))
    assert check_T_invariance(ch, UNBIASED, np.eye(4)).max_deviation < 1e-15
    for size in (4, 6):
        rep = check_T_invariance(ch, UNBIASED, random_unitary(size, rng))
        assert rep.max_deviation < 1e-12


def test_T_invariance_needs_conjugate_overlaps(rng):
    # with g' = u g (no conjugate) the mixed representation gives a different T
    ch, env = pauli_channel(depolarizing(0.3)), random_env(rng)
    u = random_unitary(4, rng)
    wrong = np.einsum("k,kab->ab", u @ env.overlaps, np.einsum("kj,jab->kab", u, ch.kraus))
    assert np.max(np.abs(wrong - transform_data(ch, env).T)) > 1e-3


def test_random_unitary_is_unitary(rng):
    u = random_unitary(6, rng)
    assert np.allclose(u @ u.conj().T, np.eye(6), atol=1e-12)


def test_oracle_suite_passes_and_detects_fault():
    rep = oracle_suite(configs=20, seed=3)
    assert rep.passed() and rep.configs == 20 and rep.first_failure is None
    assert rep.max_dev_joint <= 1e-10 and rep.max_dev_dp <= 1e-6
    bad = oracle_suite(configs=5, seed=3, fault=1e-3)
    assert not bad.passed() and bad.first_failure["index"] == 0


def test_oracle_suite_deterministic():
    a, b = oracle_suite(configs=5, seed=11), oracle_suite(configs=5, seed=11)
    assert a.rows == b.rows


def test_compound_mixture_weights_sum_to_one(rng):
    d = complete_unitary(pauli_channel(depolarizing(0.2)), UNBIASED)
    mix = evolve_superposed(d, d, None, random_ball(rng), 0.5)
    assert isinstance(mix, CompoundMixture)
    assert mix.weights.sum() == pytest.approx(1.0)
    for s in mix.states:
        assert np.linalg.norm(s) == pytest.approx(1.0, abs=1e-12)
