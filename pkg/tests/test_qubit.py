from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from conftest import angles, ball_vectors, random_ball, random_unit, unit_vectors

from qsuperpose.qubit import (
    I2,
    SX,
    SY,
    SZ,
    as_axis,
    bloch_to_density,
    density_to_bloch,
    is_unitary,
    partial_trace,
    rotation_derivative,
    rotation_matrix,
    sigma_bilinear,
    sigma_dot,
    unitary_qubit,
)


@pytest.mark.parametrize(
    "r, expected",
    [
        ((0, 0, 0), I2 / 2),
        ((0, 0, 1), np.diag([1, 0])),
        ((1, 0, 0), np.full((2, 2), 0.5)),
    ],
)
def test_bloch_to_density_known_states(r, expected):
    assert np.allclose(bloch_to_density(r), expected, atol=1e-15)


def test_bloch_to_density_rejects_unphysical():
    with pytest.raises(ValueError):
        bloch_to_density((1.0, 0.1, 0.0))
    bloch_to_density((1.0 + 5e-10, 0.0, 0.0))  # within tolerance


@pytest.mark.parametrize("rho, r", [(I2 / 2, (0, 0, 0)), (np.diag([1, 0]), (0, 0, 1))])
def test_density_to_bloch_known_states(rho, r):
    assert np.allclose(density_to_bloch(rho), r, atol=1e-15)


def test_density_to_bloch_rejects_bad_input():
    with pytest.raises(ValueError):
        density_to_bloch(np.array([[0.5, 1.0], [0.0, 0.5]]))
    with pytest.raises(ValueError):
        density_to_bloch(np.eye(2))


def test_density_round_trip_random(rng):
    for _ in range(100):
        r = random_ball(rng)
        rho = bloch_to_density(r)
        assert np.max(np.abs(bloch_to_density(density_to_bloch(rho)) - rho)) < 1e-12


@given(ball_vectors())
def test_density_is_a_state(r):
    rho = bloch_to_density(r)
    ev = np.linalg.eigvalsh(rho)
    assert ev.min() >= -1e-12 and ev.max() <= 1 + 1e-12
    assert abs(np.trace(rho) - 1) < 1e-12


def test_unitary_qubit_examples():
    assert np.allclose(unitary_qubit((0, 0, 1), 0.0), I2)
    assert np.allclose(unitary_qubit((0, 0, 1), math.pi), -1j * SZ, atol=1e-15)


@given(unit_vectors(), angles)
def test_unitary_qubit_is_unitary_and_4pi_periodic(n, xi):
    u = unitary_qubit(n, xi)
    assert np.max(np.abs(u @ u.conj().T - I2)) < 1e-14
    assert np.allclose(unitary_qubit(n, xi + 4 * math.pi), u, atol=1e-12)
    assert np.allclose(unitary_qubit(n, xi + 2 * math.pi), -u, atol=1e-12)


def test_rotation_matrix_examples():
    assert np.allclose(rotation_matrix((1, 0, 0), 0.0), np.eye(3))
    assert np.allclose(rotation_matrix((0, 0, 1), math.pi / 2) @ [1, 0, 0], [0, 1, 0], atol=1e-15)


@given(unit_vectors(), angles, ball_vectors())
def test_rotation_matrix_matches_conjugation(n, xi, r):
    u = unitary_qubit(n, xi)
    via_operator = density_to_bloch(u @ bloch_to_density(r) @ u.conj().T)
    assert np.max(np.abs(via_operator - rotation_matrix(n, xi) @ r)) < 1e-12


@given(unit_vectors(), angles, angles)
def test_rotation_group_properties(n, a, b):
    R = rotation_matrix(n, a)
    assert abs(np.linalg.det(R) - 1) < 1e-12
    assert np.allclose(R @ R.T, np.eye(3), atol=1e-12)
    assert np.allclose(R @ rotation_matrix(n, b), rotation_matrix(n, a + b), atol=1e-12)
    assert np.allclose(rotation_matrix(n, a + 2 * math.pi), R, atol=1e-12)


def test_rotation_derivative_examples():
    assert np.allclose(rotation_derivative((0, 0, 1), (1, 0, 0)), (0, 1, 0))
    assert np.allclose(rotation_derivative((0, 0, 1), (0, 0, 0.7)), 0)


def test_rotation_derivative_finite_difference(rng):
    h = 1e-6
    for _ in range(100):
        n, r, xi = random_unit(rng), random_ball(rng), rng.uniform(0, 2 * math.pi)
        fd = (rotation_matrix(n, xi + h) - rotation_matrix(n, xi - h)) @ r / (2 * h)
        assert np.max(np.abs(fd - rotation_derivative(n, rotation_matrix(n, xi) @ r))) < 1e-8


def test_sigma_bilinear_examples():
    s, v = sigma_bilinear((1, 0, 0), (1, 0, 0))
    assert s == 1 and np.allclose(v, 0)
    s, v = sigma_bilinear((1, 0, 0), (0, 1, 0))
    assert s == 0 and np.allclose(v, (0, 0, 1j))
    assert np.allclose(SX @ SY, 1j * SZ)


def test_sigma_bilinear_matches_matrix_product(rng):
    for _ in range(50):
        a = rng.uniform(-1, 1, 3) + 1j * rng.uniform(-1, 1, 3)
        b = rng.uniform(-1, 1, 3) + 1j * rng.uniform(-1, 1, 3)
        s, v = sigma_bilinear(a, b)
        assert np.max(np.abs(sigma_dot(a) @ sigma_dot(b) - (s * I2 + sigma_dot(v)))) < 1e-14


def test_as_axis_rejects_non_unit():
    with pytest.raises(ValueError):
        as_axis((1, 1, 0))


def test_is_unitary():
    assert is_unitary(SX)
    assert not is_unitary(2 * I2)


def test_partial_trace_product_state(rng):
    a, b = bloch_to_density(random_ball(rng)), bloch_to_density(random_ball(rng))
    ab = np.kron(a, b)
    assert np.allclose(partial_trace(ab, (2, 2), (0,)), a)
    assert np.allclose(partial_trace(ab, (2, 2), (1,)), b)
