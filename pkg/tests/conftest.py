from __future__ import annotations

import numpy as np
import pytest
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

finite = st.floats(-1.0, 1.0, allow_nan=False, allow_infinity=False)
angles = st.floats(-10.0, 10.0, allow_nan=False, allow_infinity=False)


@st.composite
def unit_vectors(draw):
    v = draw(arrays(float, 3, elements=finite))
    norm = np.linalg.norm(v)
    if norm < 1e-3:
        return np.array([0.0, 0.0, 1.0])
    return v / norm


@st.composite
def ball_vectors(draw):
    return draw(unit_vectors()) * draw(st.floats(0.0, 1.0))


@st.composite
def pauli_probs(draw):
    w = draw(arrays(float, 4, elements=st.floats(0.0, 1.0)))
    if w.sum() < 1e-6:
        w = np.array([1.0, 0.0, 0.0, 0.0])
    return w / w.sum()


@st.composite
def overlaps(draw, size=4):
    re = draw(arrays(float, size, elements=finite))
    im = draw(arrays(float, size, elements=finite))
    g = re + 1j * im
    norm = np.linalg.norm(g)
    if norm < 1e-3:
        g = np.full(size, 1.0 + 0j)
        norm = np.linalg.norm(g)
    return g / norm


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_unit(rng, size=3):
    v = rng.normal(size=size)
    return v / np.linalg.norm(v)


def random_ball(rng):
    return random_unit(rng) * rng.uniform() ** (1 / 3)


ACCEPTANCE_LINES: dict[int, str] = {}


def record_acceptance(number: int, title: str, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES[number] = f"criterion {number} [{'PASS' if ok else 'FAIL'}] {title}: {detail}"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])
