import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import expm as scipy_expm

from conftest import random_hermitian
from holobench import qmath
from holobench.qmath import (
    BlochAngles,
    ValidationError,
    eigh3,
    embed_qubit,
    expm_series,
    expm_unitary,
    fidelity,
    state_from_bloch,
    unitarity_defect,
)

EXPM_PATHS = [expm_unitary, expm_series]


def hermitian_strategy(dim):
    reals = st.floats(-1, 1, allow_nan=False)
    return st.lists(reals, min_size=dim * dim, max_size=dim * dim).map(
        lambda xs: _pack_hermitian(np.array(xs), dim)
    )


def _pack_hermitian(xs, dim):
    H = np.zeros((dim, dim), dtype=complex)
    k = 0
    for i in range(dim):
        H[i, i] = xs[k]
        k += 1
        for j in range(i + 1, dim):
            H[i, j] = xs[k] + 1j * xs[k + 1]
            H[j, i] = np.conj(H[i, j])
            k += 2
    return H


@pytest.mark.parametrize("expm", EXPM_PATHS)
@pytest.mark.parametrize("dim", [2, 3])
def test_zero_generator_gives_identity(expm, dim):
    assert np.array_equal(expm(np.zeros((dim, dim)), 3.7), np.eye(dim))


@pytest.mark.parametrize("expm", EXPM_PATHS)
@pytest.mark.parametrize("omega", [1.0, 2.5])
def test_pi_half_rabi_rotation(expm, omega):
    H = np.array([[0, omega], [omega, 0]])
    U = expm(H, math.pi / (2 * omega))
    np.testing.assert_allclose(U, [[0, -1j], [-1j, 0]], atol=1e-14)


@pytest.mark.parametrize("expm", EXPM_PATHS)
def test_lambda_pi_pulse_block(expm):
    # theta = pi/2, phi = 0: a = b = 1/sqrt(2); expected block [[0, -1], [-1, 0]]
    r = 1 / math.sqrt(2)
    H = np.array([[0, 0, r], [0, 0, r], [r, r, 0]])
    U = expm(H, math.pi)
    np.testing.assert_allclose(U[:2, :2], [[0, -1], [-1, 0]], atol=1e-12)
    assert abs(U[2, 2] + 1) < 1e-12
    assert np.max(np.abs(U[:2, 2])) < 1e-12 and np.max(np.abs(U[2, :2])) < 1e-12


def test_paths_agree_on_random_generators(rng):
    worst = 0.0
    for _ in range(300):
        for dim in (2, 3):
            H = random_hermitian(rng, dim)
            t = rng.uniform(0, 4 * math.pi)
            U1, U2 = expm_unitary(H, t), expm_series(H, t)
            worst = max(worst, np.max(np.abs(U1 - U2)))
            # third, unrelated reference (Pade approximant)
            assert np.max(np.abs(U1 - scipy_expm(-1j * H * t))) < 1e-11
    assert worst <= 1e-11


@settings(max_examples=200, deadline=None)
@given(H=hermitian_strategy(3), t1=st.floats(0, 2 * math.pi), t2=st.floats(0, 2 * math.pi))
def test_group_property_and_unitarity(H, t1, t2):
    U = expm_unitary(H, t1 + t2)
    assert unitarity_defect(U) <= 1e-10
    np.testing.assert_allclose(U, expm_unitary(H, t1) @ expm_unitary(H, t2), atol=1e-10)


@settings(max_examples=200, deadline=None)
@given(H=hermitian_strategy(2), t=st.floats(0, 4 * math.pi))
def test_qubit_closed_form_matches_series(H, t):
    assert np.max(np.abs(expm_unitary(H, t) - expm_series(H, t))) <= 1e-11


def test_eigh3_residual_and_orthonormality(rng):
    for _ in range(200):
        H = random_hermitian(rng, 3)
        w, V = eigh3(H)
        assert np.all(np.diff(w) >= 0)
        assert np.max(np.abs(H @ V - V * w)) <= 1e-12
        assert unitarity_defect(V) <= 1e-12


def test_lambda_spectrum_is_zero_and_plus_minus_omega():
    r = 1 / math.sqrt(2)
    H = 2.0 * np.array([[0, 0, r], [0, 0, r], [r, r, 0]])
    w, _ = eigh3(H)
    np.testing.assert_allclose(w, [-2, 0, 2], atol=1e-14)


def test_degenerate_spectrum_falls_back_to_series(monkeypatch):
    calls = []
    real_series = qmath.expm_series
    monkeypatch.setattr(qmath, "expm_series", lambda H, t: calls.append(1) or real_series(H, t))
    H = np.diag([1.0, 1.0 + 1e-12, 2.0])
    U = qmath.expm_unitary(H, 0.7)
    assert calls
    np.testing.assert_allclose(U, np.diag(np.exp(-1j * 0.7 * np.diag(H))), atol=1e-14)


def test_non_hermitian_error_names_worst_pair():
    H = np.zeros((3, 3), dtype=complex)
    H[0, 2] = 1.0
    H[2, 0] = 0.5
    with pytest.raises(ValidationError, match=r"H\[0,2\]"):
        expm_unitary(H, 1.0)


@pytest.mark.parametrize("t", [-1.0, math.nan, math.inf])
def test_bad_duration(t):
    with pytest.raises(ValidationError):
        expm_series(np.eye(2), t)


@pytest.mark.parametrize(
    "alpha,beta,expected",
    [
        (0.0, 1.3, [1, 0]),
        (math.pi, 0.0, [0, 1]),
        (math.pi / 2, math.pi / 2, [1 / math.sqrt(2), 1j / math.sqrt(2)]),
    ],
)
def test_state_from_bloch(alpha, beta, expected):
    np.testing.assert_allclose(state_from_bloch(BlochAngles(alpha, beta)), expected, atol=1e-15)


@pytest.mark.parametrize("alpha,beta", [(-0.1, 0), (3.5, 0), (1.0, 2 * math.pi), (1.0, -0.5), (math.nan, 0)])
def test_bloch_angles_out_of_range(alpha, beta):
    with pytest.raises(ValidationError):
        BlochAngles(alpha, beta)


def test_fidelity_examples():
    zero, one = np.array([1, 0]), np.array([0, 1])
    assert fidelity(zero, zero) == 1.0
    assert fidelity(zero, one) == 0.0
    tilted = np.array([math.cos(0.1), math.sin(0.1)])
    assert fidelity(zero, tilted) == pytest.approx(0.990033, abs=1e-6)
    assert fidelity(zero, tilted) == pytest.approx(math.cos(0.1) ** 2, abs=1e-15)


def test_fidelity_rejects_bad_inputs():
    with pytest.raises(ValidationError, match="dimension"):
        fidelity(np.array([1, 0]), np.array([1, 0, 0]))
    with pytest.raises(ValidationError, match="normalised"):
        fidelity(np.array([1, 1]), np.array([1, 0]))


@settings(max_examples=200, deadline=None)
@given(
    a1=st.floats(0, math.pi), b1=st.floats(0, 6.28), a2=st.floats(0, math.pi), b2=st.floats(0, 6.28),
    g1=st.floats(-10, 10), g2=st.floats(-10, 10),
)
def test_fidelity_symmetric_and_phase_blind(a1, b1, a2, b2, g1, g2):
    s, u = state_from_bloch(BlochAngles(a1, b1)), state_from_bloch(BlochAngles(a2, b2))
    f = fidelity(s, u)
    assert 0.0 <= f <= 1.0
    assert f == pytest.approx(fidelity(u, s), abs=1e-14)
    assert f == pytest.approx(fidelity(np.exp(1j * g1) * s, np.exp(1j * g2) * u), abs=1e-14)


def test_unitarity_defect_examples():
    assert unitarity_defect(np.eye(3)) == 0.0
    th, ph = math.pi / 3, 1.2
    U = np.array([[math.cos(th), -math.sin(th) * np.exp(-1j * ph)],
                  [-math.sin(th) * np.exp(1j * ph), -math.cos(th)]])
    assert unitarity_defect(U) <= 1e-15
    M = np.eye(2)
    M[0] *= 1.01
    assert unitarity_defect(M) >= 0.02


@pytest.mark.parametrize(
    "state,expected",
    [
        ([1, 0], [1, 0, 0]),
        ([0, 1], [0, 1, 0]),
        ([1 / math.sqrt(2), 1 / math.sqrt(2)], [1 / math.sqrt(2), 1 / math.sqrt(2), 0]),
    ],
)
def test_embed_qubit(state, expected):
    assert np.array_equal(embed_qubit(np.array(state)), np.array(expected, dtype=complex))
