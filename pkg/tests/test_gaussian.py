import math

import numpy as np
import pytest

import oracles
from rabi2 import (
    GaussianPacket,
    NumericError,
    ParameterError,
    TruncationError,
    displaced_h,
    hermite_functions,
    mel_p2,
    mel_x,
    mel_x2,
    overlap,
    project_to_fock,
)


def test_packet_evaluates_shape_formula():
    p = GaussianPacket(coeff=0.7, eps=1.8, center=-0.4)
    x = np.linspace(-3, 3, 7)
    expected = 0.7 * 1.8**0.25 * math.pi**-0.25 * np.exp(-1.8 * (x + 0.4) ** 2 / 2)
    np.testing.assert_allclose(p(x), expected, rtol=1e-15)


def test_packet_validation():
    with pytest.raises(ParameterError):
        GaussianPacket(1.0, 0.0, 0.0)
    with pytest.raises(ParameterError):
        GaussianPacket(1.0, -2.0, 0.0)
    with pytest.raises(ParameterError):
        GaussianPacket(1.0, float("nan"), 0.0)
    with pytest.raises(ParameterError):
        GaussianPacket(float("inf"), 1.0, 0.0)


def test_self_overlap_is_one():
    for eps, c in [(1.0, 0.0), (0.3, 2.0), (2.7, -1.3)]:
        p = GaussianPacket(1.0, eps, c)
        assert math.isclose(overlap(p, p), 1.0, rel_tol=1e-14)


def test_overlap_symmetric():
    p = GaussianPacket(1.0, 0.8, -1.1)
    q = GaussianPacket(1.0, 2.2, 0.9)
    assert overlap(p, q) == overlap(q, p)


def test_matrix_elements_against_quadrature_spot():
    p = GaussianPacket(1.0, 1.4, 0.6)
    q = GaussianPacket(1.0, 0.7, -0.9)
    a, u, b, v = 1.4, 0.6, 0.7, -0.9
    assert math.isclose(overlap(p, q), oracles.quad_overlap(a, u, b, v), abs_tol=1e-12)
    assert math.isclose(mel_x(p, q), oracles.quad_x(a, u, b, v), abs_tol=1e-12)
    assert math.isclose(mel_x2(p, q), oracles.quad_x2(a, u, b, v), abs_tol=1e-12)
    assert math.isclose(mel_p2(p, q), oracles.quad_p2(a, u, b, v), abs_tol=1e-12)


def test_displaced_h_known_values():
    # vacuum packet in its own well: the zero-point energy omega/2
    vac = GaussianPacket(1.0, 1.0, 0.0)
    assert math.isclose(displaced_h(vac, vac, 0.0, 1.0), 0.5, rel_tol=1e-14)
    # squeezed packet, undisplaced well: (eps + 1/eps)/4; quadrature gives 0.625
    sq = GaussianPacket(1.0, 2.0, 0.0)
    assert math.isclose(displaced_h(sq, sq, 0.0, 1.0), 0.625, rel_tol=1e-14)
    assert math.isclose(
        oracles.quad_displaced_h(2.0, 0.0, 2.0, 0.0, 0.0, 1.0), 0.625, abs_tol=1e-12
    )
    # displacing the well by -center of a unit packet restores omega/2 + nothing
    p = GaussianPacket(1.0, 1.0, 1.5)
    assert math.isclose(displaced_h(p, p, -1.5, 2.0), 1.0, rel_tol=1e-14)


def test_displaced_h_overflow_guard():
    p = GaussianPacket(1.0, 1.0, 0.0)
    with pytest.raises(NumericError):
        displaced_h(p, p, 1e200, 1.0)


def test_project_vacuum():
    vac = GaussianPacket(1.0, 1.0, 0.0)
    f = project_to_fock(vac, 8)
    expected = np.zeros(9)
    expected[0] = 1.0
    np.testing.assert_allclose(f, expected, atol=1e-15)


def test_project_scales_with_coeff():
    p1 = project_to_fock(GaussianPacket(1.0, 1.3, 0.7), 20)
    p3 = project_to_fock(GaussianPacket(3.0, 1.3, 0.7), 20)
    np.testing.assert_allclose(p3, 3.0 * p1, rtol=1e-15)


def test_project_reflection_parity():
    # phi(-x) picks up (-1)^n in the oscillator basis
    plus = project_to_fock(GaussianPacket(1.0, 0.9, 1.2), 24)
    minus = project_to_fock(GaussianPacket(1.0, 0.9, -1.2), 24)
    signs = (-1.0) ** np.arange(25)
    np.testing.assert_allclose(minus, signs * plus, atol=1e-15)


def test_project_against_quadrature():
    from scipy.integrate import quad

    p = GaussianPacket(1.0, 1.7, 1.3)
    f = project_to_fock(p, 12)
    for n in range(13):
        val = quad(
            lambda x: p(x) * float(hermite_functions(np.array([x]), n)[n, 0]),
            -9.0,
            11.0,
            limit=200,
        )[0]
        assert math.isclose(f[n], val, abs_tol=1e-12)


def test_project_completeness():
    # sum_n |<n|phi>|^2 -> coeff^2
    p = GaussianPacket(0.8, 2.1, -1.6)
    f = project_to_fock(p, 160)
    assert math.isclose(float(f @ f), 0.64, rel_tol=1e-12)


def test_project_validation():
    p = GaussianPacket(1.0, 1.0, 0.0)
    with pytest.raises(ParameterError):
        project_to_fock(p, -1)
    with pytest.raises(ParameterError):
        project_to_fock(p, 2.5)
    with pytest.raises(TruncationError):
        project_to_fock(p, 10**9)


def test_hermite_functions_match_polynomials():
    from numpy.polynomial import hermite

    x = np.linspace(-2.5, 2.5, 11)
    h = hermite_functions(x, 6)
    for n in range(7):
        coeffs = np.zeros(n + 1)
        coeffs[n] = 1.0
        norm = (2.0**n * math.factorial(n) * math.sqrt(math.pi)) ** -0.5
        expected = norm * hermite.hermval(x, coeffs) * np.exp(-x * x / 2)
        np.testing.assert_allclose(h[n], expected, rtol=1e-12, atol=1e-13)


def test_hermite_functions_orthonormal():
    x = np.linspace(-12, 12, 4001)
    h = hermite_functions(x, 10)
    gram = h @ h.T * (x[1] - x[0])
    np.testing.assert_allclose(gram, np.eye(11), atol=1e-8)
