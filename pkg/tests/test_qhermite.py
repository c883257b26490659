import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qdft.qhermite import (
    GrowthCertificate,
    chebyshev_T,
    chebyshev_zeros,
    classical_hermite,
    hermite_growth,
    qhermite_fourier_sum,
    qhermite_recurrence,
    qhermite_sin,
    qhermite_sin_growth,
    qinv_hermite,
    qtolimit_deviation,
    root_limit_deviation,
    solve_discrete_weights,
    verify_chebyshev_identity,
    verify_factorization,
)
from qdft.qseries import ParameterDomainError, RootOfUnityParams


def test_recurrence_low_degrees():
    x, q = 0.4, 0.3
    assert qhermite_recurrence(0, x, q) == 1
    assert qhermite_recurrence(1, x, q) == pytest.approx(2 * x)
    assert qhermite_recurrence(2, x, q) == pytest.approx(4 * x * x - (1 - q))
    assert qhermite_recurrence(3, x, q) == pytest.approx(8 * x ** 3 - 2 * x * (2 - q - q * q))


def test_recurrence_at_minus_one():
    # q = -1: H_2 = 4x^2 - 2, H_3 = 2x H_2 - (1 - 1) H_1 = 8x^3 - 4x
    x = 0.7
    assert qhermite_recurrence(3, x, -1) == pytest.approx(8 * x ** 3 - 4 * x)


def test_recurrence_cube_root():
    q = cmath.exp(2j * math.pi / 3)
    x = 0.25
    # M = 3 collapses to 2 T_3 = 8x^3 - 6x
    assert abs(qhermite_recurrence(3, x, q) - (8 * x ** 3 - 6 * x)) < 1e-14


def test_fourier_sum_value():
    # n=2, theta=0, q=0.5: 1 + (1 + q) + 1
    assert qhermite_fourier_sum(2, 0.0, 0.5) == pytest.approx(3.5)


@settings(max_examples=50, deadline=None)
@given(n=st.integers(0, 15), theta=st.floats(-3, 3),
       q=st.complex_numbers(max_magnitude=0.99))
def test_cos_form_matches_recurrence(n, theta, q):
    lhs = qhermite_fourier_sum(n, theta, q)
    rhs = qhermite_recurrence(n, math.cos(theta), q)
    assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(rhs))


@pytest.mark.parametrize("n", range(9))
def test_sin_form_is_shifted_cos_form(n):
    theta = np.linspace(-2, 2, 9) + 0.3j
    q = 0.4 - 0.5j
    a = qhermite_sin(n, theta, q)
    b = qhermite_fourier_sum(n, np.pi / 2 - theta, q)
    assert np.max(np.abs(a - b)) < 1e-11


@settings(max_examples=50, deadline=None)
@given(n=st.integers(0, 12), x=st.floats(-1, 1), q=st.complex_numbers(max_magnitude=1.0))
def test_parity(n, x, q):
    a = qhermite_recurrence(n, -x, q)
    b = (-1) ** n * qhermite_recurrence(n, x, q)
    assert abs(a - b) <= 1e-10 * max(1.0, abs(b))


def test_qinv_degree_two():
    x = np.array([0.0, 0.5, 2.0])
    # h_2(x|q) = 4x^2 + 1 - 1/q
    np.testing.assert_allclose(qinv_hermite(2, x, 0.5), 4 * x * x - 1, rtol=1e-14, atol=1e-15)
    with pytest.raises(ParameterDomainError):
        qinv_hermite(2, 0.1, 0)


def test_classical_hermite():
    assert classical_hermite(3, 1.0) == pytest.approx(-4.0)
    x = np.linspace(-2, 2, 7)
    ref = np.polynomial.hermite.hermval(x, [0] * 6 + [1])
    np.testing.assert_allclose(classical_hermite(6, x).real, ref, rtol=1e-13)


def test_chebyshev():
    assert abs(chebyshev_T(5, math.cos(math.pi / 10))) < 1e-15
    x = np.linspace(-1, 1, 11)
    np.testing.assert_allclose(chebyshev_T(7, x).real, np.cos(7 * np.arccos(x)), atol=1e-13)


def test_chebyshev_zeros():
    np.testing.assert_allclose(chebyshev_zeros(2), [math.sqrt(0.5), -math.sqrt(0.5)])
    z = chebyshev_zeros(3)
    assert z[1] == 0.0
    assert np.all(np.diff(z) < 0)
    with pytest.raises(ParameterDomainError):
        chebyshev_zeros(0)


@pytest.mark.parametrize("M", range(2, 13))
def test_chebyshev_collapse(M):
    for j in range(1, M):
        if math.gcd(j, M) == 1:
            assert verify_chebyshev_identity(RootOfUnityParams.from_jm(j, M)) < 1e-10


@pytest.mark.parametrize("j,M", [(1, 3), (1, 4), (2, 5), (5, 12)])
def test_factorization(j, M):
    p = RootOfUnityParams.from_jm(j, M)
    for m in range(4):
        for n in range(M):
            assert verify_factorization(p, m, n) < 1e-10


def test_non_coprime_rejected():
    p = RootOfUnityParams.from_jm(2, 4)
    with pytest.raises(ParameterDomainError):
        verify_chebyshev_identity(p)
    with pytest.raises(ParameterDomainError):
        solve_discrete_weights(p)
    with pytest.raises(ParameterDomainError):
        verify_factorization(RootOfUnityParams.from_jm(1, 4), 1, 4)


def test_weights_m2():
    sol = solve_discrete_weights(RootOfUnityParams.from_jm(1, 2))
    np.testing.assert_allclose(sol.weights, [0.5, 0.5], atol=1e-14)
    assert sol.ok


@pytest.mark.parametrize("j,M", [(1, 3), (1, 5), (3, 7), (1, 12)])
def test_weights_orthogonalize(j, M):
    sol = solve_discrete_weights(RootOfUnityParams.from_jm(j, M))
    assert sol.ok
    g = sol.residual_matrix()
    off = g - np.diag(np.diag(g))
    assert np.max(np.abs(off)) < 1e-8
    assert sum(sol.weights) == pytest.approx(1.0)


@pytest.mark.parametrize("n", range(3, 6))
@pytest.mark.parametrize("x", [0.3, 0.7, 1.1])
def test_real_limit_decreases(n, x):
    d = [qtolimit_deviation(n, q, x) for q in (0.9, 0.99, 0.999)]
    assert d[0] > d[1] > d[2]


def test_real_limit_exact_low_degree():
    for n in range(3):
        assert qtolimit_deviation(n, 0.9, 0.7) < 1e-12


@pytest.mark.parametrize("n", range(1, 6))
def test_root_limit_decreases(n):
    for x in (0.3, 0.7, 1.1):
        d = [root_limit_deviation(n, 1, M, x) for M in (8, 16, 32)]
        assert d[0] > d[1] > d[2]


def test_growth_certificates_hold():
    t = np.linspace(-12, 12, 2001)
    for n in range(9):
        c = hermite_growth(n)
        vals = np.abs(np.exp(-t * t / 2) * classical_hermite(n, t))
        assert np.all(vals <= c.bound(t) * (1 + 1e-12))
        p = RootOfUnityParams.from_jm(1, 3)
        c = qhermite_sin_growth(n, p.alpha, p.q)
        vals = np.abs(np.exp(-t * t / 2) * qhermite_sin(n, p.alpha * t, p.q))
        assert np.all(vals <= c.bound(t) * (1 + 1e-12))


def test_certificate_peak():
    assert GrowthCertificate(1.0, 3.0).peak() == 3.0
    assert GrowthCertificate(1.0, 3.0, decay=0.25).peak() == 6.0
