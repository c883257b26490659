import cmath
import math

import numpy as np
import pytest

from qdft.eigen import (
    PI_OVER_4,
    PI_OVER_8,
    EigenCandidate,
    ResidualError,
    combine,
    i_power,
    independence_report,
    mehta_eigencheck,
    mehta_indices,
    phase_factor,
    q_eigenvectors,
    residual,
)
from qdft.fourier import apply_dft, dft_matrix
from qdft.periodize import PeriodizedVector, f_q_vector, g_q_vector, q_prefactor
from qdft.qseries import ParameterDomainError, RealQParams, RootOfUnityParams


def test_i_power():
    assert [i_power(n) for n in range(6)] == [1, 1j, -1, -1j, 1, 1j]


def test_phase_factor():
    assert phase_factor(2) == pytest.approx(1j)
    assert phase_factor(4, PI_OVER_8) == pytest.approx(1j)
    with pytest.raises(ValueError):
        phase_factor(1, "other")


def test_combine_values():
    v = combine([1, 2], [3, 4], 2, 1)
    np.testing.assert_array_equal(v.values, [7, 10])
    w = combine(np.array([1, 2]), np.array([3, 4]), 2, 1, sign=-1)
    np.testing.assert_array_equal(w.values, [-5, -6])
    with pytest.raises(ValueError):
        combine([1], [1, 2], 1, 1)
    with pytest.raises(ValueError):
        combine([1], [1], 1, 1, sign=2)


@pytest.mark.parametrize("N", [5, 8])
def test_combine_on_genuine_pair(N):
    # Phi f = a^2 g and Phi g = b^2 f, with a^2 = q^{n^2/4}, b^2 = (-1)^n q^{-n^2/4}
    p = RootOfUnityParams.from_jm(1, 4)
    for n in range(5):
        f, g = f_q_vector(n, N, p), g_q_vector(n, N, p)
        a = q_prefactor(p, n * n / 8.0)
        b = (1j) ** n * q_prefactor(p, -n * n / 8.0)
        for sign in (1, -1):
            v = combine(f, g, a, b, sign)
            lam = sign * a * b
            assert residual(v, lam) < 1e-10


def test_candidate_validation():
    v = PeriodizedVector(1, [1.0])
    c = EigenCandidate.build(v, 1, "unit")
    assert c.residual < 1e-15 and c.recompute_residual() == c.residual
    with pytest.raises(ValueError):
        EigenCandidate.build(v, 2, "bad")


def test_residual_of_zero_vector():
    assert residual(np.zeros(3), 1) == 0.0


def test_mehta_indices():
    assert mehta_indices(5) == [0, 1, 2, 3, 4]
    assert mehta_indices(4) == [0, 1, 2, 4]
    assert mehta_indices(1) == [0]
    with pytest.raises(ParameterDomainError):
        mehta_indices(0)


@pytest.mark.parametrize("N", [1, 2, 5, 8, 9, 16])
def test_mehta_residuals(N):
    cands = mehta_eigencheck(N)
    assert len(cands) == N
    assert max(c.residual for c in cands) < 1e-9


def test_q0_has_no_imaginary_part():
    F, G = q_eigenvectors(0, 5, RootOfUnityParams.from_jm(1, 3))
    assert np.max(np.abs(G.vector.values)) < 1e-15
    assert F.residual < 1e-13


@pytest.mark.parametrize("j,M", [(1, 3), (1, 4)])
@pytest.mark.parametrize("N", [5, 8])
def test_pi4_phase_eigenvectors(j, M, N):
    p = RootOfUnityParams.from_jm(j, M)
    for n in range(7):
        F, G = q_eigenvectors(n, N, p)
        assert F.eigenvalue == i_power(n) and G.eigenvalue == -i_power(n)
        assert F.residual < 1e-7 and G.residual < 1e-7
        assert np.all(F.vector.values.imag == 0) and np.all(G.vector.values.imag == 0)
        # F + iG rebuilds the rotated vector
        f = f_q_vector(n, N, p)
        z = phase_factor(n) * q_prefactor(p, -n * n / 8.0) * f.values
        assert np.max(np.abs(F.vector.values + 1j * G.vector.values - z)) < 1e-13 * max(1, np.abs(z).max())


def test_pi8_phase_fails_visibly():
    F, G = q_eigenvectors(1, 5, RootOfUnityParams.from_jm(1, 3), convention=PI_OVER_8)
    assert max(F.residual, G.residual) > 1e-2


def test_threshold_raises():
    with pytest.raises(ResidualError):
        q_eigenvectors(2, 8, RootOfUnityParams.from_jm(1, 4), threshold=0.0)


def test_real_q_rejected():
    with pytest.raises(ParameterDomainError):
        q_eigenvectors(1, 5, RealQParams.from_q(0.5))


@pytest.mark.parametrize("N", [5, 6, 16])
def test_mehta_full_rank(N):
    rep = independence_report(mehta_eigencheck(N))
    rank, sv = rep
    assert rank == N
    assert sv > 1e-8


def test_mehta_not_orthogonal():
    assert independence_report(mehta_eigencheck(5)).max_offdiag_gram > 1e-6


def test_independence_of_dependent_set():
    v = PeriodizedVector(3, [1, 2, 3])
    rep = independence_report([v, v])
    assert rep.rank == 1
    assert rep.max_offdiag_gram == pytest.approx(1.0)
    with pytest.raises(ValueError):
        independence_report([])
    with pytest.raises(ValueError):
        independence_report([v, PeriodizedVector(2, [1, 2])])
