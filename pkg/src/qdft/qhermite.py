"""Continuous q-Hermite, q^{-1}-Hermite, classical Hermite and Chebyshev polynomials.

Scalar or array arguments are accepted throughout; the heavy loops run in
``qdft._backend``. Results come back as complex (numpy scalar or array).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from qdft import _backend
from qdft.qseries import ParameterDomainError, RootOfUnityParams, q_binomial_row


def _check_degree(n):
    if n < 0 or int(n) != n:
        raise ParameterDomainError(f"degree must be a nonnegative integer, got {n!r}")


def _scalar(out):
    return complex(out) if np.ndim(out) == 0 else out


def _qhermite_coeffs(n, q):
    # coeffs[k] = 1 - q^k, k = 0..n-1
    qk = np.ones(n, dtype=complex)
    for k in range(1, n):
        qk[k] = qk[k - 1] * q
    return 1.0 - qk


def qhermite_recurrence(n: int, x, q):
    """H_n(x|q) from 2x H_n = H_{n+1} + (1 - q^n) H_{n-1}, H_0 = 1, H_{-1} = 0."""
    _check_degree(n)
    return _scalar(_backend.hermite_recurrence(x, _qhermite_coeffs(n, complex(q))))


def qhermite_fourier_sum(n: int, theta, q):
    """H_n(cos theta | q) as the finite Fourier series with Gaussian-binomial weights.

    ``theta`` may be complex.
    """
    _check_degree(n)
    return _scalar(_backend.exp_sum(theta, q_binomial_row(n, q)))


def qhermite_sin(n: int, theta, q):
    """H_n(sin theta | q) = i^n sum_k [n,k]_q (-1)^k exp(i (2k - n) theta)."""
    _check_degree(n)
    coeffs = q_binomial_row(n, q) * (-1.0) ** np.arange(n + 1)
    # exp(i(2k-n)theta) == exp(i(n-2k)(-theta))
    return _scalar((1j) ** n * _backend.exp_sum(-np.asarray(theta, dtype=complex), coeffs))


def qinv_hermite(n: int, x, q):
    """h_n(x|q) = i^{-n} H_n(i x | 1/q)."""
    _check_degree(n)
    if q == 0:
        raise ParameterDomainError("q = 0 has no inverse")
    return _scalar((1j) ** (-n) * np.asarray(qhermite_recurrence(n, 1j * np.asarray(x, dtype=complex), 1.0 / complex(q))))


def classical_hermite(n: int, x):
    """Physicists' Hermite polynomial H_n(x)."""
    _check_degree(n)
    coeffs = 2.0 * np.arange(n, dtype=float)
    return _scalar(_backend.hermite_recurrence(x, coeffs.astype(complex)))


def chebyshev_T(M: int, x):
    """T_M(x) by the three-term recurrence T_{k+1} = 2x T_k - T_{k-1}."""
    _check_degree(M)
    x = np.asarray(x, dtype=complex)
    if M == 0:
        return _scalar(np.ones_like(x))
    prev, cur = np.ones_like(x), x.copy()
    for _ in range(M - 1):
        prev, cur = cur, 2.0 * x * cur - prev
    return _scalar(cur)


def chebyshev_zeros(M: int) -> np.ndarray:
    """Zeros cos((2s+1) pi / (2M)), s = 0..M-1, in decreasing order."""
    if M < 1:
        raise ParameterDomainError(f"M must be >= 1, got {M}")
    s = np.arange(M)
    out = np.cos((2 * s + 1) * np.pi / (2 * M))
    # cos(pi/2) is 6e-17 in floating point; the middle zero of odd M is exactly 0
    if M % 2 == 1:
        out[M // 2] = 0.0
    return out


def identity_grid(points: int = 101) -> np.ndarray:
    return np.linspace(-1.0, 1.0, points)


def _require_coprime(params: RootOfUnityParams):
    if not params.coprime:
        raise ParameterDomainError(
            f"(j, M) = ({params.j}, {params.M}) are not coprime; the collapse to 2 T_M needs gcd(j, M) = 1")


def verify_chebyshev_identity(params: RootOfUnityParams, grid=None) -> float:
    """max |H_M(x|q) - 2 T_M(x)| over ``grid``."""
    _require_coprime(params)
    grid = identity_grid() if grid is None else np.asarray(grid, dtype=float)
    lhs = np.asarray(qhermite_recurrence(params.M, grid, params.q))
    rhs = 2.0 * np.asarray(chebyshev_T(params.M, grid))
    return float(np.max(np.abs(lhs - rhs)))


def verify_factorization(params: RootOfUnityParams, m: int, n: int, grid=None) -> float:
    """max |H_{mM+n}(x|q) - (2 T_M(x))^m H_n(x|q)| over ``grid``."""
    _require_coprime(params)
    _check_degree(m)
    if not 0 <= n <= params.M - 1:
        raise ParameterDomainError(f"n must lie in [0, M-1], got n={n}, M={params.M}")
    grid = identity_grid() if grid is None else np.asarray(grid, dtype=float)
    lhs = np.asarray(qhermite_recurrence(m * params.M + n, grid, params.q))
    rhs = (2.0 * np.asarray(chebyshev_T(params.M, grid))) ** m * np.asarray(qhermite_recurrence(n, grid, params.q))
    return float(np.max(np.abs(lhs - rhs)))


@dataclass
class WeightSolution:
    """Outcome of the discrete-orthogonality probe on the Chebyshev zeros."""

    nodes: np.ndarray
    weights: np.ndarray
    residual: float
    condition: float
    ok: bool
    gram: np.ndarray = field(repr=False)

    def residual_matrix(self) -> np.ndarray:
        """|sum_s w_s H_m(x_s) H_n(x_s)| for m != n; the diagonal holds the norms."""
        return self.gram


def solve_discrete_weights(params: RootOfUnityParams, tol: float = 1e-8,
                           max_condition: float = 1e12) -> WeightSolution:
    """Least-squares probe for complex weights making H_0..H_{M-1} orthogonal on the zeros of T_M.

    Solves sum_s w_s H_m(x_s) H_n(x_s) = 0 (m < n) together with sum_s w_s = 1.
    ``ok`` is False when the fit residual exceeds ``tol`` or the system is
    too ill-conditioned to trust; the diagnostics are returned either way.
    """
    _require_coprime(params)
    M = params.M
    x = chebyshev_zeros(M)
    H = np.array([np.asarray(qhermite_recurrence(k, x, params.q)) for k in range(M)])
    rows = [H[0] * H[0]]
    rhs = [1.0]
    for m in range(M):
        for n in range(m + 1, M):
            rows.append(H[m] * H[n])
            rhs.append(0.0)
    A = np.array(rows, dtype=complex)
    b = np.array(rhs, dtype=complex)
    w, *_ = np.linalg.lstsq(A, b, rcond=None)
    svals = np.linalg.svd(A, compute_uv=False)
    cond = float(svals[0] / svals[-1]) if svals[-1] > 0 else math.inf
    residual = float(np.max(np.abs(A @ w - b)))
    gram = (H * w) @ H.T
    ok = residual < tol and cond < max_condition
    return WeightSolution(nodes=x, weights=w, residual=residual, condition=cond, ok=ok, gram=gram)


def qtolimit_deviation(n: int, q: float, x: float) -> float:
    """|((1-q)/2)^{-n/2} H_n(x sqrt((1-q)/2) | q) - H_n(x)| for 0 < q < 1."""
    if not 0.0 < q < 1.0:
        raise ParameterDomainError(f"q must lie in (0, 1), got {q}")
    c = math.sqrt((1.0 - q) / 2.0)
    scaled = qhermite_recurrence(n, x * c, q) / c ** n
    return abs(scaled - classical_hermite(n, x))


def root_limit_deviation(n: int, j: int, M: int, x: float) -> float:
    """|alpha^{-n} H_n(sin(alpha x) | q_{j,M}) - H_n(x)|, which tends to 0 as M grows."""
    p = RootOfUnityParams.from_jm(j, M)
    scaled = qhermite_sin(n, p.alpha * x, p.q) / p.alpha ** n
    return abs(scaled - classical_hermite(n, x))


@dataclass(frozen=True)
class GrowthCertificate:
    """Envelope |f(t)| <= c0 * exp(-decay * t**2 + c1 * |t|)."""

    c0: float
    c1: float
    decay: float = 0.5

    def bound(self, t):
        t = np.abs(np.asarray(t, dtype=float))
        return self.c0 * np.exp(-self.decay * t * t + self.c1 * t)

    def peak(self) -> float:
        """Location of the envelope maximum; the envelope decreases beyond it."""
        return self.c1 / (2.0 * self.decay)


def hermite_growth(n: int) -> GrowthCertificate:
    """Certificate for t -> exp(-t^2/2) H_n(t).

    Uses |t|^k <= (k/e)^k exp(|t|) on the monomial expansion of H_n.
    """
    _check_degree(n)
    coef = np.polynomial.hermite.herm2poly([0] * n + [1])
    c0 = sum(abs(a) * (k / math.e) ** k if k else abs(a) for k, a in enumerate(coef))
    return GrowthCertificate(float(c0), 1.0 if n else 0.0)


def qhermite_sin_growth(n: int, lam, q) -> GrowthCertificate:
    """Certificate for t -> exp(-t^2/2) H_n(sin(lam t) | q).

    Each term of the finite Fourier series is bounded by |[n,k]_q| exp(n |Im lam| |t|).
    """
    _check_degree(n)
    c0 = float(np.sum(np.abs(q_binomial_row(n, q))))
    return GrowthCertificate(c0, n * abs(complex(lam).imag))
