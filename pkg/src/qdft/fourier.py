"""The finite Fourier transform and a quadrature oracle for the integral transform.

The quadrature side never touches the closed-form right-hand sides it is
checked against: integrands are sampled pointwise and summed.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable

import gmpy2
import numpy as np

from qdft import _backend
from qdft.qhermite import (
    GrowthCertificate,
    classical_hermite,
    hermite_growth,
    qhermite_sin,
    qhermite_sin_growth,
    qinv_hermite,
)
from qdft.qseries import ParameterDomainError, RealQParams, RootOfUnityParams, q_binomial_row

ENVELOPE_TOL = 1e-16
SQRT_2PI = math.sqrt(2.0 * math.pi)


class EnvelopeError(ValueError):
    """The integrand is not negligible at the ends of the quadrature window."""


@dataclass(frozen=True)
class DftOperator:
    """Unitary matrix with entries exp(2 pi i r s / N) / sqrt(N)."""

    N: int
    matrix: np.ndarray = field(repr=False)

    def __matmul__(self, v):
        return apply_dft(self, v)


def dft_matrix(N: int) -> DftOperator:
    if N < 1 or int(N) != N:
        raise ParameterDomainError(f"N must be a positive integer, got {N!r}")
    roots = np.exp(2j * np.pi * np.arange(N) / N)
    idx = np.outer(np.arange(N), np.arange(N)) % N
    mat = roots[idx] / math.sqrt(N)
    mat.setflags(write=False)
    return DftOperator(N, mat)


def apply_dft(op: DftOperator, v) -> np.ndarray:
    """Direct O(N^2) evaluation of the finite Fourier transform of ``v``."""
    values = getattr(v, "values", v)
    values = np.asarray(values, dtype=complex)
    if values.shape != (op.N,):
        raise ValueError(f"vector of length {values.shape} does not match N={op.N}")
    return _backend.dft_direct(values)


@dataclass(frozen=True)
class QuadratureSpec:
    """Quadrature on [-half_width, half_width].

    ``envelope`` is an optional growth certificate for the integrand; when
    given, the window is rejected unless the envelope at its ends is below
    ``ENVELOPE_TOL``.
    """

    half_width: float
    points: int = 4096
    rule: str = "trapezoid"
    envelope: GrowthCertificate | None = None

    def __post_init__(self):
        if self.half_width <= 0 or self.points < 2:
            raise ValueError("need half_width > 0 and at least two points")
        if self.rule not in ("trapezoid", "gauss-legendre"):
            raise ValueError(f"unknown rule {self.rule!r}")
        if self.envelope is not None:
            edge = float(self.envelope.bound(self.half_width))
            if not edge < ENVELOPE_TOL:
                raise EnvelopeError(
                    f"integrand envelope {edge:.3e} at |x| = {self.half_width} exceeds {ENVELOPE_TOL:g}")

    @classmethod
    def for_envelope(cls, cert: GrowthCertificate, floor: float = 8.0, step: float = 0.01,
                     rule: str = "trapezoid") -> "QuadratureSpec":
        """Smallest window >= ``floor`` on which ``cert`` is below ``ENVELOPE_TOL``."""
        L = max(floor, cert.peak() + 1.0)
        while float(cert.bound(L)) >= ENVELOPE_TOL:
            L += 0.5
        points = max(4096, int(math.ceil(2.0 * L / step)) + 1)
        return cls(L, points, rule, cert)

    def nodes_weights(self):
        L = self.half_width
        if self.rule == "trapezoid":
            x = np.linspace(-L, L, self.points)
            w = np.full(self.points, x[1] - x[0])
            w[0] = w[-1] = 0.5 * (x[1] - x[0])
            return x, w
        # composite 16-point Gauss-Legendre on equal panels
        order = 16
        panels = max(1, self.points // order)
        t, tw = np.polynomial.legendre.leggauss(order)
        edges = np.linspace(-L, L, panels + 1)
        half = 0.5 * (edges[1:] - edges[:-1])
        mid = 0.5 * (edges[1:] + edges[:-1])
        x = (mid[:, None] + half[:, None] * t[None, :]).ravel()
        w = (half[:, None] * tw[None, :]).ravel()
        return x, w


def default_spec(n: int, lam=0.0, cert: GrowthCertificate | None = None) -> QuadratureSpec:
    """Trapezoid window at least max(8, 3 (n+1) max(1, |Im lam|)), widened to meet the envelope."""
    floor = max(8.0, 3.0 * (n + 1) * max(1.0, abs(complex(lam).imag)))
    if cert is None:
        cert = GrowthCertificate(1.0, 0.0)
    return QuadratureSpec.for_envelope(cert, floor=floor)


def integral_ft(f: Callable, y, spec: QuadratureSpec, sign: int = 1):
    """(1/sqrt(2 pi)) * integral of exp(sign * i x y) f(x) dx over the window.

    ``f`` must accept a real array; ``y`` may be a scalar or an array, real or complex.
    """
    x, w = spec.nodes_weights()
    fw = np.asarray(f(x), dtype=complex) * w
    ys = np.atleast_1d(np.asarray(y, dtype=complex))
    out = np.exp(sign * 1j * np.outer(ys, x)) @ fw / SQRT_2PI
    return complex(out[0]) if np.ndim(y) == 0 else out


def integral_ft_mp(f, y, spec: QuadratureSpec, dps: int, sign: int = 1):
    """Trapezoid quadrature of :func:`integral_ft` carried out in ``dps`` decimal digits.

    ``f`` takes a single gmpy2 ``mpfr`` and returns a gmpy2 number. Nodes are
    generated in the working precision: rounding them to doubles perturbs a
    strongly cancelling sum by (peak slope) * ulp, which is what this path avoids.
    """
    if spec.rule != "trapezoid":
        raise ValueError("extended-precision quadrature supports the trapezoid rule only")
    ys = np.atleast_1d(np.asarray(y, dtype=complex))
    P = spec.points
    with gmpy2.context(gmpy2.get_context(), precision=int(math.ceil(dps * 3.33))):
        L = gmpy2.mpfr(spec.half_width)
        h = 2 * L / (P - 1)
        fw = [f(-L + i * h) for i in range(P)]
        fw[0] /= 2
        fw[-1] /= 2
        norm = h / gmpy2.sqrt(2 * gmpy2.const_pi())
        out = np.empty(ys.shape[0], dtype=complex)
        for i, yv in enumerate(ys):
            iy = gmpy2.mpc(0, sign) * gmpy2.mpc(complex(yv))
            step = gmpy2.exp(iy * h)
            kern = gmpy2.exp(-iy * L)
            acc = gmpy2.mpc(0)
            for v in fw:
                acc += kern * v
                kern *= step
            out[i] = complex(acc * norm)
    return complex(out[0]) if np.ndim(y) == 0 else out


def working_digits(cert: GrowthCertificate, tol: float = 1e-8) -> int | None:
    """Digits needed so the integrand's peak, rounded, stays below ``tol``; None if double suffices."""
    peak = cert.c0 * math.exp(cert.c1 * cert.c1 / (4.0 * cert.decay))
    if peak * 1e-16 < tol * 1e-2:
        return None
    return 20 + int(math.ceil(math.log10(peak)))


def _qsin_mp(n, lam, q):
    """exp(-x^2/2) H_n(sin(lam x) | q) via the three-term recurrence in gmpy2."""
    lam = gmpy2.mpc(complex(lam))
    q = gmpy2.mpc(complex(q))

    def f(x):
        z = gmpy2.sin(lam * x)
        prev, cur, qk = gmpy2.mpc(0), gmpy2.mpc(1), gmpy2.mpc(1)
        for _ in range(n):
            prev, cur = cur, 2 * z * cur - (1 - qk) * prev
            qk *= q
        return gmpy2.exp(-x * x / 2) * cur
    return f


def _transform(n, lam, q, ys, spec, sign=1, scale=1.0, dps=None):
    """Quadrature transform of scale * exp(-x^2/2) H_n(sin(lam x)|q), precision chosen from the envelope."""
    if dps is None:
        dps = working_digits(spec.envelope) if spec.envelope is not None else None
    if dps is None:
        return scale * integral_ft(_qsin_integrand(n, lam, q), ys, spec, sign=sign)
    return scale * integral_ft_mp(_qsin_mp(n, lam, q), ys, spec, dps, sign=sign)


def _gauss(y):
    y = np.asarray(y, dtype=complex)
    return np.exp(-0.5 * y * y)


def hermite_ft_deviation(n: int, y_samples, spec: QuadratureSpec | None = None) -> float:
    """Deviation of the quadrature transform of exp(-x^2/2) H_n(x) from i^n exp(-y^2/2) H_n(y)."""
    spec = spec or default_spec(n, cert=hermite_growth(n))
    ys = np.asarray(y_samples, dtype=float)
    lhs = integral_ft(lambda x: _gauss(x) * classical_hermite(n, x), ys, spec)
    rhs = (1j) ** n * _gauss(ys) * classical_hermite(n, ys)
    return float(np.max(np.abs(lhs - rhs)))


def _qsin_spec(n, lam, q, spec):
    if spec is not None:
        return spec
    return default_spec(n, lam, qhermite_sin_growth(n, lam, q))


def _qsin_integrand(n, lam, q):
    return lambda x: _gauss(x) * qhermite_sin(n, lam * x, q)


def qsin_transform_closed_form(n: int, lam, q, y):
    """Closed-form transform of exp(-x^2/2) H_n(sin(lam x) | q) as a finite sum in y."""
    lam, q = complex(lam), complex(q)
    y = np.asarray(y, dtype=complex)
    qi = 1.0 / q
    base = qi * cmath.exp(-2.0 * lam * lam)
    binom = q_binomial_row(n, qi)
    acc = np.zeros_like(y)
    for k in range(n + 1):
        acc += binom[k] * base ** (k * (k - n)) * (-1) ** k * np.exp(-(2 * k - n) * lam * y)
    return (1j) ** n * cmath.exp(-0.5 * n * n * lam * lam) * _gauss(y) * acc


def verify_qsin_transform(n: int, lam, q, y_samples, spec: QuadratureSpec | None = None) -> float:
    """Quadrature transform of exp(-x^2/2) H_n(sin(lam x)|q) against the explicit finite sum."""
    if q == 0 or q == 1:
        raise ParameterDomainError("q must differ from 0 and 1")
    spec = _qsin_spec(n, lam, q, spec)
    ys = np.asarray(y_samples, dtype=complex)
    lhs = _transform(n, lam, q, ys, spec)
    return float(np.max(np.abs(lhs - qsin_transform_closed_form(n, lam, q, ys))))


def verify_self_dual(n: int, lam, q, y_samples, spec: QuadratureSpec | None = None) -> float:
    """Self-dual case q = exp(-2 lam^2): transform equals q^{n^2/4} e^{-y^2/2} H_n(sin(i lam y) | 1/q).

    q^{n^2/4} is taken as exp(-n^2 lam^2 / 2), i.e. on the branch log q = -2 lam^2.
    """
    lam, q = complex(lam), complex(q)
    if abs(q - cmath.exp(-2.0 * lam * lam)) > 1e-12 * max(1.0, abs(q)):
        raise ParameterDomainError(f"q = {q} is not exp(-2 lam^2) for lam = {lam}")
    spec = _qsin_spec(n, lam, q, spec)
    ys = np.asarray(y_samples, dtype=complex)
    lhs = _transform(n, lam, q, ys, spec)
    rhs = cmath.exp(-0.5 * n * n * lam * lam) * _gauss(ys) * qhermite_sin(n, 1j * lam * ys, 1.0 / q)
    return float(np.max(np.abs(lhs - rhs)))


def verify_real_branch(n: int, params: RealQParams, y_samples, spec: QuadratureSpec | None = None) -> float:
    """Real 0 < q < 1: right side i^n q^{n^2/4} e^{-y^2/2} h_n(sinh(kappa y) | q)."""
    k, q = params.kappa, params.q
    spec = _qsin_spec(n, k, q, spec)
    ys = np.asarray(y_samples, dtype=float)
    lhs = _transform(n, k, q, ys, spec)
    rhs = (1j) ** n * q ** (n * n / 4.0) * _gauss(ys) * qinv_hermite(n, np.sinh(k * ys), q)
    return float(np.max(np.abs(lhs - rhs)))


def verify_root_branch(n: int, params: RootOfUnityParams, y_samples, spec: QuadratureSpec | None = None) -> float:
    """q = q_{j,M}: right side q^{n^2/4} e^{-y^2/2} H_n(sin(conj(alpha) y) | 1/q)."""
    a, q = params.alpha, params.q
    spec = _qsin_spec(n, a, q, spec)
    ys = np.asarray(y_samples, dtype=float)
    lhs = _transform(n, a, q, ys, spec)
    qn = cmath.exp(n * n / 4.0 * params.log_q)
    rhs = qn * _gauss(ys) * qhermite_sin(n, a.conjugate() * ys, q.conjugate())
    return float(np.max(np.abs(lhs - rhs)))


def verify_root_inversion(n: int, params: RootOfUnityParams, y_samples, spec: QuadratureSpec | None = None) -> float:
    """Inverse transform of the root-of-unity image recovers the original function.

    The conjugate of the forward relation: transforming
    q^{n^2/4} e^{-x^2/2} H_n(sin(conj(alpha) x) | 1/q) with kernel exp(-i x y)
    must give e^{-y^2/2} H_n(sin(alpha y) | q).
    """
    a, q = params.alpha, params.q
    spec = _qsin_spec(n, a.conjugate(), q.conjugate(), spec)
    qn = cmath.exp(n * n / 4.0 * params.log_q)
    ys = np.asarray(y_samples, dtype=float)
    lhs = _transform(n, a.conjugate(), q.conjugate(), ys, spec, sign=-1, scale=qn)
    rhs = _gauss(ys) * qhermite_sin(n, a * ys, q)
    return float(np.max(np.abs(lhs - rhs)))


def verify_cos_power(m: int, j: int, M: int, y_samples, spec: QuadratureSpec | None = None) -> float:
    """Transform of cos^m(M pi/2 - sqrt(pi j M) e^{-i pi/4} x) e^{-x^2/2}.

    Expected: i^{m^2 j M} e^{-y^2/2} cos^m(M pi/2 - sqrt(pi j M) e^{i pi/4} y).
    """
    if math.gcd(j, M) != 1:
        raise ParameterDomainError(f"(j, M) = ({j}, {M}) must be coprime")
    if m < 0:
        raise ParameterDomainError(f"m must be >= 0, got {m}")
    b = math.sqrt(math.pi * j * M)
    bm = b * cmath.exp(-0.25j * math.pi)
    bp = b * cmath.exp(0.25j * math.pi)
    if spec is None:
        cert = GrowthCertificate(1.0, m * abs(bm.imag))
        spec = QuadratureSpec.for_envelope(cert, floor=8.0)
    ys = np.asarray(y_samples, dtype=float)
    dps = working_digits(spec.envelope) if spec.envelope is not None else None
    if dps is None:
        lhs = integral_ft(lambda x: np.cos(M * math.pi / 2 - bm * x) ** m * _gauss(x), ys, spec)
    else:
        def f(x):
            # constants rebuilt per call so they carry the caller's working precision
            pi = gmpy2.const_pi()
            bm_mp = gmpy2.sqrt(pi * j * M) * gmpy2.exp(gmpy2.mpc(0, -1) * pi / 4)
            return gmpy2.cos(M * pi / 2 - bm_mp * x) ** m * gmpy2.exp(-x * x / 2)
        lhs = integral_ft_mp(f, ys, spec, dps)
    rhs = (1j) ** ((m * m * j * M) % 4) * _gauss(ys) * np.cos(M * math.pi / 2 - bp * ys) ** m
    return float(np.max(np.abs(lhs - rhs)))
