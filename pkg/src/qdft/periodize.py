"""Periodization onto the lattice sqrt(2 pi / N) (kN + r) and the vectors built from it.

The lattice sum over k is infinite. It is truncated at |k| <= K with K
chosen from a growth certificate of the summand, so every vector carries a
rigorous bound on the discarded tail.
"""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from qdft.fourier import QuadratureSpec, apply_dft, dft_matrix, integral_ft
from qdft.qhermite import (
    GrowthCertificate,
    classical_hermite,
    hermite_growth,
    qhermite_sin,
    qhermite_sin_growth,
    qinv_hermite,
)
from qdft.qseries import ParameterDomainError, RealQParams, RootOfUnityParams

UNIT_ROUNDOFF = 2.0 ** -53
PARITY_TOL = 1e-10
# quadrature samples are trusted only where the envelope exceeds this multiple of c0
NOISE_FLOOR = 1e-12


class TruncationError(RuntimeError):
    """The lattice sum could not be certified within the allowed window."""


class CertificateError(TruncationError):
    """A sampled summand exceeded its claimed growth envelope."""


@dataclass(frozen=True)
class TruncationPolicy:
    """Stopping rule for the lattice sum.

    ``eps`` is relative to the scale max_r sum_k |f(t_{k,r})|: the certified
    tail plus the summation rounding bound must not exceed eps * scale.
    """

    eps: float = 1e-14
    k_max: int = 64
    adaptive: bool = True

    def __post_init__(self):
        if not self.eps > 0:
            raise ValueError(f"eps must be positive, got {self.eps}")
        if self.k_max < 1:
            raise ValueError(f"k_max must be >= 1, got {self.k_max}")


def default_policy() -> TruncationPolicy:
    """Default policy; the environment variable QDFT_EPS overrides ``eps``."""
    env = os.environ.get("QDFT_EPS")
    return TruncationPolicy(eps=float(env)) if env else TruncationPolicy()


@dataclass(frozen=True)
class PeriodizedVector:
    """One period (r = 0..N-1) of an N-periodic function on the integers."""

    N: int
    values: np.ndarray = field(repr=False)
    label: str = ""
    truncation_used: int = 0
    tail_bound: float = 0.0
    scale: float = 0.0
    parity: int | None = None

    def __post_init__(self):
        vals = np.array(self.values, dtype=complex)
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def __len__(self):
        return self.N

    def __getitem__(self, r):
        return self.values[r % self.N]

    def conj(self) -> "PeriodizedVector":
        return PeriodizedVector(self.N, self.values.conj(), f"conj({self.label})",
                                self.truncation_used, self.tail_bound, self.scale, self.parity)

    def reflected(self) -> np.ndarray:
        """values at -r mod N."""
        return self.values[(-np.arange(self.N)) % self.N]

    def parity_defect(self, eps: int) -> float:
        return float(np.max(np.abs(self.reflected() - eps * self.values), initial=0.0))


def lattice(N: int, ks) -> np.ndarray:
    """Points sqrt(2 pi / N) (k N + r) as a (len(ks), N) array."""
    ks = np.asarray(ks)
    return math.sqrt(2.0 * math.pi / N) * (ks[:, None] * N + np.arange(N)[None, :])


def tail_bound(cert: GrowthCertificate, N: int, K: int) -> float:
    """Bound on sum_{|k| > K} |f(t_{k,r})|, uniform in r.

    Both one-sided tails start at |t| >= sqrt(2 pi/N) (K N + 1) with spacing
    sqrt(2 pi N); past the envelope peak consecutive envelope ratios shrink,
    so a geometric series dominates each tail.
    """
    if cert.c0 == 0:
        return 0.0
    t0 = math.sqrt(2.0 * math.pi / N) * (K * N + 1)
    if t0 < cert.peak():
        return math.inf
    step = math.sqrt(2.0 * math.pi * N)
    first = float(cert.bound(t0))
    ratio = float(cert.bound(t0 + step)) / first if first > 0 else 0.0
    if ratio >= 1.0:
        return math.inf
    return 2.0 * first / (1.0 - ratio)


def periodize(f: Callable, N: int, policy: TruncationPolicy | None = None,
              cert: GrowthCertificate | None = None, label: str = "",
              parity: int | None = None) -> PeriodizedVector:
    """values[r] = sum_k f(sqrt(2 pi/N)(kN + r)), truncated with a certified tail.

    ``f`` maps a real array to real or complex values of the same shape and
    must satisfy ``cert``. With ``parity`` set, the result is checked for
    values[-r] = parity * values[r].
    """
    if N < 1 or int(N) != N:
        raise ParameterDomainError(f"N must be a positive integer, got {N!r}")
    policy = policy or default_policy()
    if cert is None:
        raise ValueError("periodize needs a growth certificate for the summand")

    rows: dict[int, np.ndarray] = {}

    def row(k):
        if k not in rows:
            t = lattice(N, [k])[0]
            vals = np.asarray(f(t), dtype=complex)
            env = cert.bound(t)
            if np.any(np.abs(vals) > env * (1.0 + 1e-9) + 1e-300):
                worst = int(np.argmax(np.abs(vals) - env))
                raise CertificateError(
                    f"{label or 'summand'}: |f({t[worst]:.6g})| = {abs(vals[worst]):.3e} exceeds "
                    f"the certified envelope {env[worst]:.3e}")
            rows[k] = vals
        return rows[k]

    def summed(K):
        block = np.array([row(k) for k in range(-K, K + 1)])
        return block.sum(axis=0), float(np.max(np.abs(block).sum(axis=0)))

    if policy.adaptive:
        K = 1
        while True:
            values, scale = summed(K)
            tail = tail_bound(cert, N, K)
            rounding = (2 * K + 1) * UNIT_ROUNDOFF * scale
            if tail + rounding <= policy.eps * scale:
                break
            if K >= policy.k_max:
                raise TruncationError(
                    f"{label or 'lattice sum'} (N={N}): eps={policy.eps:g} not certified within "
                    f"k_max={policy.k_max} (tail bound {tail:.3e}, rounding floor {rounding:.3e}, "
                    f"scale {scale:.3e})")
            K += 1
        K2 = min(2 * K, policy.k_max)
        if K2 > K:
            doubled, _ = summed(K2)
            drift = float(np.max(np.abs(doubled - values)))
            if drift > policy.eps * scale:
                raise TruncationError(
                    f"{label or 'lattice sum'} (N={N}): doubling K={K} -> {K2} moved entries by "
                    f"{drift:.3e} > eps * scale = {policy.eps * scale:.3e}")
    else:
        K = policy.k_max
        values, scale = summed(K)
        tail = tail_bound(cert, N, K)

    out = PeriodizedVector(N, values, label, K, tail, scale, parity)
    if parity is not None:
        defect = out.parity_defect(parity)
        if defect > PARITY_TOL * max(1.0, scale):
            raise TruncationError(f"{label}: parity {parity:+d} violated by {defect:.3e}")
    return out


def _gauss(t):
    return np.exp(-0.5 * np.asarray(t, dtype=float) ** 2)


def mehta_vector(n: int, N: int, policy: TruncationPolicy | None = None) -> PeriodizedVector:
    """Periodized Hermite function exp(-t^2/2) H_n(t)."""
    return periodize(lambda t: _gauss(t) * classical_hermite(n, t), N, policy,
                     hermite_growth(n), label=f"mehta n={n}", parity=(-1) ** n)


def q_prefactor(params, power: float) -> complex:
    """q**power on the branch log q = -2 lam^2 (2 pi i j / M at roots of unity)."""
    return cmath.exp(power * params.log_q)


def _check_params(params):
    if not isinstance(params, (RootOfUnityParams, RealQParams)):
        raise TypeError(f"expected RootOfUnityParams or RealQParams, got {type(params).__name__}")


def f_q_vector(n: int, N: int, params, policy: TruncationPolicy | None = None) -> PeriodizedVector:
    """Periodization of exp(-t^2/2) H_n(sin(lam t) | q)."""
    _check_params(params)
    lam, q = params.lam, params.q
    return periodize(lambda t: _gauss(t) * qhermite_sin(n, lam * t, q), N, policy,
                     qhermite_sin_growth(n, lam, q), label=f"f n={n} {params.label()}",
                     parity=(-1) ** n)


def g_q_vector(n: int, N: int, params, policy: TruncationPolicy | None = None) -> PeriodizedVector:
    """Periodization of exp(-t^2/2) H_n(sin(i lam t) | 1/q).

    Computed from its own lattice sum; at roots of unity it must coincide
    with the complex conjugate of :func:`f_q_vector`.
    """
    _check_params(params)
    lam, qi = 1j * params.lam, 1.0 / complex(params.q)
    return periodize(lambda t: _gauss(t) * qhermite_sin(n, lam * t, qi), N, policy,
                     qhermite_sin_growth(n, lam, qi), label=f"g n={n} {params.label()}",
                     parity=(-1) ** n)


def g_sinh_vector(n: int, N: int, params: RealQParams,
                  policy: TruncationPolicy | None = None) -> PeriodizedVector:
    """Real-q image in q^{-1}-Hermite form: i^n sum_k e^{-t^2/2} h_n(sinh(kappa t) | q)."""
    if not isinstance(params, RealQParams):
        raise TypeError("the sinh form applies to real 0 < q < 1 only")
    k, q = params.kappa, params.q
    cert = qhermite_sin_growth(n, 1j * k, 1.0 / q)
    return periodize(lambda t: (1j) ** n * _gauss(t) * qinv_hermite(n, np.sinh(k * t), q), N, policy,
                     cert, label=f"g(sinh) n={n} {params.label()}", parity=(-1) ** n)


def verify_finite_pair(n: int, N: int, params, policy: TruncationPolicy | None = None) -> float:
    """max_r |(Phi f_n)(r) - q^{n^2/4} g_n(r)|."""
    f = f_q_vector(n, N, params, policy)
    g = g_q_vector(n, N, params, policy)
    lhs = apply_dft(dft_matrix(N), f)
    return float(np.max(np.abs(lhs - q_prefactor(params, n * n / 4.0) * g.values)))


def verify_conjugate_relations(n: int, N: int, params: RootOfUnityParams,
                   policy: TruncationPolicy | None = None) -> tuple[float, float]:
    """Residuals of Phi f = q^{n^2/4} conj(f) and Phi conj(f) = (-1)^n q^{-n^2/4} f."""
    if not isinstance(params, RootOfUnityParams):
        raise TypeError("the conjugation relations hold at roots of unity only")
    f = f_q_vector(n, N, params, policy)
    op = dft_matrix(N)
    r_fwd = np.max(np.abs(apply_dft(op, f) - q_prefactor(params, n * n / 4.0) * f.values.conj()))
    r_back = np.max(np.abs(apply_dft(op, f.conj()) - (-1) ** n * q_prefactor(params, -n * n / 4.0) * f.values))
    return float(r_fwd), float(r_back)


def verify_transform_pair(f: Callable, g: Callable, N: int, cert_f: GrowthCertificate,
                          cert_g: GrowthCertificate, policy: TruncationPolicy | None = None,
                          label: str = "") -> float:
    """max_r |Phi(periodize f) - periodize g| for an integral Fourier pair (f, g)."""
    F = periodize(f, N, policy, cert_f, label=f"{label} f")
    G = periodize(g, N, policy, cert_g, label=f"{label} g")
    return float(np.max(np.abs(apply_dft(dft_matrix(N), F) - G.values)))


def verify_quadrature_commutation(n: int, N: int, policy: TruncationPolicy | None = None,
                                  spec: QuadratureSpec | None = None) -> float:
    """max_r |Phi(periodized e^{-t^2/2} H_n) - periodized quadrature transform of e^{-x^2/2} H_n|.

    The right side never uses a closed form: each lattice sample of the image
    is a quadrature sum. The image is checked sample by sample against a
    widened copy of the function's own envelope, which leaves room for the
    quadrature error. Where the widened envelope drops below
    ``NOISE_FLOOR * c0`` the quadrature returns rounding noise rather than
    signal, so those samples are replaced by zero; the true values there
    are below the floor as well.
    """
    cert = hermite_growth(n)
    wide = GrowthCertificate(2.0 * cert.c0, cert.c1, decay=0.4)
    spec = spec or QuadratureSpec.for_envelope(cert, floor=3.0 * (n + 1))
    f = lambda t: _gauss(t) * classical_hermite(n, t)

    def image(t):
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape, dtype=complex)
        keep = wide.bound(t) >= NOISE_FLOOR * cert.c0
        if np.any(keep):
            out[keep] = integral_ft(f, t[keep], spec)
        return out

    return verify_transform_pair(f, image, N, cert, wide, policy, label=f"hermite n={n}")
