"""q-shifted factorials, Gaussian binomials and the deformation parameters.

Everything here is plain double-precision complex arithmetic. Gaussian
binomials are built with the Pascal-type recurrence so that they stay
finite (and exact as polynomials in q) when q is a root of unity, where
the usual Pochhammer ratio degenerates to 0/0.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np


class ParameterDomainError(ValueError):
    """Raised when (j, M), q or a degree lies outside its admissible range."""


def _check_jm(j: int, M: int) -> None:
    if int(j) != j or int(M) != M:
        raise ParameterDomainError(f"j and M must be integers, got j={j!r}, M={M!r}")
    if M < 1:
        raise ParameterDomainError(f"M must be >= 1, got {M}")
    if not 1 <= j <= M - 1:
        raise ParameterDomainError(f"need 1 <= j <= M-1, got j={j}, M={M}")


def q_root(j: int, M: int) -> complex:
    """Return the root of unity exp(2*pi*i*j/M)."""
    _check_jm(j, M)
    return cmath.exp(2j * math.pi * j / M)


def alpha_param(j: int, M: int) -> complex:
    """Complex scale with exp(-2*alpha**2) == q_root(j, M) and i*alpha == conj(alpha)."""
    _check_jm(j, M)
    return math.sqrt(math.pi * j / M) * cmath.exp(-0.25j * math.pi)


@dataclass(frozen=True)
class RootOfUnityParams:
    """Deformation at q = exp(2*pi*i*j/M) with lam = alpha_{j,M}."""

    j: int
    M: int
    q: complex
    alpha: complex
    coprime: bool

    @classmethod
    def from_jm(cls, j: int, M: int) -> "RootOfUnityParams":
        return cls(j, M, q_root(j, M), alpha_param(j, M), math.gcd(j, M) == 1)

    @property
    def lam(self) -> complex:
        return self.alpha

    @property
    def log_q(self) -> complex:
        # the defining exponent, not numpy's principal log: Im may exceed pi
        return 2j * math.pi * self.j / self.M

    def label(self) -> str:
        return f"j={self.j},M={self.M}"


@dataclass(frozen=True)
class RealQParams:
    """Real deformation 0 < q < 1 with q = exp(-2*kappa**2)."""

    kappa: float
    q: float

    @classmethod
    def from_q(cls, q: float) -> "RealQParams":
        if not 0.0 < q < 1.0:
            raise ParameterDomainError(f"real q must lie in (0, 1), got {q}")
        return cls(math.sqrt(-math.log(q) / 2.0), float(q))

    @classmethod
    def from_kappa(cls, kappa: float) -> "RealQParams":
        if not kappa > 0.0:
            raise ParameterDomainError(f"kappa must be positive, got {kappa}")
        return cls(float(kappa), math.exp(-2.0 * kappa * kappa))

    @property
    def lam(self) -> float:
        return self.kappa

    @property
    def log_q(self) -> float:
        return -2.0 * self.kappa * self.kappa

    def label(self) -> str:
        return f"q={self.q:g}"


def q_power(params, exponent: float) -> complex:
    """q**exponent on the branch fixed by ``params.log_q``."""
    return cmath.exp(exponent * params.log_q)


def q_pochhammer(a: complex, q: complex, n: int) -> complex:
    """Return (a; q)_n = prod_{k<n} (1 - a q^k)."""
    if n < 0:
        raise ParameterDomainError(f"n must be >= 0, got {n}")
    out = 1.0 + 0.0j
    qk = 1.0 + 0.0j
    for _ in range(n):
        out *= 1.0 - a * qk
        qk *= q
    if not cmath.isfinite(out):
        raise OverflowError(f"(a;q)_{n} overflowed for a={a}, q={q}")
    return out


def q_binomial_row(n: int, q: complex) -> np.ndarray:
    """All Gaussian binomials [n, k]_q for k = 0..n, as a complex array.

    Built row by row with [n,k] = [n-1,k-1] + q^k [n-1,k].
    """
    if n < 0:
        raise ParameterDomainError(f"n must be >= 0, got {n}")
    q = complex(q)
    row = np.ones(1, dtype=complex)
    qpow = np.ones(n + 1, dtype=complex)
    for k in range(1, n + 1):
        qpow[k] = qpow[k - 1] * q
    for m in range(1, n + 1):
        new = np.empty(m + 1, dtype=complex)
        new[0] = 1.0
        new[m] = 1.0
        new[1:m] = row[:-1] + qpow[1:m] * row[1:]
        row = new
    return row


def q_binomial(n: int, k: int, q: complex) -> complex:
    """Gaussian binomial [n, k]_q; zero outside 0 <= k <= n."""
    if n < 0 or k < 0 or k > n:
        return 0.0 + 0.0j
    return complex(q_binomial_row(n, q)[k])
