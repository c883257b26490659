"""Eigenvectors of the finite Fourier transform assembled from transform pairs."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from qdft.fourier import apply_dft, dft_matrix
from qdft.periodize import (
    PeriodizedVector,
    TruncationPolicy,
    f_q_vector,
    mehta_vector,
    q_prefactor,
    verify_conjugate_relations,
)
from qdft.qseries import ParameterDomainError, RootOfUnityParams

EIGENVALUES = (1, 1j, -1, -1j)
TINY = 1e-300

# phase conventions for the real/imaginary split
PI_OVER_4 = "pi/4"  # exp(i pi n / 4)
PI_OVER_8 = "pi/8"  # exp(i pi n / 8); does not give eigenvectors, kept as a probe


class ResidualError(RuntimeError):
    """A constructed vector failed its eigenvector check."""


def residual(v, eigenvalue: complex) -> float:
    """||Phi v - lambda v||_inf / max(||v||_inf, tiny)."""
    vals = np.asarray(getattr(v, "values", v), dtype=complex)
    r = apply_dft(dft_matrix(vals.shape[0]), vals) - eigenvalue * vals
    return float(np.max(np.abs(r)) / max(float(np.max(np.abs(vals))), TINY))


@dataclass(frozen=True)
class EigenCandidate:
    vector: PeriodizedVector
    eigenvalue: complex
    residual: float
    provenance: str

    def __post_init__(self):
        if self.eigenvalue not in EIGENVALUES:
            raise ValueError(f"eigenvalue must be one of 1, i, -1, -i; got {self.eigenvalue}")

    @classmethod
    def build(cls, vector: PeriodizedVector, eigenvalue: complex, provenance: str) -> "EigenCandidate":
        return cls(vector, eigenvalue, residual(vector, eigenvalue), provenance)

    def recompute_residual(self) -> float:
        return residual(self.vector, self.eigenvalue)


def i_power(n: int) -> complex:
    """i**n exactly, as one of 1, i, -1, -i."""
    return EIGENVALUES[n % 4]


def combine(f, g, a: complex, b: complex, sign: int = 1) -> PeriodizedVector:
    """b f + sign a g; an eigenvector for sign*a*b whenever Phi f = a^2 g and Phi g = b^2 f."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    fv = np.asarray(getattr(f, "values", f), dtype=complex)
    gv = np.asarray(getattr(g, "values", g), dtype=complex)
    if fv.shape != gv.shape:
        raise ValueError(f"length mismatch: {fv.shape} vs {gv.shape}")
    return PeriodizedVector(fv.shape[0], b * fv + sign * a * gv,
                            label=f"{b:.3g}*f {'+' if sign > 0 else '-'} {a:.3g}*g")


def phase_factor(n: int, convention: str = PI_OVER_4) -> complex:
    if convention == PI_OVER_4:
        return cmath.exp(0.25j * math.pi * n)
    if convention == PI_OVER_8:
        return cmath.exp(0.125j * math.pi * n)
    raise ValueError(f"unknown phase convention {convention!r}")


def q_eigenvectors(n: int, N: int, params: RootOfUnityParams, policy: TruncationPolicy | None = None,
                   convention: str = PI_OVER_4, threshold: float = 1e-7,
                   pair_threshold: float = 1e-6) -> tuple[EigenCandidate, EigenCandidate]:
    """Real and imaginary parts of c(n) q^{-n^2/8} f_n, claimed eigenvectors for i^n and -i^n.

    Under the pi/4 phase a residual above ``threshold`` raises
    :class:`ResidualError`; under the pi/8 phase the residuals are
    only reported.
    """
    if not isinstance(params, RootOfUnityParams):
        raise ParameterDomainError("q-eigenvectors are built at roots of unity only")
    phase = phase_factor(n, convention)
    f = f_q_vector(n, N, params, policy)
    r_fwd, r_back = verify_conjugate_relations(n, N, params, policy)
    rel = max(r_fwd, r_back) / max(float(np.max(np.abs(f.values))), TINY)
    if rel > pair_threshold:
        raise ResidualError(f"f_{n} (N={N}, {params.label()}) fails the conjugation pair relations: {rel:.3e}")
    z = phase * q_prefactor(params, -n * n / 8.0) * f.values
    tag = f"n={n} {params.label()} phase={convention}"
    F = PeriodizedVector(N, z.real, f"F {tag}", f.truncation_used, f.tail_bound, f.scale, (-1) ** n)
    G = PeriodizedVector(N, z.imag, f"G {tag}", f.truncation_used, f.tail_bound, f.scale, (-1) ** n)
    lam = i_power(n)
    cF = EigenCandidate.build(F, lam, f"qPlus {tag}")
    cG = EigenCandidate.build(G, -lam, f"qMinus {tag}")
    if convention == PI_OVER_4:
        worst = max(cF.residual, cG.residual)
        if worst > threshold:
            raise ResidualError(f"q-eigenvectors {tag}: residual {worst:.3e} above {threshold:g}")
    return cF, cG


def mehta_indices(N: int) -> list[int]:
    """0..N-1 for odd N; 0..N-2 and N for even N."""
    if N < 1:
        raise ParameterDomainError(f"N must be >= 1, got {N}")
    return list(range(N)) if N % 2 else list(range(N - 1)) + [N]


def mehta_eigencheck(N: int, policy: TruncationPolicy | None = None) -> list[EigenCandidate]:
    return [EigenCandidate.build(mehta_vector(n, N, policy), i_power(n), f"Mehta n={n}")
            for n in mehta_indices(N)]


@dataclass(frozen=True)
class IndependenceReport:
    rank: int
    smallest_singular_value: float
    max_offdiag_gram: float

    def __iter__(self):
        return iter((self.rank, self.smallest_singular_value))


def independence_report(candidates, rank_tol: float = 1e-10) -> IndependenceReport:
    """Numerical rank and conditioning of the column-normalized candidate vectors.

    ``max_offdiag_gram`` is the largest |<u_a, u_b>| between distinct
    normalized columns; a value away from zero witnesses non-orthogonality.
    """
    if not candidates:
        raise ValueError("no candidates given")
    cols = [np.asarray(getattr(c, "vector", c).values if hasattr(c, "vector") else getattr(c, "values", c),
                       dtype=complex) for c in candidates]
    Ns = {v.shape[0] for v in cols}
    if len(Ns) != 1:
        raise ValueError(f"candidates have different lengths: {sorted(Ns)}")
    A = np.column_stack(cols)
    norms = np.linalg.norm(A, axis=0)
    A = A / np.where(norms > 0, norms, 1.0)
    s = np.linalg.svd(A, compute_uv=False)
    rank = int(np.sum(s > rank_tol * s[0])) if s[0] > 0 else 0
    gram = A.conj().T @ A
    off = np.abs(gram - np.diag(np.diag(gram)))
    return IndependenceReport(rank, float(s[-1]), float(off.max(initial=0.0)))
