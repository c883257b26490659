"""Pure numpy implementations of the inner loops.

Same signatures and semantics as the compiled ``_ckernels`` module; used
when the extension is not built or ``QDFT_PURE_PYTHON`` is set.
"""

import numpy as np


def hermite_recurrence(x, coeffs):
    """P_n(x) for 2x P_k = P_{k+1} + coeffs[k] P_{k-1}, P_0 = 1, P_{-1} = 0.

    ``n`` is ``len(coeffs)``; ``coeffs[0]`` multiplies P_{-1} and is ignored.
    """
    x = np.asarray(x, dtype=complex)
    coeffs = np.asarray(coeffs, dtype=complex)
    prev = np.zeros_like(x)
    cur = np.ones_like(x)
    two_x = 2.0 * x
    for k in range(coeffs.shape[0]):
        prev, cur = cur, two_x * cur - coeffs[k] * prev
    return cur


def exp_sum(theta, coeffs):
    """sum_k coeffs[k] * exp(i (n - 2k) theta) with n = len(coeffs) - 1."""
    theta = np.asarray(theta, dtype=complex)
    coeffs = np.asarray(coeffs, dtype=complex)
    n = coeffs.shape[0] - 1
    out = np.zeros_like(theta)
    for k in range(n + 1):
        out += coeffs[k] * np.exp(1j * (n - 2 * k) * theta)
    return out


def dft_direct(v):
    """(1/sqrt N) sum_s exp(2 pi i r s / N) v[s], exponents reduced mod N."""
    v = np.asarray(v, dtype=complex)
    N = v.shape[0]
    roots = np.exp(2j * np.pi * np.arange(N) / N)
    idx = np.outer(np.arange(N), np.arange(N)) % N
    return roots[idx] @ v / np.sqrt(N)
