# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops; mirrors ``qdft._pykernels`` exactly."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, M_PI

cdef extern from "complex.h" nogil:
    double complex cexp(double complex)

cnp.import_array()


def hermite_recurrence(x, coeffs):
    # real and imaginary parts kept in separate arrays so the inner loop vectorizes
    xarr = np.ascontiguousarray(np.ravel(np.asarray(x, dtype=np.complex128)))
    cdef const double complex[::1] c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cdef double[::1] xr = np.ascontiguousarray(2.0 * xarr.real)
    cdef double[::1] xi = np.ascontiguousarray(2.0 * xarr.imag)
    cdef Py_ssize_t i, k, m = xarr.shape[0], n = c.shape[0]
    cdef double[::1] cr = np.ones(m), ci = np.zeros(m), pr = np.zeros(m), pi = np.zeros(m)
    cdef double ar, ai, nr, ni
    with nogil:
        for k in range(n):
            ar = c[k].real
            ai = c[k].imag
            for i in range(m):
                nr = xr[i] * cr[i] - xi[i] * ci[i] - (ar * pr[i] - ai * pi[i])
                ni = xr[i] * ci[i] + xi[i] * cr[i] - (ar * pi[i] + ai * pr[i])
                pr[i] = cr[i]
                pi[i] = ci[i]
                cr[i] = nr
                ci[i] = ni
    out = np.asarray(cr) + 1j * np.asarray(ci)
    return out.reshape(np.shape(x))


def exp_sum(theta, coeffs):
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] th = np.ascontiguousarray(
        np.ravel(np.asarray(theta, dtype=np.complex128)))
    cdef const double complex[::1] c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.empty_like(th)
    cdef Py_ssize_t i, k, m = th.shape[0]
    cdef Py_ssize_t n = c.shape[0] - 1
    cdef double complex acc
    cdef double complex I = 1j
    with nogil:
        for i in range(m):
            acc = 0.0
            for k in range(n + 1):
                acc = acc + c[k] * cexp(I * <double>(n - 2 * k) * th[i])
            out[i] = acc
    return out.reshape(np.shape(theta))


def dft_direct(v):
    cdef const double complex[::1] vs = np.ascontiguousarray(v, dtype=np.complex128)
    cdef Py_ssize_t N = vs.shape[0], r, s
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.empty(N, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] roots = np.exp(2j * np.pi * np.arange(N) / N)
    cdef double complex acc
    cdef double scale = 1.0 / sqrt(<double>N)
    for r in range(N):
        acc = 0.0
        for s in range(N):
            acc = acc + roots[(r * s) % N] * vs[s]
        out[r] = acc * scale
    return out
