# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel implementations.

Semantics must stay identical to ``reference.py``: same recurrences, same
operation order, float64 throughout.
"""

import numpy as np

from libc.math cimport exp


def mexican_hat(double[::1] x):
    cdef Py_ssize_t i, n = x.shape[0]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef double xi
    for i in range(n):
        xi = x[i]
        o[i] = (1.0 - xi * xi) * exp(-0.5 * xi * xi)
    return out


def hermite_he(int n, double[::1] x):
    cdef Py_ssize_t i, m = x.shape[0]
    out = np.empty(m, dtype=np.float64)
    cdef double[::1] o = out
    cdef double hkm1, hk, hnext, xi
    cdef int k
    for i in range(m):
        xi = x[i]
        if n == 0:
            o[i] = 1.0
            continue
        hkm1 = 1.0
        hk = xi
        for k in range(1, n):
            hnext = xi * hk - k * hkm1
            hkm1 = hk
            hk = hnext
        o[i] = hk
    return out


def hermite_gaussian(int n, double[::1] x):
    cdef Py_ssize_t i, m = x.shape[0]
    out = np.empty(m, dtype=np.float64)
    cdef double[::1] o = out
    cdef double hkm1, hk, hnext, xi, he
    cdef int k
    for i in range(m):
        xi = x[i]
        if n == 0:
            he = 1.0
        elif n == 1:
            he = xi
        else:
            hkm1 = 1.0
            hk = xi
            for k in range(1, n):
                hnext = xi * hk - k * hkm1
                hkm1 = hk
                hk = hnext
            he = hk
        o[i] = he * exp(-0.5 * xi * xi)
    return out


def taylor_eval(double[::1] coeffs, double center, double[::1] x):
    cdef Py_ssize_t i, n = x.shape[0]
    cdef Py_ssize_t k, nc = coeffs.shape[0]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef double u, acc
    for i in range(n):
        u = x[i] - center
        acc = coeffs[nc - 1]
        for k in range(nc - 2, -1, -1):
            acc = acc * u + coeffs[k]
        o[i] = acc
    return out
