# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled implementations of the hot kernels (see kernels/__init__.py)."""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, cosh, exp, log, sqrt, pi

cnp.import_array()


def kloost_sum(long long m, long long n, long long c,
               cnp.int64_t[::1] units, cnp.int64_t[::1] invs):
    cdef Py_ssize_t i, k = units.shape[0]
    cdef long long r
    cdef double scale = 2.0 * pi / c
    cdef double s = 0.0, comp = 0.0, y, tt, term
    if c == 1:
        return 1.0
    for i in range(k):
        r = (m * units[i] + n * invs[i]) % c
        if r < 0:
            r += c
        term = cos(r * scale)
        y = term - comp
        tt = s + y
        comp = (tt - s) - y
        s = tt
    return s


def rs_mainsum(cnp.float64_t[::1] t, cnp.float64_t[::1] theta, long nmax):
    cdef Py_ssize_t i, m = t.shape[0]
    cdef long k
    cdef double lk, rk
    out_np = np.zeros(m, dtype=np.float64)
    cdef cnp.float64_t[::1] out = out_np
    for k in range(1, nmax + 1):
        lk = log(<double> k)
        rk = 1.0 / sqrt(<double> k)
        for i in range(m):
            out[i] += rk * cos(theta[i] - t[i] * lk)
    for i in range(m):
        out[i] *= 2.0
    return out_np


def k_quad_factored(cnp.float64_t[::1] t, double x,
                    cnp.float64_t[::1] u, cnp.float64_t[::1] w):
    cdef Py_ssize_t i, j, m = t.shape[0], k = u.shape[0]
    cdef double acc, ti
    damp_np = np.empty(k, dtype=np.float64)
    cdef cnp.float64_t[::1] damp = damp_np
    for j in range(k):
        damp[j] = w[j] * exp(-x * (cosh(u[j]) - 1.0))
    out_np = np.empty(m, dtype=np.float64)
    cdef cnp.float64_t[::1] out = out_np
    for i in range(m):
        ti = 2.0 * t[i]
        acc = 0.0
        for j in range(k):
            acc += damp[j] * cos(ti * u[j])
        out[i] = acc
    return out_np
