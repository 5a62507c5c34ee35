# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels mirroring _pycore operation for operation."""

import numpy as np


def unit_factors(Py_ssize_t n_max, laws, tables):
    cdef double[::1] out
    cdef double[::1] inv
    cdef Py_ssize_t n
    cdef long long p, o, e, extra, m, base
    cdef int v
    cdef double odd
    arr = np.ones(n_max + 1, dtype=np.float64)
    out = arr
    out[0] = 0.0
    for law, table in zip(laws, tables):
        p, o, e, extra = law
        inv = np.asarray(table, dtype=np.float64)
        if p == 2:
            odd = inv[e]
            n = 1
            while n <= n_max:
                out[n] *= odd
                n += 2
            base = e + extra - 1
            n = 2
            while n <= n_max:
                v = 0
                m = n
                while (m & 1) == 0:
                    m >>= 1
                    v += 1
                out[n] *= inv[base + v]
                n += 2
        else:
            n = o
            while n <= n_max:
                v = 0
                m = n
                while m % p == 0:
                    m //= p
                    v += 1
                out[n] *= inv[e + v]
                n += o
    return arr


def neumaier_cumsum(values):
    cdef double[::1] vals = np.ascontiguousarray(values, dtype=np.float64)
    cdef Py_ssize_t i, size = vals.shape[0]
    arr = np.empty(size, dtype=np.float64)
    cdef double[::1] out = arr
    cdef double s = 0.0, c = 0.0, t, x
    for i in range(size):
        x = vals[i]
        t = s + x
        if (s if s >= 0 else -s) >= (x if x >= 0 else -x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
        out[i] = s + c
    return arr


def c_series(long long m_lo, long long m_hi, long long p, Py_ssize_t jmax,
             inv, weights):
    cdef double[::1] tinv = np.asarray(inv, dtype=np.float64)
    cdef double[::1] w = np.asarray(weights, dtype=np.float64)
    cdef Py_ssize_t size = m_hi - m_lo + 1
    arr = np.empty(size, dtype=np.float64)
    cdef double[::1] out = arr
    cdef Py_ssize_t i, j
    cdef long long x
    cdef int v
    cdef double s
    for i in range(size):
        s = 0.0
        for j in range(jmax + 1):
            x = m_lo + i - j
            if x == 0:
                continue
            if x < 0:
                x = -x
            v = 0
            while x % p == 0:
                x //= p
                v += 1
            s += tinv[v] * w[j]
        out[i] = s
    return arr
