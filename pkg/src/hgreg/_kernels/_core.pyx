# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_pure``; same signatures and results."""

import numpy as np

cimport numpy as cnp
from libc.stdint cimport int64_t, int8_t


def legendre_table(long p):
    cdef cnp.ndarray[int8_t] chi = np.full(p, -1, dtype=np.int8)
    cdef long x
    for x in range(1, p):
        chi[(x * x) % p] = 1
    chi[0] = 0
    return chi


def poly_char_sum(coeffs, long p, int8_t[:] chi):
    cdef long n = len(coeffs), i, x
    cdef int64_t acc, total = 0
    cdef int64_t[:] c = np.array([int(v) % p for v in coeffs], dtype=np.int64)
    for x in range(p):
        acc = 0
        for i in range(n):
            acc = (acc * x + c[i]) % p
        total += chi[acc]
    return int(total)


def surface_count(long alpha, long p, int8_t[:] chi):
    cdef int64_t[:] q = np.empty(p, dtype=np.int64)
    cdef int64_t[:] inv = np.zeros(p, dtype=np.int64)
    cdef long x, y
    cdef int64_t c, total = 0
    alpha %= p
    for x in range(p):
        q[x] = ((1 - x * x) % p + p) % p
    for x in range(1, p):
        inv[x] = pow(x, p - 2, p)
    for x in range(p):
        for y in range(p):
            c = (q[x] * q[y]) % p
            if c == 0:
                if alpha == 0:
                    total += p
            else:
                total += 1 + chi[((1 - alpha * inv[c]) % p + p) % p]
    return int(total)


def sparse_convolve(dense, exps, vals, long n_max):
    cdef int64_t[:] d = np.ascontiguousarray(dense, dtype=np.int64)
    cdef cnp.ndarray[int64_t] out = np.zeros(n_max + 1, dtype=np.int64)
    cdef long j, k, e, m = len(exps)
    cdef int64_t v
    for j in range(m):
        e = exps[j]
        v = vals[j]
        if e > n_max:
            continue
        for k in range(n_max + 1 - e):
            out[e + k] += v * d[k]
    return out
