# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernel: per-item variate generation and sketch update.

Must stay word-for-word equivalent to hashing.variates_np (same hash
stream, same rejection rule, same arithmetic order).
"""

from libc.math cimport llrint, log, M_PI
from libc.stdint cimport int64_t, uint64_t

cdef extern from "math.h" nogil:
    void sincos(double x, double *sin_out, double *cos_out)

import numpy as np

cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL
cdef double INV_2_64 = 2.0 ** -64
cdef double HALF_PI = M_PI / 2.0


cdef inline uint64_t _mix64(uint64_t x) nogil:
    x ^= x >> 30
    x *= 0xBF58476D1CE4E5B9ULL
    x ^= x >> 27
    x *= 0x94D049BB133111EBULL
    x ^= x >> 31
    return x


cdef inline double _variate(uint64_t key, uint64_t row, uint64_t k) nogil:
    cdef uint64_t attempt = 0
    cdef uint64_t idx, wu, ww
    cdef double u01, w01, u, w, s, c
    while True:
        idx = attempt * k + row
        wu = _mix64(key + (2 * idx) * GOLDEN)
        ww = _mix64(key + (2 * idx + 1) * GOLDEN)
        u01 = (<double> wu + 0.5) * INV_2_64
        w01 = (<double> ww + 0.5) * INV_2_64
        if 0.0 < u01 < 1.0 and 0.0 < w01 < 1.0:
            u = M_PI * (u01 - 0.5)
            w = -log(w01)
            # tan(u) = s/c; one sincos call instead of tan + cos
            sincos(u, &s, &c)
            return (HALF_PI - u) * (s / c) + log(w * c / (HALF_PI - u))
        attempt += 1


def variates(key, Py_ssize_t k):
    """All k row variates for one item key (matches hashing.variates_np)."""
    out = np.empty(k, dtype=np.float64)
    cdef double[::1] view = out
    cdef uint64_t key64 = key
    cdef Py_ssize_t row
    with nogil:
        for row in range(k):
            view[row] = _variate(key64, <uint64_t> row, <uint64_t> k)
    return out


def accumulate(int64_t[::1] scaled, key, double delta):
    """scaled[row] += rint(variate(key, row) * delta * 2^16) for every row.

    Fixed-point accumulation (round-half-even, matching np.rint) keeps
    sketch addition exactly associative and invertible.
    """
    cdef uint64_t key64 = key
    cdef double scale = 65536.0  # 2^16, sketch.QUANTUM_BITS
    cdef Py_ssize_t k = scaled.shape[0]
    cdef Py_ssize_t row
    with nogil:
        for row in range(k):
            scaled[row] += llrint(_variate(key64, <uint64_t> row, <uint64_t> k) * delta * scale)
