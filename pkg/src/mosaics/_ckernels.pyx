# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in _pykernels."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

SHIFT_RADIX = 5


cdef inline long long _code(long long b, long long sx, long long sy, long long sz) nogil:
    return b * 125 + (sx + 2) + 5 * (sy + 2) + 25 * (sz + 2)


def encode(base, shift):
    base = np.asarray(base, dtype=np.int64)
    s = np.asarray(shift, dtype=np.int64) + 2
    return base * 125 + s[..., 0] + 5 * s[..., 1] + 25 * s[..., 2]


def canonical_simplices(base, shift):
    cdef cnp.int64_t[:, :] B = np.ascontiguousarray(base, dtype=np.int64)
    cdef cnp.int64_t[:, :, :] S = np.ascontiguousarray(shift, dtype=np.int64)
    cdef Py_ssize_t T = B.shape[0], k = B.shape[1]
    codes_arr = np.empty((T, k), dtype=np.int64)
    keep_arr = np.empty(T, dtype=np.bool_)
    cdef cnp.int64_t[:, :] C = codes_arr
    cdef cnp.npy_bool[:] K = keep_arr
    cdef Py_ssize_t t, i, j, a
    cdef long long best, c, ax, ay, az, tmp
    with nogil:
        for t in range(T):
            a = 0
            best = _code(B[t, 0], S[t, 0, 0], S[t, 0, 1], S[t, 0, 2])
            for i in range(1, k):
                c = _code(B[t, i], S[t, i, 0], S[t, i, 1], S[t, i, 2])
                if c < best:
                    best = c
                    a = i
            ax = S[t, a, 0]
            ay = S[t, a, 1]
            az = S[t, a, 2]
            K[t] = ax == 0 and ay == 0 and az == 0
            for i in range(k):
                C[t, i] = _code(B[t, i], S[t, i, 0] - ax, S[t, i, 1] - ay, S[t, i, 2] - az)
            # insertion sort, k <= 4
            for i in range(1, k):
                tmp = C[t, i]
                j = i - 1
                while j >= 0 and C[t, j] > tmp:
                    C[t, j + 1] = C[t, j]
                    j -= 1
                C[t, j + 1] = tmp
    return codes_arr, keep_arr


def insphere_count(centers, r2, points, double rel_tol):
    cdef double[:, :] Cn = np.ascontiguousarray(centers, dtype=np.float64)
    cdef double[:] R = np.ascontiguousarray(r2, dtype=np.float64)
    cdef double[:, :] P = np.ascontiguousarray(points, dtype=np.float64)
    cdef Py_ssize_t T = Cn.shape[0], M = P.shape[0], t, m
    out_arr = np.zeros(T, dtype=np.int64)
    cdef cnp.int64_t[:] out = out_arr
    cdef double dx, dy, dz, lim
    cdef long long n
    with nogil:
        for t in range(T):
            lim = R[t] * (1.0 - rel_tol)
            n = 0
            for m in range(M):
                dx = P[m, 0] - Cn[t, 0]
                dy = P[m, 1] - Cn[t, 1]
                dz = P[m, 2] - Cn[t, 2]
                if dx * dx + dy * dy + dz * dz < lim:
                    n += 1
            out[t] = n
    return out_arr
