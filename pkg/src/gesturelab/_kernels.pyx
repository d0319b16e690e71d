# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled DTW kernel.

Must stay arithmetically identical to gesturelab._kernels_py: same
ascending-k accumulation of keypoint terms, same 0.5 * (d_fg + d_gf)
symmetrization, same lexicographic (total cost, path length) recurrence.
"""

from libc.math cimport sqrt, INFINITY

import numpy as np

BACKEND = "compiled"

DEF LEN_SENTINEL = 4611686018427387903  # iinfo(int64).max // 2


def local_cost_matrix(double[:, :, ::1] a, double[:, :, ::1] b):
    """Symmetrized frame distances for every frame pair, as an ndarray."""
    out = np.empty((a.shape[0], b.shape[0]), dtype=np.float64)
    cdef double[:, ::1] local = out
    _fill_local(a, b, local)
    return out


cdef void _fill_local(double[:, :, ::1] a, double[:, :, ::1] b,
                      double[:, ::1] local) nogil:
    cdef Py_ssize_t n = a.shape[0], m = b.shape[0], K = a.shape[1]
    cdef Py_ssize_t i, j, k
    cdef double dx, dy, dist, num_fg, num_gf, sum_a, sum_b, c
    for i in range(n):
        sum_a = 0.0
        for k in range(K):
            sum_a = sum_a + a[i, k, 2]
        for j in range(m):
            sum_b = 0.0
            num_fg = 0.0
            num_gf = 0.0
            for k in range(K):
                dx = a[i, k, 0] - b[j, k, 0]
                dy = a[i, k, 1] - b[j, k, 1]
                dist = sqrt(dx * dx + dy * dy)
                num_fg = num_fg + a[i, k, 2] * dist
                num_gf = num_gf + b[j, k, 2] * dist
                sum_b = sum_b + b[j, k, 2]
            if sum_a > 0 and sum_b > 0:
                c = 0.5 * (num_fg / sum_a + num_gf / sum_b)
            elif sum_a > 0:
                c = num_fg / sum_a
            else:
                c = num_gf / sum_b
            local[i, j] = c


def dtw_pair(double[:, :, ::1] a, double[:, :, ::1] b):
    """Path-length-normalized DTW cost between two skeleton sequences."""
    cdef Py_ssize_t n = a.shape[0], m = b.shape[0]
    local_arr = np.empty((n, m), dtype=np.float64)
    cost_arr = np.empty((n, m), dtype=np.float64)
    plen_arr = np.empty((n, m), dtype=np.int64)
    cdef double[:, ::1] local = local_arr
    cdef double[:, ::1] cost = cost_arr
    cdef long long[:, ::1] plen = plen_arr
    cdef double total
    cdef long long length
    with nogil:
        _fill_local(a, b, local)
        _dtw(local, cost, plen)
        total = cost[n - 1, m - 1]
        length = plen[n - 1, m - 1]
    return total / length


cdef void _dtw(double[:, ::1] local, double[:, ::1] cost,
               long long[:, ::1] plen) nogil:
    cdef Py_ssize_t n = local.shape[0], m = local.shape[1]
    cdef Py_ssize_t i, j
    cdef double best_c, cand_c
    cdef long long best_l, cand_l
    cost[0, 0] = local[0, 0]
    plen[0, 0] = 1
    for i in range(n):
        for j in range(m):
            if i == 0 and j == 0:
                continue
            if i > 0 and j > 0:  # diagonal predecessor preferred
                best_c = cost[i - 1, j - 1]
                best_l = plen[i - 1, j - 1]
            else:
                best_c = INFINITY
                best_l = LEN_SENTINEL
            if i > 0:
                cand_c = cost[i - 1, j]
                cand_l = plen[i - 1, j]
                if cand_c < best_c or (cand_c == best_c and cand_l < best_l):
                    best_c = cand_c
                    best_l = cand_l
            if j > 0:
                cand_c = cost[i, j - 1]
                cand_l = plen[i, j - 1]
                if cand_c < best_c or (cand_c == best_c and cand_l < best_l):
                    best_c = cand_c
                    best_l = cand_l
            cost[i, j] = best_c + local[i, j]
            plen[i, j] = best_l + 1
