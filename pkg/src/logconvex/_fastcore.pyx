# cython: language_level=3
"""Compiled kernels: lower convex hull and discrete conjugate transform.

Same contracts as the pure-Python twin in ``_purecore.py``; see that module
for the algorithm notes.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def lower_hull_indices(const double[::1] x, const double[::1] y):
    cdef Py_ssize_t n = x.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] stack_arr = np.empty(n, dtype=np.int64)
    cdef cnp.int64_t[::1] stack = stack_arr
    cdef Py_ssize_t top = 0
    cdef Py_ssize_t i, j, k
    cdef double cross
    stack[0] = 0
    for i in range(1, n):
        while top >= 1:
            j = stack[top]
            k = stack[top - 1]
            cross = (x[j] - x[k]) * (y[i] - y[k]) - (x[i] - x[k]) * (y[j] - y[k])
            if cross <= 0.0:
                top -= 1
            else:
                break
        top += 1
        stack[top] = i
    return stack_arr[: top + 1].copy()


def conjugate_table(const double[::1] x, const double[::1] y):
    cdef Py_ssize_t n = x.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] surv_arr = np.empty(n, dtype=np.int64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] bps_arr = np.empty(n, dtype=np.float64)
    cdef cnp.int64_t[::1] surv = surv_arr
    cdef double[::1] bps = bps_arr
    cdef Py_ssize_t top = 0
    cdef Py_ssize_t i, j
    cdef double b_new
    surv[0] = 0
    for i in range(1, n):
        while top >= 0:
            j = surv[top]
            b_new = (y[i] - y[j]) / (x[i] - x[j])
            if top >= 1 and b_new <= bps[top - 1]:
                top -= 1
            else:
                bps[top] = b_new
                break
        top += 1
        surv[top] = i
    survivors = surv_arr[: top + 1].copy()
    breakpoints = bps_arr[:top].copy()
    left = survivors[:-1]
    values = breakpoints * np.asarray(x)[left] - np.asarray(y)[left]
    return survivors, breakpoints, values


def conjugate_at(const double[::1] x, const double[::1] y, const double[::1] slopes):
    survivors_arr, breakpoints_arr, _ = conjugate_table(x, y)
    cdef cnp.int64_t[::1] survivors = survivors_arr
    cdef double[::1] breakpoints = breakpoints_arr
    cdef Py_ssize_t m = slopes.shape[0]
    cdef Py_ssize_t nb = breakpoints.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out_arr = np.empty(m, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t k = 0
    cdef Py_ssize_t q, i
    cdef double a
    for q in range(m):
        a = slopes[q]
        while k < nb and a > breakpoints[k]:
            k += 1
        i = survivors[k]
        out[q] = a * x[i] - y[i]
    return out_arr
