# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: batched Horner evaluation and hull/calipers diameter.

Semantics match diskdiam._kernels._fallback exactly; see that module for the
contract (including the smallest-index-pair tie-break).
"""

import numpy as np


def horner_eval(coeffs, z):
    """Horner evaluation of a complex polynomial at an array of points."""
    c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    zz = np.ascontiguousarray(z, dtype=np.complex128)
    out = np.empty(zz.shape[0], dtype=np.complex128)
    _horner(c, zz, out)
    return out


cdef void _horner(const double complex[::1] c, const double complex[::1] z,
                  double complex[::1] out) noexcept:
    cdef Py_ssize_t n = z.shape[0]
    cdef Py_ssize_t m = c.shape[0]
    cdef Py_ssize_t i, k
    cdef double complex acc, w
    for i in range(n):
        w = z[i]
        acc = c[m - 1]
        for k in range(m - 2, -1, -1):
            acc = acc * w + c[k]
        out[i] = acc


def hull_diameter(xs, ys):
    """Max squared pairwise distance of (xs, ys) and the attaining pair.

    Returns (d2, i, j) with i <= j original indices; ties by smallest (i, j).
    """
    cdef const double[::1] x = np.ascontiguousarray(xs, dtype=np.float64)
    cdef const double[::1] y = np.ascontiguousarray(ys, dtype=np.float64)
    cdef Py_ssize_t n = x.shape[0]
    if n == 0:
        raise ValueError("empty point set")
    if n == 1:
        return 0.0, 0, 0

    order_np = np.lexsort((ys, xs)).astype(np.int64)
    cdef long long[::1] order = order_np
    upper_np = np.empty(n, dtype=np.int64)
    lower_np = np.empty(n, dtype=np.int64)
    cdef long long[::1] upper = upper_np
    cdef long long[::1] lower = lower_np
    cdef Py_ssize_t nu = 0, nl = 0
    cdef Py_ssize_t a
    cdef long long p

    for a in range(n):
        p = order[a]
        while nu > 1 and _orient(x, y, upper[nu - 2], upper[nu - 1], p) <= 0.0:
            nu -= 1
        while nl > 1 and _orient(x, y, lower[nl - 2], lower[nl - 1], p) >= 0.0:
            nl -= 1
        upper[nu] = p
        lower[nl] = p
        nu += 1
        nl += 1

    cdef double best_d2 = -1.0
    cdef long long best_i = 0, best_j = 0
    cdef Py_ssize_t i = 0, j = nl - 1
    cdef long long pi, qj
    cdef double dx, dy, d2

    while i < nu - 1 or j > 0:
        pi = upper[i]
        qj = lower[j]
        dx = x[pi] - x[qj]
        dy = y[pi] - y[qj]
        d2 = dx * dx + dy * dy
        _consider(d2, pi, qj, &best_d2, &best_i, &best_j)
        if i == nu - 1:
            j -= 1
        elif j == 0:
            i += 1
        elif (y[upper[i + 1]] - y[pi]) * (x[qj] - x[lower[j - 1]]) > \
                (y[qj] - y[lower[j - 1]]) * (x[upper[i + 1]] - x[pi]):
            i += 1
        else:
            j -= 1
    pi = upper[nu - 1]
    qj = lower[0]
    dx = x[pi] - x[qj]
    dy = y[pi] - y[qj]
    _consider(dx * dx + dy * dy, pi, qj, &best_d2, &best_i, &best_j)
    return best_d2, int(best_i), int(best_j)


cdef inline double _orient(const double[::1] x, const double[::1] y,
                           long long p, long long q, long long r) noexcept:
    return (y[q] - y[p]) * (x[r] - x[p]) - (x[q] - x[p]) * (y[r] - y[p])


cdef inline void _consider(double d2, long long pi, long long qj,
                           double* best_d2, long long* best_i,
                           long long* best_j) noexcept:
    cdef long long lo, hi
    if pi <= qj:
        lo, hi = pi, qj
    else:
        lo, hi = qj, pi
    if d2 > best_d2[0] or (d2 == best_d2[0] and
                           (lo < best_i[0] or (lo == best_i[0] and hi < best_j[0]))):
        best_d2[0] = d2
        best_i[0] = lo
        best_j[0] = hi
