# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernel lane.

Same contracts as the pure lane (see pure.py): angle-potential rate over the
n+1 pole terms, its axis antiderivative, and the axis rate.  Reductions over
k are compensated with branch-free Knuth two-sum accumulation (an error-free
transformation, so the compensation survives compiler optimisation as long
as value-changing float reassociation stays off).  Loops run without the
GIL so callers may thread over batches.
"""

from libc.math cimport atan

import numpy as np


cdef inline void _acc(double x, double *s, double *c) noexcept nogil:
    # Knuth two-sum: t + e == s + x exactly; e accumulates into c.
    cdef double t = s[0] + x
    cdef double z = t - s[0]
    c[0] += (s[0] - (t - z)) + (x - z)
    s[0] = t


def dzh_batch(int n, xs, ys):
    """Complex angle-potential rate at z = xs + i*ys; returns (re, im) arrays."""
    cdef double[::1] xv = np.ascontiguousarray(xs, dtype=np.float64)
    cdef double[::1] yv = np.ascontiguousarray(ys, dtype=np.float64)
    out_re = np.empty(xv.shape[0], dtype=np.float64)
    out_im = np.empty(xv.shape[0], dtype=np.float64)
    cdef double[::1] rv = out_re
    cdef double[::1] iv = out_im
    cdef Py_ssize_t i, m = xv.shape[0]
    cdef int k
    cdef double inv = 1.0 / n, inv2 = inv * inv
    cdef double x, y, y2, wr, dr, di, d2r, d2i, rec
    cdef double sr, cr, si, ci
    with nogil:
        for i in range(m):
            x = xv[i]
            y = yv[i]
            y2 = y * y
            sr = cr = si = ci = 0.0
            dr = x * x - y2 + inv2
            di = 2.0 * x * y
            d2r = dr * dr - di * di
            d2i = 2.0 * dr * di
            rec = 1.0 / (d2r * d2r + d2i * d2i)
            _acc(d2r * rec, &sr, &cr)
            _acc(-d2i * rec, &si, &ci)
            for k in range(1, n + 1):
                wr = x + k * inv
                dr = wr * wr - y2 + inv2
                di = 2.0 * wr * y
                d2r = dr * dr - di * di
                d2i = 2.0 * dr * di
                rec = inv / (d2r * d2r + d2i * d2i)
                _acc(d2r * rec, &sr, &cr)
                _acc(-d2i * rec, &si, &ci)
            rv[i] = 0.5 * (sr + cr)
            iv[i] = 0.5 * (si + ci)
    return out_re, out_im


def h_axis_batch(int n, xs):
    """Axis turning angle u(x, 0) for an array of abscissae."""
    cdef double[::1] xv = np.ascontiguousarray(xs, dtype=np.float64)
    out = np.empty(xv.shape[0], dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i, m = xv.shape[0]
    cdef int k
    cdef double inv = 1.0 / n, inv2 = inv * inv
    cdef double x, wk, s, c
    with nogil:
        for i in range(m):
            x = xv[i]
            s = c = 0.0
            _acc(n * atan(n * x) + x / (x * x + inv2), &s, &c)
            for k in range(1, n + 1):
                wk = x + k * inv
                _acc(inv * (n * atan(n * wk) + wk / (wk * wk + inv2)), &s, &c)
            ov[i] = 0.25 * n * n * (s + c)
    return out


def dxu_axis_batch(int n, xs):
    """Axis turning rate du/dx (x, 0)."""
    cdef double[::1] xv = np.ascontiguousarray(xs, dtype=np.float64)
    out = np.empty(xv.shape[0], dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i, m = xv.shape[0]
    cdef int k
    cdef double inv = 1.0 / n, inv2 = inv * inv
    cdef double x, wk, d, s, c
    with nogil:
        for i in range(m):
            x = xv[i]
            s = c = 0.0
            d = x * x + inv2
            _acc(1.0 / (d * d), &s, &c)
            for k in range(1, n + 1):
                wk = x + k * inv
                d = wk * wk + inv2
                _acc(inv / (d * d), &s, &c)
            ov[i] = 0.5 * (s + c)
    return out


def dzh_point(int n, double x, double y):
    cdef int k
    cdef double inv = 1.0 / n, inv2 = inv * inv
    cdef double y2 = y * y, wr, dr, di, d2r, d2i, rec
    cdef double sr = 0.0, cr = 0.0, si = 0.0, ci = 0.0
    dr = x * x - y2 + inv2
    di = 2.0 * x * y
    d2r = dr * dr - di * di
    d2i = 2.0 * dr * di
    rec = 1.0 / (d2r * d2r + d2i * d2i)
    _acc(d2r * rec, &sr, &cr)
    _acc(-d2i * rec, &si, &ci)
    for k in range(1, n + 1):
        wr = x + k * inv
        dr = wr * wr - y2 + inv2
        di = 2.0 * wr * y
        d2r = dr * dr - di * di
        d2i = 2.0 * dr * di
        rec = inv / (d2r * d2r + d2i * d2i)
        _acc(d2r * rec, &sr, &cr)
        _acc(-d2i * rec, &si, &ci)
    return complex(0.5 * (sr + cr), 0.5 * (si + ci))


def h_axis_point(int n, double x):
    cdef int k
    cdef double inv = 1.0 / n, inv2 = inv * inv
    cdef double wk, s = 0.0, c = 0.0
    _acc(n * atan(n * x) + x / (x * x + inv2), &s, &c)
    for k in range(1, n + 1):
        wk = x + k * inv
        _acc(inv * (n * atan(n * wk) + wk / (wk * wk + inv2)), &s, &c)
    return 0.25 * n * n * (s + c)


def dxu_axis_point(int n, double x):
    cdef int k
    cdef double inv = 1.0 / n, inv2 = inv * inv
    cdef double wk, d, s = 0.0, c = 0.0
    d = x * x + inv2
    _acc(1.0 / (d * d), &s, &c)
    for k in range(1, n + 1):
        wk = x + k * inv
        d = wk * wk + inv2
        _acc(inv / (d * d), &s, &c)
    return 0.5 * (s + c)
