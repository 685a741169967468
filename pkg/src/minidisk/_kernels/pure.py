"""Pure-NumPy kernel lane.

The three hot kernels shared by every higher-level routine:

* ``dzh_batch``   -- complex rate of the Gauss-angle potential,
                     (1/2) [ (z^2 + n^-2)^-2 + (1/n) sum_{k=1..n} ((z + k/n)^2 + n^-2)^-2 ]
* ``h_axis_batch`` -- its exact antiderivative restricted to the real axis,
                     (n^2/4) [ n atan(n x) + x/(x^2 + n^-2)
                               + (1/n) sum_k ( n atan(n w_k) + w_k/(w_k^2 + n^-2) ) ],
                     w_k = x + k/n
* ``dxu_axis_batch`` -- the real-axis restriction of ``dzh_batch`` (all terms real)

Term sums run over n+1 poles and reach magnitude n^4 while downstream
consumers difference values at nearby arguments, so the reduction over k is
compensated: Neumaier running sums in the batch paths (vectorised over the
sample axis), exact Shewchuk summation (``math.fsum``) in the scalar paths.
"""

import math

import numpy as np


def _two_sum_acc(s, c, term):
    # Knuth two-sum accumulation step (branch-free), elementwise over the batch
    t = s + term
    z = t - s
    c += (s - (t - z)) + (term - z)
    return t, c


def dzh_batch(n, xs, ys):
    """Complex angle-potential rate at z = xs + i*ys; returns (re, im) arrays."""
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    ys = np.ascontiguousarray(ys, dtype=np.float64)
    inv = 1.0 / n
    inv2 = inv * inv
    y2 = ys * ys
    sr = np.zeros_like(xs)
    cr = np.zeros_like(xs)
    si = np.zeros_like(xs)
    ci = np.zeros_like(xs)
    for k in range(n + 1):
        w = 1.0 if k == 0 else inv
        wr = xs + k * inv
        dr = wr * wr - y2 + inv2
        di = 2.0 * wr * ys
        d2r = dr * dr - di * di
        d2i = 2.0 * dr * di
        rec = w / (d2r * d2r + d2i * d2i)
        sr, cr = _two_sum_acc(sr, cr, d2r * rec)
        si, ci = _two_sum_acc(si, ci, -d2i * rec)
    return 0.5 * (sr + cr), 0.5 * (si + ci)


def h_axis_batch(n, xs):
    """Axis turning angle u(x, 0) for an array of abscissae."""
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    inv = 1.0 / n
    inv2 = inv * inv
    s = np.zeros_like(xs)
    c = np.zeros_like(xs)
    for k in range(n + 1):
        w = 1.0 if k == 0 else inv
        wk = xs + k * inv
        term = w * (n * np.arctan(n * wk) + wk / (wk * wk + inv2))
        s, c = _two_sum_acc(s, c, term)
    return 0.25 * n * n * (s + c)


def dxu_axis_batch(n, xs):
    """Axis turning rate du/dx (x, 0); equals the angle-potential rate on the axis."""
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    inv = 1.0 / n
    inv2 = inv * inv
    s = np.zeros_like(xs)
    c = np.zeros_like(xs)
    for k in range(n + 1):
        w = 1.0 if k == 0 else inv
        wk = xs + k * inv
        d = wk * wk + inv2
        s, c = _two_sum_acc(s, c, w / (d * d))
    return 0.5 * (s + c)


def dzh_point(n, x, y):
    """Scalar angle-potential rate; exact-rounded term sum via math.fsum."""
    inv = 1.0 / n
    inv2 = inv * inv
    re_terms = []
    im_terms = []
    for k in range(n + 1):
        w = 1.0 if k == 0 else inv
        wr = x + k * inv
        dr = wr * wr - y * y + inv2
        di = 2.0 * wr * y
        d2r = dr * dr - di * di
        d2i = 2.0 * dr * di
        den = d2r * d2r + d2i * d2i
        re_terms.append(w * d2r / den)
        im_terms.append(-w * d2i / den)
    return complex(0.5 * math.fsum(re_terms), 0.5 * math.fsum(im_terms))


def h_axis_point(n, x):
    inv = 1.0 / n
    inv2 = inv * inv
    terms = []
    for k in range(n + 1):
        w = 1.0 if k == 0 else inv
        wk = x + k * inv
        terms.append(w * (n * math.atan(n * wk) + wk / (wk * wk + inv2)))
    return 0.25 * n * n * math.fsum(terms)


def dxu_axis_point(n, x):
    inv = 1.0 / n
    inv2 = inv * inv
    terms = []
    for k in range(n + 1):
        w = 1.0 if k == 0 else inv
        wk = x + k * inv
        d = wk * wk + inv2
        terms.append(w / (d * d))
    return 0.5 * math.fsum(terms)
