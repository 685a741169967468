"""The analytic data behind the immersion family.

Everything derives from one holomorphic function per family member: the
angle-potential rate

    (1/2) [ (z^2 + n^-2)^-2 + (1/n) sum_{k=1..n} ((z + k/n)^2 + n^-2)^-2 ]

whose antiderivative splits as u + i v.  u is the turning angle of the Gauss
direction (radians); v is the logarithmic stretch factor.  On the axis the
antiderivative has the closed form evaluated by ``axis_turn`` and v(x, 0) = 0
exactly.  Off the axis, values come from the axis closed form plus a vertical
path integral of the rate; the path stays inside the strip, where the rate is
holomorphic, so the value is path-independent.  The complex closed form is
deliberately not used off the axis: its arctan branch cuts pass near the
strip, while the vertical-leg quadrature has no branch issue.

Coefficients are real, so conj(z) maps to conj of the value: u is even and v
is odd in y.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .domain import X_MAX, X_MIN, DomainRangeError, contains
from .quadrature import DEFAULT_ABS_TOL, integrate

POLE_GUARD_DISTANCE = 1e-14


class PoleSingularityError(ValueError):
    """Evaluation attempted (numerically) on a pole of the rate function."""


@dataclass(frozen=True)
class HolomorphicSample:
    """Angle-potential value at one strip point: u + iv, the local rate, and
    the propagated quadrature error bound."""

    u: float
    v: float
    dzh: complex
    quad_error: float


def _check_pole_distance(spec, x, y):
    n = spec.n
    # only the two or three nearest pole columns can be close
    k_mid = int(round(-x * n))
    for k in range(max(0, k_mid - 1), min(n, k_mid + 1) + 1):
        dx = x + k / n
        for sgn in (1.0, -1.0):
            dy = y - sgn / n
            if dx * dx + dy * dy < POLE_GUARD_DISTANCE**2:
                raise PoleSingularityError(
                    f"z=({x!r}, {y!r}) within {POLE_GUARD_DISTANCE} of pole "
                    f"(-{k}/{n}, {sgn:+g}/{n})"
                )


def angle_rate(spec, z, checked=True):
    """Complex rate of the angle potential at z (compensated pole-term sum).

    ``checked=False`` skips the strip-membership test for off-domain
    diagnostics; the pole guard always applies.
    """
    z = complex(z)
    x, y = z.real, z.imag
    _check_pole_distance(spec, x, y)
    if checked and not contains(spec, x, y):
        raise DomainRangeError(f"z=({x!r}, {y!r}) outside the closed strip")
    return _kernels.dzh_point(spec.n, x, y)


def angle_rate_grid(spec, xs, ys, checked=True):
    """Vectorised :func:`angle_rate` over paired coordinate arrays."""
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    if checked:
        for x, y in zip(xs.ravel(), ys.ravel()):
            if not contains(spec, x, y):
                raise DomainRangeError(f"({x!r}, {y!r}) outside the closed strip")
    re, im = _kernels.dzh_batch(spec.n, xs.ravel(), ys.ravel())
    return re.reshape(xs.shape) + 1j * im.reshape(xs.shape)


def _check_axis_range(x):
    if not X_MIN <= x <= X_MAX:
        raise DomainRangeError(f"x={x!r} outside [{X_MIN}, {X_MAX}]")


def axis_turn(spec, x):
    """Turning angle u(x, 0) from the exact axis antiderivative.

    The additive constant is the antiderivative's own (u(0, 0) != 0); only
    the immersion is pinned at the base point.
    """
    _check_axis_range(x)
    return _kernels.h_axis_point(spec.n, x)


def axis_turn_grid(spec, xs):
    xs = np.asarray(xs, dtype=np.float64)
    for x in xs.ravel():
        _check_axis_range(x)
    return _kernels.h_axis_batch(spec.n, xs.ravel()).reshape(xs.shape)


def axis_turn_rate(spec, x):
    """du/dx on the axis; strictly positive (u is increasing in x)."""
    _check_axis_range(x)
    return _kernels.dxu_axis_point(spec.n, x)


def axis_turn_rate_grid(spec, xs):
    xs = np.asarray(xs, dtype=np.float64)
    for x in xs.ravel():
        _check_axis_range(x)
    return _kernels.dxu_axis_batch(spec.n, xs.ravel()).reshape(xs.shape)


def evaluate(spec, p, tol=DEFAULT_ABS_TOL):
    """Angle potential u + iv at a strip point.

    Axis closed form plus a vertical-leg integral of i * rate; v(x, 0) is
    exactly zero by construction.
    """
    u0 = axis_turn(spec, p.x)
    rate_here = angle_rate(spec, complex(p.x, p.y))
    if p.y == 0.0:
        return HolomorphicSample(u0, 0.0, rate_here, 0.0)

    n = spec.n
    x = p.x

    def leg_rate(ss):
        re, im = _kernels.dzh_batch(n, np.full(ss.shape, x), ss)
        return np.column_stack((-im, re))  # d(u, v)/ds along the vertical leg

    result = integrate(leg_rate, 0.0, p.y, abs_tol=tol, rel_tol=1e-13)
    du, dv = result.value
    return HolomorphicSample(float(u0 + du), float(dv), rate_here, result.error_estimate)
