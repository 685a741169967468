"""The conformal immersion of the strip and its horizontal slices.

A strip point (x, y) maps to

    ( int_0^y cosh v sin u ds,  -int_0^y cosh v cos u ds,  x )

where u, v are the turning angle and stretch from :mod:`minidisk.weierstrass`
sampled along the vertical leg at fixed x.  The third coordinate is x exactly
(the axis maps to (0, 0, x) and the vertical-leg integrand has no vertical
component), which is what makes horizontal slices of the image the images of
vertical lines in the strip.

Tangent frame at a point:

    dF/dx = (sinh v cos u,  sinh v sin u, 1)
    dF/dy = (cosh v sin u, -cosh v cos u, 0)

so the frame is orthogonal with common length cosh v, the unit normal is
(sech v cos u, sech v sin u, -tanh v), and the Gauss curvature is
-(rate magnitude)^2 / cosh^4 v.

The vertical-leg integrals nest: the position integrand needs u(s), v(s)
which are themselves integrals of the rate.  To keep that linear rather than
quadratic, each leg is integrated in two stages over one shared partition.
Stage 1 adaptively resolves u, v increments panel by panel.  Stage 2 then
integrates the position over the *accepted* stage-1 panels; within such a
panel the rate is captured by the embedded rule's implicit interpolant, so
u, v at the panel's own abscissae come from the precomputed antiderivative
matrix applied to the stage-1 node values (no fresh rate evaluations), and
only panels whose position rule still disagrees refine with anchored
sub-rules.  Both stages get half the error budget.

Where the stretch v grows large the in-plane coordinates grow like sinh v;
slice columns are cut off once they leave the ball of radius
``POSITION_CAP`` (the surface has left any region of interest by then) and
the cut is recorded on the result.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .domain import DomainPoint, y_boundary
from .quadrature import (
    ANTIDERIVATIVE_MATRIX,
    DEFAULT_ABS_TOL,
    GAUSS_WEIGHTS,
    KRONROD_WEIGHTS,
    NODES,
    CompensatedSum,
    IntegrandEvaluationError,
    QuadratureConvergenceError,
    adaptive_panels,
)
from .weierstrass import HolomorphicSample, angle_rate, axis_turn

POSITION_CAP = 1e6
_REL_FLOOR = 1e-13
_COSH_SAFE = 690.0  # cosh argument kept clear of double overflow at ~710


@dataclass(frozen=True)
class ImmersionPoint:
    position: np.ndarray  # (3,)
    dFx: np.ndarray  # (3,)
    dFy: np.ndarray  # (3,)
    normal: np.ndarray  # unit (3,)
    K: float
    logK_mag: float  # log |K|, finite even where K under/overflows
    sample: HolomorphicSample
    quad_error: float


@dataclass(frozen=True)
class SliceCurve:
    """One horizontal slice of the image, on a symmetric eta grid."""

    n: int
    x: float
    etas: np.ndarray
    ys: np.ndarray
    points: np.ndarray  # (m, 3); NaN rows beyond a truncation cut
    us: np.ndarray
    vs: np.ndarray
    Ks: np.ndarray
    valid: np.ndarray  # bool (m,): position finite and within POSITION_CAP
    base_tangent: np.ndarray  # (sin u0, -cos u0) in the slice plane
    graph_margin: float  # min_j cos(u_j - u0); graph over base_tangent iff > 0
    quad_error: float
    truncated: bool


@dataclass
class _LegProfile:
    ys: np.ndarray
    us: np.ndarray
    vs: np.ndarray
    pos: np.ndarray  # (len(ys), 2); NaN beyond n_valid
    n_valid: int
    h_error: float
    f_error: float


def _log_cosh(v):
    av = abs(v)
    return av + math.log1p(math.exp(-2.0 * av)) - math.log(2.0)


def _curvature_from(rate_mag, v):
    """(K, log|K|) from the local rate magnitude and stretch; K <= 0."""
    log_mag = 2.0 * math.log(rate_mag) - 4.0 * _log_cosh(v)
    if abs(v) > 300.0:
        k = -math.exp(log_mag) if log_mag > -745.0 else -0.0
    else:
        r = rate_mag / math.cosh(v) ** 2
        k = -(r * r)
    return k, log_mag


def _normal_from(u, v):
    sech = 1.0 / math.cosh(v) if abs(v) < _COSH_SAFE else 0.0
    return np.array([sech * math.cos(u), sech * math.sin(u), -math.tanh(v)])


def _frame_from(u, v):
    sh, ch = math.sinh(v), math.cosh(v)
    dfx = np.array([sh * math.cos(u), sh * math.sin(u), 1.0])
    dfy = np.array([ch * math.sin(u), -ch * math.cos(u), 0.0])
    return dfx, dfy


def _leg_rate_factory(n, x):
    def leg_rate(ss):
        re, im = _kernels.dzh_batch(n, np.full(ss.shape, x), ss)
        return np.column_stack((-im, re))

    return leg_rate


def _leg_profile(spec, x, ys, tol, want_positions=True, position_cap=None):
    """Cumulative u, v (and in-plane position) along one vertical leg.

    ``ys`` runs from 0 monotonically outward (either sign).  Stage-1 panel
    budgets are proportional to width; failed panels refine adaptively.
    """
    ys = np.asarray(ys, dtype=np.float64)
    if ys[0] != 0.0:
        raise ValueError("leg must start at y=0")
    n = spec.n
    npts = len(ys)
    u0 = _kernels.h_axis_point(n, x)
    us = np.full(npts, u0)
    vs = np.zeros(npts)
    pos = np.full((npts, 2), np.nan)
    pos[0] = 0.0
    total = abs(ys[-1])
    if npts == 1 or total == 0.0:
        return _LegProfile(ys, us, vs, pos, npts, 0.0, 0.0)

    leg_rate = _leg_rate_factory(n, x)
    tol_h = 0.5 * tol
    tol_f = 0.5 * tol

    # --- stage 1: resolve u, v panel by panel -----------------------------
    # panels[i] holds, per breakpoint interval, (lo, hi, sign, du, dv,
    # du_nodes, dv_nodes) tuples in path order; lo < hi always, sign orients
    # the increment along the leg, *_nodes are the rate components at the
    # panel's 15 ascending abscissae (reused by stage 2).
    lo_all = np.minimum(ys[:-1], ys[1:])
    hi_all = np.maximum(ys[:-1], ys[1:])
    signs = np.where(ys[1:] >= ys[:-1], 1.0, -1.0)
    widths = hi_all - lo_all
    mids = 0.5 * (lo_all + hi_all)
    halves = 0.5 * widths
    nodes = mids[:, None] + halves[:, None] * NODES[None, :]  # (K,15)
    re, im = _kernels.dzh_batch(n, np.full(nodes.size, x), nodes.ravel())
    re = re.reshape(nodes.shape)
    im = im.reshape(nodes.shape)
    du_k = halves * ((-im) @ KRONROD_WEIGHTS)
    dv_k = halves * (re @ KRONROD_WEIGHTS)
    du_g = halves * ((-im) @ GAUSS_WEIGHTS)
    dv_g = halves * (re @ GAUSS_WEIGHTS)
    errs = np.maximum(np.abs(du_k - du_g), np.abs(dv_k - dv_g))
    budgets = np.maximum(tol_h * widths / total, 1e-300)

    h_err = CompensatedSum()
    panels_per_interval = []
    for i in range(npts - 1):
        if widths[i] == 0.0:
            panels_per_interval.append([])
            continue
        ok = errs[i] <= max(budgets[i], _REL_FLOOR * max(abs(du_k[i]), abs(dv_k[i])))
        if ok:
            panels_per_interval.append(
                [(lo_all[i], hi_all[i], signs[i], du_k[i], dv_k[i], -im[i], re[i])]
            )
            h_err.add(errs[i])
        else:
            sub, _, n_failed, worst = adaptive_panels(
                leg_rate, lo_all[i], hi_all[i], budgets[i], _REL_FLOOR
            )
            if n_failed:
                raise QuadratureConvergenceError(
                    None,
                    f"leg at x={x!r} over [{lo_all[i]}, {hi_all[i]}] unresolved "
                    f"(worst discrepancy {worst:.3e})",
                )
            ordered = sub if signs[i] > 0 else list(reversed(sub))
            panels_per_interval.append(
                [
                    (p[0], p[1], signs[i], p[2][0], p[2][1], p[4][:, 0], p[4][:, 1])
                    for p in ordered
                ]
            )
            for p in sub:
                h_err.add(p[3])

    u_acc = CompensatedSum(u0)
    v_acc = CompensatedSum()
    flat = []  # (lo, hi, sign, u_at_anchor, v_at_anchor, interval_index)
    rate_u = []
    rate_v = []
    for i, plist in enumerate(panels_per_interval):
        for lo, hi, sgn, du, dv, run, rvn in plist:
            flat.append((lo, hi, sgn, u_acc.total, v_acc.total, i))
            rate_u.append(run)
            rate_v.append(rvn)
            u_acc.add(sgn * du)
            v_acc.add(sgn * dv)
        us[i + 1] = u_acc.total
        vs[i + 1] = v_acc.total

    if not want_positions:
        return _LegProfile(ys, us, vs, pos, 1, h_err.total, 0.0)

    # --- stage 2: position over the accepted stage-1 partition ------------
    # u, v at a panel's own nodes come from integrating the panel's implicit
    # rate interpolant (antiderivative matrix), so no new rate evaluations
    # are spent; the position rule's own K/G discrepancy still gauges it.
    P = len(flat)
    plo = np.array([p[0] for p in flat])
    phi = np.array([p[1] for p in flat])
    psign = np.array([p[2] for p in flat])
    pu = np.array([p[3] for p in flat])
    pv = np.array([p[4] for p in flat])
    phalf = 0.5 * (phi - plo)
    rate_u = np.asarray(rate_u)  # (P,15) du/ds at ascending panel nodes
    rate_v = np.asarray(rate_v)
    from_lo = ANTIDERIVATIVE_MATRIX.T  # values @ from_lo: integral from lo
    from_hi = (ANTIDERIVATIVE_MATRIX - KRONROD_WEIGHTS[None, :]).T
    up = psign[:, None] > 0
    u_out = pu[:, None] + phalf[:, None] * np.where(
        up, rate_u @ from_lo, rate_u @ from_hi
    )
    v_out = pv[:, None] + phalf[:, None] * np.where(
        up, rate_v @ from_lo, rate_v @ from_hi
    )
    with np.errstate(over="ignore", invalid="ignore"):
        ch = np.cosh(v_out)
        m1 = ch * np.sin(u_out)
        m2 = -ch * np.cos(u_out)
        f1_k = phalf * (m1 @ KRONROD_WEIGHTS)
        f2_k = phalf * (m2 @ KRONROD_WEIGHTS)
        f1_g = phalf * (m1 @ GAUSS_WEIGHTS)
        f2_g = phalf * (m2 @ GAUSS_WEIGHTS)
        ferrs = np.maximum(np.abs(f1_k - f1_g), np.abs(f2_k - f2_g))
    fbudgets = np.maximum(tol_f * (phi - plo) / total, 1e-300)

    def refine_position(idx):
        """Adaptive fallback for one stage-2 panel; anchored inner sub-rule."""
        lo, hi, sgn, ua, va, _ = flat[idx]
        anchor = lo if sgn > 0 else hi

        def integrand(ss):
            ih = 0.5 * (ss - anchor)
            im_ = 0.5 * (ss + anchor)
            nod = im_[:, None] + ih[:, None] * NODES[None, :]
            r_, i_ = _kernels.dzh_batch(n, np.full(nod.size, x), nod.ravel())
            r_ = r_.reshape(nod.shape)
            i_ = i_.reshape(nod.shape)
            uu = ua + ih * ((-i_) @ KRONROD_WEIGHTS)
            vv = va + ih * (r_ @ KRONROD_WEIGHTS)
            chv = np.cosh(vv)
            return np.column_stack((chv * np.sin(uu), -chv * np.cos(uu)))

        sub, _, n_failed, worst = adaptive_panels(
            integrand, lo, hi, fbudgets[idx], _REL_FLOOR
        )
        if n_failed:
            raise QuadratureConvergenceError(
                None,
                f"position leg at x={x!r} over [{lo}, {hi}] unresolved "
                f"(worst discrepancy {worst:.3e})",
            )
        val = np.sum([p[2] for p in sub], axis=0)
        err = float(np.sum([p[3] for p in sub]))
        return val[0], val[1], err

    f1_acc = CompensatedSum()
    f2_acc = CompensatedSum()
    f_err = CompensatedSum()
    n_valid = 1
    truncated = False
    j = 0
    for i in range(npts - 1):
        plist = panels_per_interval[i]
        if truncated:
            break
        try:
            for _ in plist:
                lo, hi, sgn, ua, va, _ = flat[j]
                if abs(va) > _COSH_SAFE:
                    raise OverflowError("stretch too large for position arithmetic")
                ok = np.isfinite(f1_k[j]) and np.isfinite(f2_k[j]) and ferrs[j] <= max(
                    fbudgets[j], _REL_FLOOR * max(abs(f1_k[j]), abs(f2_k[j]))
                )
                if ok:
                    d1, d2, e = f1_k[j], f2_k[j], ferrs[j]
                else:
                    d1, d2, e = refine_position(j)
                f1_acc.add(psign[j] * d1)
                f2_acc.add(psign[j] * d2)
                f_err.add(e)
                j += 1
        except (OverflowError, IntegrandEvaluationError):
            truncated = True
            break
        p1, p2 = f1_acc.total, f2_acc.total
        if not (np.isfinite(p1) and np.isfinite(p2)):
            truncated = True
            break
        pos[i + 1] = (p1, p2)
        n_valid = i + 2
        if position_cap is not None and max(abs(p1), abs(p2)) > position_cap:
            truncated = True
            break

    return _LegProfile(ys, us, vs, pos, n_valid, h_err.total, f_err.total)


def immerse(spec, p, tol=DEFAULT_ABS_TOL):
    """Map a strip point through the immersion; returns an ImmersionPoint."""
    rate_here = angle_rate(spec, complex(p.x, p.y))
    if p.y == 0.0:
        u = axis_turn(spec, p.x)
        sample = HolomorphicSample(u, 0.0, rate_here, 0.0)
        position = np.array([0.0, 0.0, p.x])
        quad_error = 0.0
        u_end, v_end = u, 0.0
    else:
        prof = _leg_profile(spec, p.x, np.array([0.0, p.y]), tol)
        if prof.n_valid < 2:
            raise OverflowError(
                f"position at (x={p.x!r}, y={p.y!r}) exceeds floating-point range"
            )
        u_end, v_end = prof.us[-1], prof.vs[-1]
        quad_error = prof.h_error + prof.f_error
        sample = HolomorphicSample(u_end, v_end, rate_here, quad_error)
        position = np.array([prof.pos[-1, 0], prof.pos[-1, 1], p.x])
    dfx, dfy = _frame_from(u_end, v_end)
    k, log_mag = _curvature_from(abs(rate_here), v_end)
    return ImmersionPoint(
        position=position,
        dFx=dfx,
        dFy=dfy,
        normal=_normal_from(u_end, v_end),
        K=k,
        logK_mag=log_mag,
        sample=sample,
        quad_error=quad_error,
    )


def tangent_frame(spec, p, tol=DEFAULT_ABS_TOL):
    """(dF/dx, dF/dy) at a strip point."""
    from .weierstrass import evaluate

    s = evaluate(spec, p, tol)
    return _frame_from(s.u, s.v)


def unit_normal(spec, p, tol=DEFAULT_ABS_TOL):
    """Unit normal; computed stably as (sech v cos u, sech v sin u, -tanh v)."""
    from .weierstrass import evaluate

    s = evaluate(spec, p, tol)
    return _normal_from(s.u, s.v)


def gauss_curvature(spec, p, tol=DEFAULT_ABS_TOL):
    """(K, log|K|) at a strip point; K <= 0, log form safe for huge stretch."""
    from .weierstrass import evaluate

    s = evaluate(spec, p, tol)
    return _curvature_from(abs(s.dzh), s.v)


def boundary_separation(spec, x, tol=DEFAULT_ABS_TOL):
    """In-plane distances |F(x, +width) - F(x, 0)| and |F(x, -width) - F(x, 0)|."""
    yb = y_boundary(spec, x)
    seps = []
    for sgn in (1.0, -1.0):
        prof = _leg_profile(spec, x, np.array([0.0, sgn * yb]), tol)
        if prof.n_valid < 2:
            seps.append(math.inf)
        else:
            seps.append(math.hypot(prof.pos[-1, 0], prof.pos[-1, 1]))
    return seps[0], seps[1]


def horizontal_slice(spec, x, m, tol=DEFAULT_ABS_TOL):
    """The slice at height x on a symmetric m-point eta grid (m odd >= 3)."""
    if m < 3 or m % 2 == 0:
        raise ValueError(f"m must be odd and >= 3, got {m}")
    etas = np.linspace(-1.0, 1.0, m)
    yb = y_boundary(spec, x)
    ys = etas * yb
    ic = m // 2

    prof_up = _leg_profile(spec, x, ys[ic:], tol, position_cap=POSITION_CAP)
    prof_dn = _leg_profile(spec, x, ys[ic::-1], tol, position_cap=POSITION_CAP)

    us = np.concatenate((prof_dn.us[:0:-1], prof_up.us))
    vs = np.concatenate((prof_dn.vs[:0:-1], prof_up.vs))
    pos = np.vstack((prof_dn.pos[:0:-1], prof_up.pos))
    points = np.column_stack((pos, np.full(m, x)))
    valid = np.isfinite(pos).all(axis=1)
    u0 = prof_up.us[0]
    base_tangent = np.array([math.sin(u0), -math.cos(u0)])
    graph_margin = float(np.min(np.cos(us - u0)))

    rate_re, rate_im = _kernels.dzh_batch(spec.n, np.full(m, x), ys)
    mags = np.hypot(rate_re, rate_im)
    ks = np.array([_curvature_from(mg, v)[0] for mg, v in zip(mags, vs)])

    quad_error = (
        prof_up.h_error + prof_up.f_error + prof_dn.h_error + prof_dn.f_error
    )
    return SliceCurve(
        n=spec.n,
        x=float(x),
        etas=etas,
        ys=ys,
        points=points,
        us=us,
        vs=vs,
        Ks=ks,
        valid=valid,
        base_tangent=base_tangent,
        graph_margin=graph_margin,
        quad_error=quad_error,
        truncated=not bool(valid.all()),
    )


def mirror_point(p):
    """The strip point reflected across the axis (y -> -y)."""
    return DomainPoint(p.x, -p.y, -p.eta)
