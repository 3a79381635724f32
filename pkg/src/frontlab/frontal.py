"""Frontal surfaces: normal resolution, the degeneracy function, and the
singular curve.

The degeneracy function lambda := det_g(f_u, f_v, nu) cuts out the
singular set; its nondegenerate zero locus is traced by a
predictor-corrector and differentiated implicitly to any jet order, so
all downstream invariants get exact derivatives along the curve.

When no normal field is supplied, one is resolved from the surface:
away from the singular set it is the normalized metric cross product of
the tangents.  At a singular point the cross product vanishes on the
whole singular curve, so the smooth unit normal is recovered by jet
division: every component of f_u x_g f_v vanishes simply on the curve,
and dividing the jets by a local curve-defining function leaves a
nonvanishing smooth direction field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from .ambient import AmbientChart
from .errors import (DeflationError, DegenerateSingularityError,
                     NormalResolutionError)
from .expressions import evaluate_jet
from .jets import Jet, deflate
from .specfile import SurfaceSpec

#: f-jet order used when a point is analyzed; one above the default working
#: order so every chained derivative keeps enough terms.
DEFAULT_POINT_ORDER = 6

#: internal headroom above the user-facing order cap: the adjugate normal
#: needs two extra derivative orders of f.
INTERNAL_MAX_ORDER = 9

#: |det(gamma', eta)| below this (relative to the factor norms) flags a
#: singular point of the second kind.
KIND_DET_RTOL = 1e-8

#: smallest |grad lambda| (relative) below which a singular point is
#: treated as degenerate and analysis stops.
DEGENERACY_RTOL = 1e-8

Vec = Tuple[Jet, Jet, Jet]


def _vec_value(v) -> np.ndarray:
    return np.array([c.value for c in v], dtype=float)


@dataclass(frozen=True)
class FrontalSurface:
    """A surface spec with a resolved unit normal field."""

    spec: SurfaceSpec
    normal_mode: str  # "supplied" | "adjugate"

    @property
    def chart(self) -> AmbientChart:
        return self.spec.chart

    @property
    def params(self):
        return self.spec.params

    def with_params(self, overrides) -> "FrontalSurface":
        return FrontalSurface(self.spec.with_params(overrides), self.normal_mode)

    # -- raw jet evaluation -------------------------------------------------

    def f_jets(self, p, order: int) -> Vec:
        return tuple(evaluate_jet(e, p, order, self.params,
                                  max_order=INTERNAL_MAX_ORDER)
                     for e in self.spec.f)

    def nu_jets(self, p, order: int) -> Vec:
        """Jets of the unit normal field at p (order one below f where derived)."""
        if self.normal_mode == "supplied":
            return tuple(evaluate_jet(e, p, order, self.params,
                                      max_order=INTERNAL_MAX_ORDER)
                         for e in self.spec.normal)
        return _adjugate_normal_jets(self, p, order)

    def lambda_jet(self, p, order: int) -> Jet:
        """Jet of lambda = det_g(f_u, f_v, nu) at p."""
        f = self.f_jets(p, order + 1)
        fu = tuple(c.partial(0) for c in f)
        fv = tuple(c.partial(1) for c in f)
        nu = tuple(c.truncated(order) for c in self.nu_jets(p, order))
        ft = tuple(c.truncated(order) for c in f)
        return self.chart.det_g(ft, fu, fv, nu)

    def lambda_value_grad(self, p) -> Tuple[float, float, float]:
        j = self.lambda_jet(p, 1)
        return j.value, j.coeff(1, 0), j.coeff(0, 1)


@dataclass(frozen=True)
class LocalPoint:
    """All jets needed to analyze one parameter point."""

    surface: FrontalSurface
    p: Tuple[float, float]
    order: int
    f: Vec            # order `order`
    fu: Vec           # order-1
    fv: Vec
    nu: Vec           # order-1
    lam: Jet          # order-1
    J: np.ndarray     # 3x2 differential at p
    svals: np.ndarray
    eta0: np.ndarray  # unit kernel direction (rank-one points)
    e0: np.ndarray    # unit direction of largest stretch
    rank: int

    @property
    def chart(self):
        return self.surface.chart

    @property
    def lam_grad(self):
        return np.array([self.lam.coeff(1, 0), self.lam.coeff(0, 1)])

    @property
    def degenerate(self) -> bool:
        scale = max(1.0, self.lam.max_abs_coeff())
        return bool(np.linalg.norm(self.lam_grad) < DEGENERACY_RTOL * scale)

    def is_singular(self, rtol=1e-8) -> bool:
        return abs(self.lam.value) < rtol * max(1.0, self.lam.max_abs_coeff())


def local_point(F: FrontalSurface, p, order: int = DEFAULT_POINT_ORDER) -> LocalPoint:
    p = (float(p[0]), float(p[1]))
    f = F.f_jets(p, order)
    fu = tuple(c.partial(0) for c in f)
    fv = tuple(c.partial(1) for c in f)
    nu = F.nu_jets(p, order - 1)
    ft = tuple(c.truncated(order - 1) for c in f)
    lam = F.chart.det_g(ft, fu, fv, tuple(c.truncated(order - 1) for c in nu))
    J = np.column_stack([_vec_value(fu), _vec_value(fv)])
    U, S, Vt = np.linalg.svd(J, full_matrices=False)
    eta0 = Vt[1]
    e0 = Vt[0]
    # deterministic sign convention before any orientation fix
    for vec in (eta0, e0):
        i = int(np.argmax(np.abs(vec)))
        if vec[i] < 0:
            vec *= -1.0
    scale = max(S[0], 1e-300)
    if S[0] < 1e-10 * max(1.0, max(c.max_abs_coeff() for c in f)):
        rank = 0
    elif S[1] < 1e-7 * scale:
        rank = 1
    else:
        rank = 2
    return LocalPoint(F, p, order, f, fu, fv, nu, lam, J, S, eta0, e0, rank)


# -- normal resolution ---------------------------------------------------------


def resolve_normal(spec: SurfaceSpec, grid: int = 5,
                   tol: float = 1e-6) -> FrontalSurface:
    """Validate a supplied normal or set up the derived one.

    A supplied normal must be unit length and orthogonal to both tangents
    on a validation grid over the domain.  Without one, the normalized
    metric cross product of the tangents is used, extended smoothly over
    the singular set by jet division.
    """
    mode = "supplied" if spec.normal is not None else "adjugate"
    F = FrontalSurface(spec, mode)
    if mode == "supplied":
        (ulo, uhi), (vlo, vhi) = spec.domain
        us = np.linspace(ulo, uhi, grid)
        vs = np.linspace(vlo, vhi, grid)
        for u in us:
            for v in vs:
                fj = F.f_jets((u, v), 1)
                nj = F.nu_jets((u, v), 1)
                x = tuple(c.truncated(0) for c in fj)
                n0 = tuple(c.truncated(0) for c in nj)
                fu = tuple(c.partial(0) for c in fj)
                fv = tuple(c.partial(1) for c in fj)
                ch = spec.chart
                nn = ch.inner_product(x, n0, n0).value
                scale = max(1.0, math.sqrt(max(ch.inner_product(x, fu, fu).value, 0.0)),
                            math.sqrt(max(ch.inner_product(x, fv, fv).value, 0.0)))
                if abs(nn - 1.0) > tol:
                    raise NormalResolutionError(
                        f"supplied normal is not unit length at (u,v)=({u:g},{v:g}): "
                        f"|nu|^2 = {nn:.6g}")
                for name, t in (("f_u", fu), ("f_v", fv)):
                    ip = ch.inner_product(x, n0, t).value
                    if abs(ip) > tol * scale:
                        raise NormalResolutionError(
                            f"supplied normal is not orthogonal to {name} at "
                            f"(u,v)=({u:g},{v:g}): <nu,{name}> = {ip:.6g}")
    return F


def _adjugate_normal_jets(F: FrontalSurface, p, order: int) -> Vec:
    """Unit normal jets from the tangent cross product, valid on and off
    the singular set."""
    ch = F.chart
    f = F.f_jets(p, order + 2)
    fu = tuple(c.partial(0) for c in f)
    fv = tuple(c.partial(1) for c in f)
    ft = tuple(c.truncated(order + 1) for c in f)
    w = ch.cross_g(ft, fu, fv)
    wval = _vec_value(w)
    J = np.column_stack([_vec_value(fu), _vec_value(fv)])
    s = np.linalg.svd(J, compute_uv=False)
    if s[0] < 1e-12:
        raise NormalResolutionError(
            f"surface has rank-0 differential at (u,v)=({p[0]:g},{p[1]:g})")
    if s[1] > 1e-9 * s[0]:
        # immersive point: straightforward normalization
        n2 = ch.inner_product(ft, w, w)
        return tuple((c / n2.sqrt()).truncated(order) for c in w)
    return _normal_by_division(F, p, order, f, w)


def _normal_by_division(F: FrontalSurface, p, order: int, f: Vec, w: Vec) -> Vec:
    """Smooth unit normal at a singular point by dividing out the curve factor.

    Each component of w = f_u x_g f_v vanishes simply on the singular
    curve; composing with curve-graph coordinates and deflating the
    transverse variable leaves jets of a nonvanishing field proportional
    to the unit normal.
    """
    ch = F.chart
    grads = [np.array([c.coeff(1, 0), c.coeff(0, 1)]) for c in w]
    norms = [np.linalg.norm(g) for g in grads]
    istar = int(np.argmax(norms))
    if norms[istar] < 1e-10 * max(1.0, max(c.max_abs_coeff() for c in w)):
        raise NormalResolutionError(
            "tangent cross product vanishes to second order; the singularity "
            f"at (u,v)=({p[0]:g},{p[1]:g}) is degenerate beyond scope")
    defining = w[istar]
    try:
        axis, graph = solve_graph(defining)
    except DeflationError as exc:
        raise NormalResolutionError(
            f"singular set near (u,v)=({p[0]:g},{p[1]:g}) is not a smooth "
            f"curve: {exc}") from exc
    sub = _graph_substitution(axis, graph, order + 1)
    W = tuple(c.compose(sub) for c in w)
    try:
        d = tuple(deflate(c, 1) for c in W)
    except DeflationError as exc:
        raise NormalResolutionError(
            "tangent cross product is not divisible by the singular-curve "
            f"factor at (u,v)=({p[0]:g},{p[1]:g}): {exc}") from exc
    f_st = tuple(c.truncated(order + 1).compose(sub).truncated(order) for c in f)
    dt = tuple(c.truncated(order) for c in d)
    n2 = ch.inner_product(f_st, dt, dt)
    if n2.value <= 0:
        raise NormalResolutionError("degenerate normal direction after division")
    nu_st = tuple(c / n2.sqrt() for c in dt)
    # map back: s and tau as jets in the original chart offsets
    du = Jet.variable(0, 0.0, 2, order)
    dv = Jet.variable(1, 0.0, 2, order)
    if axis == 0:
        # s = du, tau = dv - W(du)
        s_expr, t_expr = du, dv - _lift(graph.truncated(order), 2, 0)
    else:
        # s = dv, tau = du - W(dv)
        s_expr, t_expr = dv, du - _lift(graph.truncated(order), 2, 1)
    return tuple(c.compose([s_expr, t_expr]) for c in nu_st)


def _lift(j1: Jet, nvars: int, slot: int) -> Jet:
    """Embed a univariate jet into an nvars-jet along one slot."""
    coeffs = {}
    for (k,), v in j1.coeffs.items():
        idx = [0] * nvars
        idx[slot] = k
        coeffs[tuple(idx)] = v
    return Jet(nvars, j1.order, coeffs)


def solve_graph(scalar: Jet) -> Tuple[int, Jet]:
    """Solve scalar(u, v) = 0 as a graph over the better-conditioned axis.

    Returns (axis, W): axis 0 means v = W(s) with s the u-offset, axis 1
    means u = W(s).  W is a univariate jet in s whose constant term is the
    transverse offset of the curve from the base point (near zero when the
    base already sits on the curve).  Jet-Newton doubles the valid order
    each sweep, so a handful of iterations suffices.
    """
    gu, gv = scalar.coeff(1, 0), scalar.coeff(0, 1)
    axis = 0 if abs(gv) >= abs(gu) else 1
    tvar = 1 - axis
    order = scalar.order
    s = Jet.variable(0, 0.0, 1, order)

    # float polish of the transverse offset at s = 0
    w0 = 0.0
    for _ in range(60):
        args = [None, None]
        args[axis] = Jet.constant(0.0, 1, order)
        args[tvar] = Jet.constant(w0, 1, order)
        val = scalar.compose([a.truncated(0) for a in args]).value
        d = scalar.partial(tvar)
        dval = d.compose([a.truncated(0) for a in args]).value
        if abs(dval) < 1e-14:
            raise DeflationError("zero transverse gradient while solving the curve graph")
        step = val / dval
        w0 -= step
        if abs(step) < 1e-16 * max(1.0, abs(w0)) or abs(val) < 1e-300:
            break

    W = Jet.constant(w0, 1, order)
    dscalar = scalar.partial(tvar)
    sweeps = max(3, int(math.ceil(math.log2(order + 1))) + 1)
    for _ in range(sweeps):
        args = [None, None]
        args[axis] = s
        args[tvar] = W
        val = scalar.compose(args)
        der = dscalar.compose([a.truncated(order - 1) for a in args])
        W = W - val / _pad(der, order)
    return axis, W


def _pad(j: Jet, order: int) -> Jet:
    if j.order >= order:
        return j.truncated(order)
    return Jet(j.nvars, order, dict(j.coeffs))


def _graph_substitution(axis: int, graph: Jet, order: int):
    """Offset jets (du, dv) as functions of curve coordinates (s, tau)."""
    s = Jet.variable(0, 0.0, 2, order)
    tau = Jet.variable(1, 0.0, 2, order)
    goff = _lift(graph.truncated(order), 2, 0) + tau
    if axis == 0:
        return [s, goff]
    return [goff, s]


# -- null directions and kinds ----------------------------------------------


def null_direction(F: FrontalSurface, p, lp: Optional[LocalPoint] = None) -> np.ndarray:
    """Unit kernel direction of df at a rank-one singular point.

    The sign makes {gamma', eta} positively oriented where the point is of
    the first kind; at second-kind points (eta parallel to the curve) the
    sign follows the curve direction instead.
    """
    lp = lp or local_point(F, p)
    if lp.rank == 0:
        raise DegenerateSingularityError(
            f"rank of df is 0 at (u,v)=({p[0]:g},{p[1]:g}); beyond scope")
    if lp.rank == 2:
        raise DegenerateSingularityError(
            f"point (u,v)=({p[0]:g},{p[1]:g}) is not singular")
    eta = lp.eta0.copy()
    g = lp.lam_grad
    gn = np.linalg.norm(g)
    if gn > 0:
        tangent = np.array([-g[1], g[0]]) / gn
        d = tangent[0] * eta[1] - tangent[1] * eta[0]
        if abs(d) > KIND_DET_RTOL:
            if d < 0:
                eta = -eta
        elif float(tangent @ eta) < 0:
            eta = -eta
    return eta


def point_kind(F: FrontalSurface, p, lp: Optional[LocalPoint] = None) -> str:
    """'first' or 'second' for a non-degenerate singular point."""
    lp = lp or local_point(F, p)
    if lp.degenerate:
        raise DegenerateSingularityError(
            f"singular point (u,v)=({p[0]:g},{p[1]:g}) is degenerate")
    g = lp.lam_grad
    tangent = np.array([-g[1], g[0]]) / np.linalg.norm(g)
    eta = lp.eta0
    d = tangent[0] * eta[1] - tangent[1] * eta[0]
    return "second" if abs(d) < KIND_DET_RTOL else "first"


# -- singular curve tracing ----------------------------------------------------


@dataclass
class SingularSample:
    """One corrected point on the singular curve."""

    p: Tuple[float, float]
    lambda_grad: Tuple[float, float]
    eta: Tuple[float, float]
    kind: str                 # "first" | "second"
    sign_dlambda_eta: int
    t: float                  # accumulated arclength of f(gamma)
    speed: float = 0.0        # |df(T)| at the sample

    def as_row(self):
        return (self.p[0], self.p[1], self.t, self.kind,
                self.lambda_grad[0], self.lambda_grad[1],
                self.eta[0], self.eta[1])


class TraceDiagnostic(Exception):
    """Raised when tracing must stop early; carries partial results."""

    def __init__(self, message, samples):
        super().__init__(message)
        self.samples = samples


def newton_to_curve(F: FrontalSurface, q, max_iter: int = 60):
    """Project a seed onto {lambda = 0} by Newton steps along grad lambda."""
    q = np.array([float(q[0]), float(q[1])])
    for _ in range(max_iter):
        val, lu, lv = F.lambda_value_grad(q)
        g = np.array([lu, lv])
        gn2 = float(g @ g)
        if gn2 < 1e-20:
            raise DegenerateSingularityError(
                f"gradient of lambda vanishes near seed ({q[0]:g},{q[1]:g})")
        if abs(val) < 1e-12 * max(1.0, math.sqrt(gn2)):
            return tuple(q)
        q = q - val * g / gn2
    raise DegenerateSingularityError(
        f"Newton projection onto the singular set did not converge from "
        f"({q[0]:g},{q[1]:g})")


def _sample_at(F: FrontalSurface, q, travel: np.ndarray, t: float) -> SingularSample:
    lp = local_point(F, q, order=3)
    g = lp.lam_grad
    gn = np.linalg.norm(g)
    tangent = np.array([-g[1], g[0]])
    tn = np.linalg.norm(tangent)
    T = tangent / tn if tn > 0 else travel
    if float(T @ travel) < 0:
        T = -T
    eta = lp.eta0.copy()
    d = T[0] * eta[1] - T[1] * eta[0]
    norms = 1.0
    if abs(d) < KIND_DET_RTOL * norms:
        kind = "second"
        if float(T @ eta) < 0:
            eta = -eta
    else:
        kind = "first"
        if d < 0:
            eta = -eta
    dl_eta = float(g @ eta)
    speed_vec = lp.J @ T
    x0 = tuple(c.truncated(0) for c in lp.f)
    if F.chart.euclidean:
        speed = float(np.linalg.norm(speed_vec))
    else:
        sv = tuple(Jet.constant(c, 2, 0) for c in speed_vec)
        speed = math.sqrt(max(F.chart.inner_product(x0, sv, sv).value, 0.0))
    return SingularSample(
        p=(float(q[0]), float(q[1])),
        lambda_grad=(float(g[0]), float(g[1])),
        eta=(float(eta[0]), float(eta[1])),
        kind=kind,
        sign_dlambda_eta=int(math.copysign(1, dl_eta)) if dl_eta != 0 else 0,
        t=t,
        speed=speed,
    )


def trace_singular_curve(F: FrontalSurface, seed, step: float = 0.05,
                         max_samples: int = 200,
                         direction: str = "both") -> List[SingularSample]:
    """Predictor-corrector trace of the singular curve from a seed.

    Samples are corrected to |lambda| < 1e-12 scale and carry the oriented
    null direction, the kind flag, and the accumulated arclength of the
    image curve (0 at the corrected seed, negative behind it).  Tracing
    stops at the domain boundary, after ``max_samples``, or when the
    gradient of lambda degenerates (partial results are then returned
    inside a :class:`TraceDiagnostic`).
    """
    if direction not in ("both", "forward", "backward"):
        raise ValueError("direction must be both/forward/backward")
    q0 = np.array(newton_to_curve(F, seed))
    _, lu0, lv0 = F.lambda_value_grad(q0)
    g0 = math.hypot(lu0, lv0)
    if g0 < 1e-12:
        raise DegenerateSingularityError("seed lies on a degenerate singular point")

    def run(sign: int) -> List[SingularSample]:
        out = []
        q = q0.copy()
        travel = sign * np.array([-lv0, lu0]) / g0
        t = 0.0
        prev = _sample_at(F, q, travel, 0.0)
        h = float(step)
        budget = max_samples if direction != "both" else max_samples // 2
        degenerate_msg = None
        prev_raw_tangent = None
        while len(out) < budget:
            val, lu, lv = F.lambda_value_grad(q)
            g = np.array([lu, lv])
            gn = np.linalg.norm(g)
            if gn < DEGENERACY_RTOL * max(1.0, g0):
                degenerate_msg = (f"gradient of lambda degenerates at "
                                  f"({q[0]:.6g},{q[1]:.6g})")
                break
            raw_tangent = np.array([-g[1], g[0]]) / gn
            if prev_raw_tangent is not None and \
                    float(raw_tangent @ prev_raw_tangent) < -0.5:
                # the gradient direction reversed between samples: an
                # isolated degenerate point sits inside the last step
                crossed = out.pop() if out else None
                anchor = out[-1].p if out else tuple(q0)
                where = crossed.p if crossed is not None else tuple(q)
                degenerate_msg = (
                    f"gradient of lambda reverses between "
                    f"({anchor[0]:.6g},{anchor[1]:.6g}) and "
                    f"({where[0]:.6g},{where[1]:.6g}): degenerate point "
                    f"in between")
                break
            prev_raw_tangent = raw_tangent
            T = raw_tangent.copy()
            if float(T @ travel) < 0:
                T = -T
            stepped = False
            while h >= 1e-6:
                q_try = q + h * T
                try:
                    q_new = np.array(newton_to_curve(F, q_try, max_iter=25))
                except DegenerateSingularityError:
                    h *= 0.5
                    continue
                if np.linalg.norm(q_new - q) > 3.0 * h:
                    h *= 0.5
                    continue
                stepped = True
                break
            if not stepped:
                degenerate_msg = (f"corrector failed below minimum step at "
                                  f"({q[0]:.6g},{q[1]:.6g})")
                break
            if not F.spec.in_domain(q_new):
                break
            cur = _sample_at(F, q_new, T, 0.0)
            dt = 0.5 * (prev.speed + cur.speed) * float(np.linalg.norm(q_new - q))
            t += dt
            cur.t = sign * t if sign > 0 else -t
            out.append(cur)
            travel = (q_new - q) / max(np.linalg.norm(q_new - q), 1e-300)
            q = q_new
            prev = cur
            if h < step:
                h = min(step, h * 2.0)
        if degenerate_msg is not None:
            raise TraceDiagnostic(degenerate_msg, out)
        return out

    seed_sample = _sample_at(F, q0, np.array([-lv0, lu0]) / g0, 0.0)
    partial: List[SingularSample] = []
    message = None
    forward: List[SingularSample] = []
    backward: List[SingularSample] = []
    try:
        if direction in ("both", "forward"):
            forward = run(+1)
        if direction in ("both", "backward"):
            backward = run(-1)
    except TraceDiagnostic as exc:
        message = str(exc)
        partial = exc.samples
        if direction in ("both", "forward") and not forward:
            forward = partial
        else:
            backward = partial
    for s in backward:
        s.t = -abs(s.t)
    samples = list(reversed(backward)) + [seed_sample] + forward
    if message is not None:
        raise TraceDiagnostic(message, samples)
    return samples


# -- implicit jets of the singular curve --------------------------------------


@dataclass(frozen=True)
class SingularCurveJets:
    """Local graph jets of the singular curve at a sample point.

    ``axis`` 0 means the curve is (s, W(s)) in chart offsets from p, axis 1
    means (W(s), s).  All member jets are univariate in s.
    """

    point: LocalPoint
    axis: int
    graph: Jet                    # transverse offset W(s)
    c_off: Tuple[Jet, Jet]        # curve offsets (du(s), dv(s))
    gamma_hat: Vec                # f along the curve
    nu_c: Vec                     # nu along the curve
    eta: Tuple[Jet, Jet]          # smooth null field along the curve
    orientation: int              # sign making {gamma', eta} positive at s=0

    @property
    def chart(self):
        return self.point.chart

    def velocity(self) -> Vec:
        return tuple(c.partial(0) for c in self.gamma_hat)

    def speed(self) -> Jet:
        """|gamma_hat'(s)| as a jet (first kind only: nonzero at s=0)."""
        vel = self.velocity()
        gt = tuple(c.truncated(vel[0].order) for c in self.gamma_hat)
        return self.chart.inner_product(gt, vel, vel).sqrt()


def singular_curve_jets(F: FrontalSurface, p, order: int = DEFAULT_POINT_ORDER,
                        lp: Optional[LocalPoint] = None) -> SingularCurveJets:
    """Implicit jets of {lambda = 0} through p, with composed field jets."""
    lp = lp or local_point(F, p, order)
    if lp.degenerate:
        raise DegenerateSingularityError(
            f"cannot differentiate the singular curve at degenerate point "
            f"(u,v)=({p[0]:g},{p[1]:g})")
    axis, graph = solve_graph(lp.lam)
    m = graph.order
    s = Jet.variable(0, 0.0, 1, m)
    goff = graph - 0.0
    c_off = (s, goff) if axis == 0 else (goff, s)
    cpad = [_pad(c, m) for c in c_off]
    gamma_hat = tuple(c.truncated(m).compose(cpad) for c in lp.f)
    nu_c = tuple(c.truncated(m).compose(cpad) for c in lp.nu)

    # smooth null field along the curve anchored at the kernel direction
    eta0, e0 = lp.eta0, lp.e0
    fu_c = tuple(c.truncated(m).compose(cpad) for c in lp.fu)
    fv_c = tuple(c.truncated(m).compose(cpad) for c in lp.fv)
    A = tuple(eta0[0] * a + eta0[1] * b for a, b in zip(fu_c, fv_c))
    B = tuple(e0[0] * a + e0[1] * b for a, b in zip(fu_c, fv_c))
    gt = tuple(c.truncated(m) for c in gamma_hat)
    alpha = -(F.chart.inner_product(gt, A, B) / F.chart.inner_product(gt, B, B))
    eta = (eta0[0] + alpha * e0[0], eta0[1] + alpha * e0[1])

    cvel = (cpad[0].partial(0), cpad[1].partial(0))
    det0 = (cvel[0] * eta[1] - cvel[1] * eta[0]).value
    if abs(det0) >= KIND_DET_RTOL:
        orientation = 1 if det0 > 0 else -1
    else:
        dot0 = (cvel[0] * eta[0] + cvel[1] * eta[1]).value
        orientation = 1 if dot0 >= 0 else -1
    return SingularCurveJets(lp, axis, graph, c_off, gamma_hat, nu_c, eta,
                             orientation)


def curve_kind(cj: SingularCurveJets) -> str:
    cvel = (cj.c_off[0].partial(0), cj.c_off[1].partial(0))
    d = (cvel[0] * cj.eta[1] - cvel[1] * cj.eta[0]).value
    return "second" if abs(d) < KIND_DET_RTOL else "first"


def kind_transversality(cj: SingularCurveJets) -> Tuple[float, float]:
    """det(gamma'(s), eta(s)) value and s-derivative at the point.

    The derivative is reported for the local graph parameter; only its
    vanishing is parametrization-independent.
    """
    cvel = (cj.c_off[0].partial(0), cj.c_off[1].partial(0))
    det = cvel[0] * _pad(cj.eta[1], cvel[0].order) \
        - cvel[1] * _pad(cj.eta[0], cvel[0].order)
    return det.value, det.partial(0).value


def locate_second_kind_points(F: FrontalSurface, samples,
                              tol: float = 1e-12) -> List[Tuple[float, float]]:
    """Find second-kind points on a traced arc by sign changes of
    det(gamma', eta) with a continuously aligned null direction."""
    if len(samples) < 2:
        return [s.p for s in samples if s.kind == "second"]
    etas = []
    prev = None
    for s in samples:
        e = np.array(s.eta)
        if prev is not None and float(e @ prev) < 0:
            e = -e
        etas.append(e)
        prev = e
    dets = []
    for s, e in zip(samples, etas):
        g = np.array(s.lambda_grad)
        T = np.array([-g[1], g[0]])
        n = np.linalg.norm(T)
        if n > 0:
            T = T / n
        dets.append(float(T[0] * e[1] - T[1] * e[0]))
    found = []

    def aligned_det(q, ref_eta):
        lp = local_point(F, q, order=3)
        e = lp.eta0.copy()
        if float(e @ ref_eta) < 0:
            e = -e
        g = lp.lam_grad
        T = np.array([-g[1], g[0]])
        n = np.linalg.norm(T)
        if n > 0:
            T = T / n
        return float(T[0] * e[1] - T[1] * e[0]), e

    for i in range(len(samples) - 1):
        d0, d1 = dets[i], dets[i + 1]
        if abs(d0) < KIND_DET_RTOL:
            found.append(samples[i].p)
            continue
        if d0 * d1 < 0:
            a = np.array(samples[i].p)
            b = np.array(samples[i + 1].p)
            ref = etas[i]
            da = d0
            for _ in range(80):
                mid = np.array(newton_to_curve(F, 0.5 * (a + b)))
                dm, ref_m = aligned_det(mid, ref)
                if abs(dm) < tol or np.linalg.norm(b - a) < 1e-15:
                    a = b = mid
                    break
                if da * dm < 0:
                    b = mid
                else:
                    a, da, ref = mid, dm, ref_m
            found.append((float(0.5 * (a + b)[0]), float(0.5 * (a + b)[1])))
    if samples and abs(dets[-1]) < KIND_DET_RTOL:
        found.append(samples[-1].p)
    # dedupe nearly identical hits
    out: List[Tuple[float, float]] = []
    for q in found:
        if all(math.hypot(q[0] - r[0], q[1] - r[1]) > 1e-9 for r in out):
            out.append(q)
    return out


def extended_null_field(lp: LocalPoint):
    """Null direction extended to 2-variable jets near a singular point.

    E(u, v) = eta0 + alpha(u, v) e0 with alpha the least-squares solve of
    df(E) = 0; on the singular curve this is exact, so E is a genuine
    extended null vector field with E(p) = eta0.
    """
    ch = lp.chart
    eta0, e0 = lp.eta0, lp.e0
    A = tuple(eta0[0] * a + eta0[1] * b for a, b in zip(lp.fu, lp.fv))
    B = tuple(e0[0] * a + e0[1] * b for a, b in zip(lp.fu, lp.fv))
    ft = tuple(c.truncated(A[0].order) for c in lp.f)
    alpha = -(ch.inner_product(ft, A, B) / ch.inner_product(ft, B, B))
    return (eta0[0] + alpha * e0[0], eta0[1] + alpha * e0[1])


def directional_derivative(chart: AmbientChart, f: Vec, X: Vec, E) -> Vec:
    """Covariant derivative of the field X along the direction field E."""
    du = chart.covariant_derivative(f, X, 0)
    dv = chart.covariant_derivative(f, X, 1)
    od = du[0].order
    e0 = _pad(E[0], od) if isinstance(E[0], Jet) else E[0]
    e1 = _pad(E[1], od) if isinstance(E[1], Jet) else E[1]
    return tuple(e0 * a + e1 * b for a, b in zip(du, dv))
