"""Curvature invariants at singular points.

All invariants are evaluated from exact jets composed along the implicit
singular curve; arclength derivates divide the curve-parameter derivative
by the image speed instead of differencing.  First-kind points get the
singular, limiting-normal, cuspidal and product curvatures; second-kind
points get the rank-one limiting normal curvature, the mean-curvature
coefficient kappa_H, and (at swallowtails) the limiting singular and
cuspidal curvatures tau_s, tau_c.

The expansion coefficients hatH, hatK of v*H and v*K along the curve are
recovered without constructing adapted coordinates explicitly: in a chart
whose transverse lines follow the null direction, the numerators of H and
K are divisible by the transverse variable, so one jet deflation yields
v*H and v*K, and a pointwise scale factor converts to the adapted-chart
normalization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from .errors import DegenerateSingularityError, KindError
from .frontal import (DEFAULT_POINT_ORDER, FrontalSurface, LocalPoint,
                      SingularCurveJets, _pad, curve_kind,
                      directional_derivative, extended_null_field,
                      kind_transversality, local_point, singular_curve_jets)
from .jets import Jet, deflate

Vec = Tuple[Jet, Jet, Jet]


def _lift1(j: Jet, order: int) -> Jet:
    """Pad a univariate jet to a target order (higher coefficients unknown/zero)."""
    return _pad(j, order)


class CurveFrame:
    """Lazy bundle of jets along the singular curve at one sample point."""

    def __init__(self, F: FrontalSurface, p, order: int = DEFAULT_POINT_ORDER,
                 lp: Optional[LocalPoint] = None,
                 cj: Optional[SingularCurveJets] = None):
        self.F = F
        self.p = (float(p[0]), float(p[1]))
        self.order = order
        self.lp = lp or local_point(F, p, order)
        if self.lp.degenerate:
            raise DegenerateSingularityError(
                f"degenerate singular point at (u,v)=({p[0]:g},{p[1]:g})")
        self.cj = cj or singular_curve_jets(F, p, order, lp=self.lp)
        self.chart = F.chart
        self._cache = {}

    # -- basic curve data ------------------------------------------------

    @property
    def kind(self) -> str:
        return curve_kind(self.cj)

    @property
    def orientation(self) -> int:
        return self.cj.orientation

    def _get(self, key, builder):
        if key not in self._cache:
            self._cache[key] = builder()
        return self._cache[key]

    @property
    def gamma_hat(self) -> Vec:
        return self.cj.gamma_hat

    @property
    def nu_c(self) -> Vec:
        return self.cj.nu_c

    @property
    def velocity(self) -> Vec:
        return self._get("velocity", self.cj.velocity)

    @property
    def acceleration(self) -> Vec:
        def build():
            return self.chart.covariant_derivative_along(self.gamma_hat, self.velocity)
        return self._get("acceleration", build)

    @property
    def jerk(self) -> Vec:
        def build():
            return self.chart.covariant_derivative_along(self.gamma_hat,
                                                         self.acceleration)
        return self._get("jerk", build)

    def _ghat(self, order=None) -> Vec:
        od = self.velocity[0].order if order is None else order
        return tuple(c.truncated(od) for c in self.gamma_hat)

    @property
    def speed(self) -> Jet:
        def build():
            vel = self.velocity
            return self.chart.inner_product(self._ghat(), vel, vel).sqrt()
        return self._get("speed", build)

    @property
    def speed_sq(self) -> Jet:
        def build():
            vel = self.velocity
            return self.chart.inner_product(self._ghat(), vel, vel)
        return self._get("speed_sq", build)

    # -- extended null field and its jets ---------------------------------

    @property
    def E(self):
        """Extended null field in the source chart, oriented so that
        {gamma', eta} is positively oriented at the sample."""
        def build():
            e = extended_null_field(self.lp)
            s = float(self.orientation)
            return (e[0] * s, e[1] * s)
        return self._get("E", build)

    def _compose_on_curve(self, jets, order=None):
        m = self.cj.graph.order if order is None else order
        args = [_pad(c, m).truncated(m) for c in self.cj.c_off]
        if isinstance(jets, Jet):
            return jets.truncated(min(m, jets.order)).compose(args)
        return tuple(c.truncated(min(m, c.order)).compose(args) for c in jets)

    @property
    def f_eta(self) -> Vec:
        def build():
            E = self.E
            od = self.lp.fu[0].order
            e0 = _pad(E[0], od)
            e1 = _pad(E[1], od)
            return tuple(e0 * a + e1 * b for a, b in zip(self.lp.fu, self.lp.fv))
        return self._get("f_eta", build)

    @property
    def f_etaeta(self) -> Vec:
        def build():
            return directional_derivative(self.chart, self.lp.f, self.f_eta, self.E)
        return self._get("f_etaeta", build)

    @property
    def f_etaetaeta(self) -> Vec:
        def build():
            return directional_derivative(self.chart, self.lp.f, self.f_etaeta, self.E)
        return self._get("f_etaetaeta", build)

    @property
    def nu_eta(self) -> Vec:
        """Covariant derivative of the unit normal along the null field."""
        def build():
            return directional_derivative(self.chart, self.lp.f, self.lp.nu, self.E)
        return self._get("nu_eta", build)

    def sign_dlambda_eta(self) -> int:
        g = self.lp.lam_grad
        e = self.E
        val = g[0] * e[0].value + g[1] * e[1].value
        return 1 if val > 0 else (-1 if val < 0 else 0)


# -- first-kind invariants -------------------------------------------------


def kappa_nu_curve(fr: CurveFrame) -> Jet:
    """Limiting normal curvature along a first-kind arc, as a jet in the
    curve parameter."""
    num = fr.chart.inner_product(fr._ghat(fr.acceleration[0].order),
                                 fr.acceleration,
                                 tuple(c.truncated(fr.acceleration[0].order)
                                       for c in fr.nu_c))
    den = fr.speed_sq
    if abs(den.value) < 1e-14 * max(1.0, den.max_abs_coeff()):
        # rank-one point on the curve where the image velocity vanishes:
        # both members vanish to second order; deflate twice
        num2 = deflate(deflate(num, 0), 0)
        den2 = deflate(deflate(den, 0), 0)
        return num2 / den2
    return num / _pad(den, num.order)


def kappa_s_curve(fr: CurveFrame) -> Jet:
    """Singular curvature along a first-kind arc (arclength convention)."""
    if fr.kind != "first":
        raise KindError("kappa_s needs a first-kind point; see tau_s at swallowtails")
    od = fr.acceleration[0].order
    det = fr.chart.det_g(fr._ghat(od),
                         tuple(c.truncated(od) for c in fr.velocity),
                         fr.acceleration,
                         tuple(c.truncated(od) for c in fr.nu_c))
    sp = _pad(fr.speed, det.order)
    sign = fr.sign_dlambda_eta()
    return det * float(sign) / (sp * sp * sp)


def kappa_c_curve(fr: CurveFrame) -> Jet:
    """Cuspidal curvature along a first-kind arc."""
    if fr.kind != "first":
        raise KindError("kappa_c needs a first-kind point")
    fee = fr._compose_on_curve(fr.f_etaeta)
    feee = fr._compose_on_curve(fr.f_etaetaeta)
    od = min(fee[0].order, feee[0].order, fr.velocity[0].order)
    vel = tuple(c.truncated(od) for c in fr.velocity)
    fee = tuple(c.truncated(od) for c in fee)
    feee = tuple(c.truncated(od) for c in feee)
    x = fr._ghat(od)
    det = fr.chart.det_g(x, vel, fee, feee)
    cross = fr.chart.cross_g(x, vel, fee)
    cross_sq = fr.chart.inner_product(x, cross, cross)
    if cross_sq.value <= 1e-16 * max(1.0, cross_sq.max_abs_coeff()):
        raise DegenerateSingularityError(
            "gamma' and f_etaeta are parallel: transverse cusp degenerates")
    sp = _pad(fr.speed, det.order)
    return sp.pow_real(1.5) * det / cross_sq.pow_real(1.25)


def kappa_pi_curve(fr: CurveFrame) -> Jet:
    """Product curvature kappa_nu * kappa_c along a first-kind arc."""
    kn = kappa_nu_curve(fr)
    kc = kappa_c_curve(fr)
    od = min(kn.order, kc.order)
    return kn.truncated(od) * kc.truncated(od)


def _arc_derivative(fr: CurveFrame, q: Jet) -> float:
    """d/dt at the sample for arclength t of the image curve."""
    return q.partial(0).value / fr.speed.value


@dataclass(frozen=True)
class FirstKindInvariants:
    kappa_s: float
    kappa_nu: float
    kappa_c: float
    kappa_pi: float
    d_kappa_s: float
    d_kappa_nu: float
    d_kappa_c: float
    d_kappa_pi: float

    def as_dict(self):
        return dict(self.__dict__)


def first_kind_invariants(F: FrontalSurface, p,
                          order: int = DEFAULT_POINT_ORDER) -> FirstKindInvariants:
    fr = CurveFrame(F, p, order)
    if fr.kind != "first":
        raise KindError(f"point (u,v)=({p[0]:g},{p[1]:g}) is not of the first kind")
    ks = kappa_s_curve(fr)
    kn = kappa_nu_curve(fr)
    kc = kappa_c_curve(fr)
    dks = _arc_derivative(fr, ks)
    dkn = _arc_derivative(fr, kn)
    dkc = _arc_derivative(fr, kc)
    return FirstKindInvariants(
        kappa_s=ks.value, kappa_nu=kn.value, kappa_c=kc.value,
        kappa_pi=kn.value * kc.value,
        d_kappa_s=dks, d_kappa_nu=dkn, d_kappa_c=dkc,
        d_kappa_pi=dkn * kc.value + kn.value * dkc)


def kappa_s(F: FrontalSurface, p, order: int = DEFAULT_POINT_ORDER) -> float:
    fr = CurveFrame(F, p, order)
    return kappa_s_curve(fr).value


def kappa_c(F: FrontalSurface, p, order: int = DEFAULT_POINT_ORDER) -> float:
    fr = CurveFrame(F, p, order)
    return kappa_c_curve(fr).value


# -- rank-one limiting normal curvature ---------------------------------------


def kappa_nu(F: FrontalSurface, p, order: int = DEFAULT_POINT_ORDER,
             lp: Optional[LocalPoint] = None) -> float:
    """Limiting normal curvature at any rank-one singular point.

    Evaluated in an admissible frame whose first direction is the largest
    stretch of df; the value does not depend on that choice.
    """
    lp = lp or local_point(F, p, order)
    if lp.rank != 1:
        raise DegenerateSingularityError(
            f"(u,v)=({p[0]:g},{p[1]:g}) is not a rank-one singular point")
    e = lp.e0
    od = lp.fu[0].order
    f_e = tuple(e[0] * a + e[1] * b for a, b in zip(lp.fu, lp.fv))
    f_ee = directional_derivative(F.chart, lp.f, f_e, (float(e[0]), float(e[1])))
    x = tuple(c.truncated(f_ee[0].order) for c in lp.f)
    nu = tuple(c.truncated(f_ee[0].order) for c in lp.nu)
    num = F.chart.inner_product(x, f_ee, nu).value
    den = F.chart.inner_product(x, tuple(c.truncated(f_ee[0].order) for c in f_e),
                                tuple(c.truncated(f_ee[0].order) for c in f_e)).value
    return num / den


def kappa_nu_curve_jet(F: FrontalSurface, p, order: int = DEFAULT_POINT_ORDER) -> Jet:
    """kappa_nu along the singular curve as a jet in the local graph
    parameter; valid across second-kind points by double deflation."""
    fr = CurveFrame(F, p, order)
    return kappa_nu_curve(fr)


# -- second-kind invariants ---------------------------------------------------


def _second_kind_frame(F: FrontalSurface, p, lp: LocalPoint):
    """Oriented (null, transversal) directions at a second-kind point.

    Returns (eta0, w) with df(eta0)=0, |df(w)|_g = 1 and det(eta0, w) > 0.
    """
    eta0 = lp.eta0.copy()
    w = lp.e0.copy()
    dfw = lp.J @ w
    if F.chart.euclidean:
        n = float(np.linalg.norm(dfw))
    else:
        x0 = tuple(c.truncated(0) for c in lp.f)
        wv = tuple(Jet.constant(float(c), 2, 0) for c in dfw)
        n = math.sqrt(max(F.chart.inner_product(x0, wv, wv).value, 0.0))
    w = w / n
    if eta0[0] * w[1] - eta0[1] * w[0] < 0:
        eta0 = -eta0
    return eta0, w


def kappa_H(F: FrontalSurface, p, order: int = DEFAULT_POINT_ORDER,
            lp: Optional[LocalPoint] = None) -> float:
    """Mean-curvature expansion coefficient at a second-kind point.

    Computed as -|f_v|^3 <f_uv, nu_u> / |f_uv x_g f_v|^2 in a positively
    oriented linear frame whose first direction is the null direction.
    """
    lp = lp or local_point(F, p, order)
    kind = _kind_of(F, p, lp)
    if kind != "second":
        raise KindError("kappa_H is defined at second-kind points")
    eta0, w = _second_kind_frame(F, p, lp)
    od = lp.fu[0].order
    f_U = tuple(eta0[0] * a + eta0[1] * b for a, b in zip(lp.fu, lp.fv))
    f_V = tuple(w[0] * a + w[1] * b for a, b in zip(lp.fu, lp.fv))
    f_UV = directional_derivative(F.chart, lp.f, f_U, (float(w[0]), float(w[1])))
    nu_U = directional_derivative(F.chart, lp.f, lp.nu, (float(eta0[0]), float(eta0[1])))
    od = f_UV[0].order
    x = tuple(c.truncated(od) for c in lp.f)
    f_Vt = tuple(c.truncated(od) for c in f_V)
    nfv = F.chart.inner_product(x, f_Vt, f_Vt).value ** 1.5
    num = F.chart.inner_product(x, f_UV, tuple(c.truncated(od) for c in nu_U)).value
    cr = F.chart.cross_g(x, f_UV, f_Vt)
    den = F.chart.inner_product(x, cr, cr).value
    if den <= 0:
        raise DegenerateSingularityError("f_uv parallel to f_v: degenerate frame")
    return -nfv * num / den


def _kind_of(F, p, lp):
    from .frontal import point_kind
    return point_kind(F, p, lp)


def tau_s(F: FrontalSurface, p, order: int = DEFAULT_POINT_ORDER) -> float:
    """Limiting singular curvature at a swallowtail.

    |det_g(gamma'', gamma''', nu)| / |gamma''|^{5/2} in any regular
    parametrization of the singular curve (numerator and denominator both
    scale by the fifth power of a reparametrization factor).
    """
    fr = CurveFrame(F, p, order)
    if fr.kind != "second":
        raise KindError("tau_s is defined at swallowtail (second-kind) points")
    if abs(fr.speed_sq.value) > 1e-12 * max(1.0, fr.speed_sq.max_abs_coeff()):
        raise KindError("image velocity does not vanish: not a swallowtail")
    acc = fr.acceleration
    jerk = fr.jerk
    od = jerk[0].order
    x = fr._ghat(od)
    acc_t = tuple(c.truncated(od) for c in acc)
    nu_t = tuple(c.truncated(od) for c in fr.nu_c)
    acc_n2 = fr.chart.inner_product(x, acc_t, acc_t).value
    if acc_n2 <= 1e-16:
        raise DegenerateSingularityError("gamma''(0) = 0: degenerate swallowtail")
    det = fr.chart.det_g(x, acc_t, jerk, nu_t).value
    return abs(det) / acc_n2 ** 1.25


def tau_c(F: FrontalSurface, p, order: int = DEFAULT_POINT_ORDER) -> float:
    """Limiting cuspidal curvature at a swallowtail: sqrt|tau_s| * |kappa_H|."""
    ts = tau_s(F, p, order)
    kh = kappa_H(F, p, order)
    return math.sqrt(abs(ts)) * abs(kh)


@dataclass(frozen=True)
class SecondKindInvariants:
    kappa_nu: float
    kappa_H: float
    d_kappa_nu_du: float          # derivative in the recorded curve parameter
    parametrization: str
    tau_s: Optional[float] = None
    tau_c: Optional[float] = None

    def as_dict(self):
        return dict(self.__dict__)


def second_kind_invariants(F: FrontalSurface, p, order: int = DEFAULT_POINT_ORDER,
                           swallowtail: bool = False) -> SecondKindInvariants:
    lp = local_point(F, p, order)
    fr = CurveFrame(F, p, order, lp=lp)
    kn_jet = kappa_nu_transversal_curve(fr)
    axis = "u" if fr.cj.axis == 0 else "v"
    ts = tc = None
    if swallowtail:
        ts = tau_s(F, p, order)
        tc = math.sqrt(abs(ts)) * abs(kappa_H(F, p, order, lp=lp))
    return SecondKindInvariants(
        kappa_nu=kn_jet.value,
        kappa_H=kappa_H(F, p, order, lp=lp),
        d_kappa_nu_du=kn_jet.partial(0).value,
        parametrization=f"graph over {axis}",
        tau_s=ts, tau_c=tc)


# -- hatH / hatK along the curve ------------------------------------------------


def _curve_chart_substitution(fr: CurveFrame):
    """Positively oriented curve chart (s, tau) -> source offsets.

    First kind: transverse lines follow the oriented null field, so the
    second coordinate direction is null along the curve.  Second kind:
    transverse lines follow a fixed transversal with |df(w)|_g = 1; the
    curve tangent itself is null at the point.
    """
    m = fr.cj.graph.order
    cu = _pad(fr.cj.c_off[0], m)
    cv = _pad(fr.cj.c_off[1], m)
    s2 = Jet.variable(0, 0.0, 2, m)
    t2 = Jet.variable(1, 0.0, 2, m)

    def lift_s(j):
        from .frontal import _lift
        return _lift(j, 2, 0)

    if fr.kind == "first":
        eta = fr._compose_on_curve([fr.E[0], fr.E[1]])
        du = lift_s(cu) + t2 * lift_s(_pad(eta[0], m))
        dv = lift_s(cv) + t2 * lift_s(_pad(eta[1], m))
        jac = (cu.partial(0).value * eta[1].value
               - cv.partial(0).value * eta[0].value)
    else:
        eta0, w = _second_kind_frame(fr.F, fr.p, fr.lp)
        du = lift_s(cu) + t2 * float(w[0])
        dv = lift_s(cv) + t2 * float(w[1])
        jac = cu.partial(0).value * w[1] - cv.partial(0).value * w[0]
    if jac < 0:
        # flip s to keep the chart positively oriented
        neg = -Jet.variable(0, 0.0, 2, m)
        du = du.compose([neg, t2])
        dv = dv.compose([neg, t2])
    return [du, dv]


def hat_mean_gauss_curve(fr: CurveFrame) -> Tuple[Jet, Jet]:
    """Jets in s of the adapted-scale expansions hatH = vH and hatK = vK
    restricted to the singular curve."""
    sub = _curve_chart_substitution(fr)
    m = sub[0].order
    f2 = tuple(c.truncated(m).compose(sub) for c in fr.lp.f)
    nu2 = tuple(c.truncated(m).compose(sub) for c in fr.lp.nu)
    fs = tuple(c.partial(0) for c in f2)
    ft = tuple(c.partial(1) for c in f2)
    nus = fr.chart.covariant_derivative(f2, nu2, 0)
    nut = fr.chart.covariant_derivative(f2, nu2, 1)
    od = min(fs[0].order, nus[0].order)

    def tr(vec):
        return tuple(c.truncated(od) for c in vec)

    x = tuple(c.truncated(od) for c in f2)
    ip = fr.chart.inner_product
    g11 = ip(x, tr(fs), tr(fs))
    g12 = ip(x, tr(fs), tr(ft))
    g22 = ip(x, tr(ft), tr(ft))
    h11 = -ip(x, tr(fs), tr(nus))
    h12 = -ip(x, tr(fs), tr(nut))
    h21 = -ip(x, tr(ft), tr(nus))
    h22 = -ip(x, tr(ft), tr(nut))
    den = g11 * g22 - g12 * g12
    numH = g11 * h22 - g12 * (h12 + h21) + g22 * h11
    numK = h11 * h22 - h12 * h21
    den2 = deflate(deflate(den, 1), 1)
    tauH = deflate(numH, 1) / (_pad(den2, numH.order - 1) * 2.0)
    tauK = deflate(numK, 1) / _pad(den2, numK.order - 1)

    def on_curve(j2):
        coeffs = {(k[0],): v for k, v in j2.coeffs.items() if k[1] == 0}
        return Jet(1, j2.order, coeffs)

    tauH_c = on_curve(tauH)
    tauK_c = on_curve(tauK)

    if fr.kind == "first":
        # adapted transverse scale: fourth root of the squared rejection of
        # f_etaeta from gamma', with the frame-compatibility sign
        fee = fr._compose_on_curve(fr.f_etaeta)
        odc = min(fee[0].order, fr.velocity[0].order, tauH_c.order)
        vel = tuple(c.truncated(odc) for c in fr.velocity)
        feet = tuple(c.truncated(odc) for c in fee)
        xc = fr._ghat(odc)
        v2 = ip(xc, vel, vel)
        rej2 = (ip(xc, feet, feet) * v2 - ip(xc, vel, feet) ** 2) / v2
        rho = rej2.pow_real(0.25)
        sigma = fr.chart.det_g(xc, vel, feet,
                               tuple(c.truncated(odc) for c in fr.nu_c)).value
        sgn = 1.0 if sigma > 0 else -1.0
        odf = min(rho.order, tauH_c.order)
        return (tauH_c.truncated(odf) * rho.truncated(odf) * sgn,
                tauK_c.truncated(odf) * rho.truncated(odf) * sgn)
    # second kind: the chart is already normalized at the point
    return tauH_c, tauK_c


def hat_values(F: FrontalSurface, p,
               order: int = DEFAULT_POINT_ORDER) -> Tuple[float, float]:
    """(hatH, hatK) at the point."""
    fr = CurveFrame(F, p, order)
    hh, hk = hat_mean_gauss_curve(fr)
    return hh.value, hk.value


def kappa_nu_transversal_curve(fr: CurveFrame) -> Jet:
    """kappa_nu along a second-kind singular curve as a jet in the curve
    parameter, from the transversal frame (robust even when the image of
    the whole curve is stationary, e.g. a cone apex circle)."""
    if fr.kind != "second":
        raise KindError("transversal kappa_nu jet is for second-kind curves")
    sub = _curve_chart_substitution(fr)
    m = sub[0].order
    f2 = tuple(c.truncated(m).compose(sub) for c in fr.lp.f)
    nu2 = tuple(c.truncated(m).compose(sub) for c in fr.lp.nu)
    ft = tuple(c.partial(1) for c in f2)
    nut = fr.chart.covariant_derivative(f2, nu2, 1)
    od = min(ft[0].order, nut[0].order)
    x = tuple(c.truncated(od) for c in f2)
    ftt = tuple(c.truncated(od) for c in ft)
    g22 = fr.chart.inner_product(x, ftt, ftt)
    h22 = -fr.chart.inner_product(x, ftt, tuple(c.truncated(od) for c in nut))

    def on_curve(j2):
        coeffs = {(k[0],): v for k, v in j2.coeffs.items() if k[1] == 0}
        return Jet(1, j2.order, coeffs)

    return on_curve(h22) / on_curve(g22)


# -- profiles -------------------------------------------------------------------


@dataclass
class InvariantProfile:
    """Per-sample invariant arrays along a traced first-kind arc."""

    t: List[float] = field(default_factory=list)
    u: List[float] = field(default_factory=list)
    v: List[float] = field(default_factory=list)
    kappa_s: List[float] = field(default_factory=list)
    kappa_nu: List[float] = field(default_factory=list)
    kappa_c: List[float] = field(default_factory=list)
    kappa_pi: List[float] = field(default_factory=list)
    d_kappa_s: List[float] = field(default_factory=list)
    d_kappa_nu: List[float] = field(default_factory=list)
    d_kappa_c: List[float] = field(default_factory=list)
    d_kappa_pi: List[float] = field(default_factory=list)
    hatH: List[float] = field(default_factory=list)
    hatK: List[float] = field(default_factory=list)

    COLUMNS = ("t", "u", "v", "kappa_s", "kappa_nu", "kappa_c", "kappa_pi",
               "d_kappa_s", "d_kappa_nu", "d_kappa_c", "d_kappa_pi",
               "hatH", "hatK")

    def rows(self):
        for i in range(len(self.t)):
            yield tuple(getattr(self, col)[i] for col in self.COLUMNS)

    def as_dict(self):
        return {col: list(getattr(self, col)) for col in self.COLUMNS}


def first_kind_profile(F: FrontalSurface, samples,
                       order: int = DEFAULT_POINT_ORDER) -> InvariantProfile:
    """Invariants and arclength derivates at every first-kind sample."""
    prof = InvariantProfile()
    for s in samples:
        if s.kind != "first":
            raise KindError(
                f"sample at (u,v)=({s.p[0]:g},{s.p[1]:g}) is not first kind")
        inv = first_kind_invariants(F, s.p, order)
        hh, hk = hat_values(F, s.p, order)
        prof.t.append(s.t)
        prof.u.append(s.p[0])
        prof.v.append(s.p[1])
        prof.kappa_s.append(inv.kappa_s)
        prof.kappa_nu.append(inv.kappa_nu)
        prof.kappa_c.append(inv.kappa_c)
        prof.kappa_pi.append(inv.kappa_pi)
        prof.d_kappa_s.append(inv.d_kappa_s)
        prof.d_kappa_nu.append(inv.d_kappa_nu)
        prof.d_kappa_c.append(inv.d_kappa_c)
        prof.d_kappa_pi.append(inv.d_kappa_pi)
        prof.hatH.append(hh)
        prof.hatK.append(hk)
    return prof


# -- planar cusp curvature -------------------------------------------------------


def planar_cusp_curvature(sigma: Tuple[Jet, Jet]) -> float:
    """Cuspidal curvature of a planar 3/2-cusp from curve jets.

    det(sigma''(0), sigma'''(0)) / |sigma''(0)|^{5/2}; the input must have
    sigma'(0) = 0 and a genuine cusp (nonzero determinant).
    """
    x, y = sigma
    if x.order < 3:
        raise DegenerateSingularityError("cusp check needs curve jets of order >= 3")
    d1 = np.array([x.derivative_value(1), y.derivative_value(1)])
    d2 = np.array([x.derivative_value(2), y.derivative_value(2)])
    d3 = np.array([x.derivative_value(3), y.derivative_value(3)])
    scale = max(1.0, float(np.linalg.norm(d2)), float(np.linalg.norm(d3)) ** (2 / 3))
    if np.linalg.norm(d1) > 1e-8 * scale:
        raise DegenerateSingularityError("sigma'(0) != 0: not a singular curve point")
    n2 = float(np.linalg.norm(d2))
    if n2 <= 1e-10 * scale:
        raise DegenerateSingularityError("sigma''(0) = 0: cusp is of higher order")
    det = float(d2[0] * d3[1] - d2[1] * d3[0])
    if abs(det) <= 1e-10 * scale ** 2.5:
        raise DegenerateSingularityError(
            "det(sigma'', sigma''') = 0: not a 3/2-cusp")
    return det / n2 ** 2.5
