"""Boundedness, rational boundedness and rational continuity of K and H.

Where a classification carries a theorem (first-kind points of frontals,
second-kind points of fronts), the verdict comes from the invariant
predicates: the product curvature and its derivate for K at first-kind
points, the cuspidal curvature for H there, the limiting normal
curvature and its curve derivative for K at second-kind fronts, and the
mean-curvature coefficient for H there.  "Bounded near" additionally
requires the controlling invariant to vanish along the whole traced arc.

Second-kind points that are not fronts have no covering theorem; they
get an empirical verdict from the polar blow-up probe, which samples the
function on shrinking circles with sectors excluded around the
directions where the singular curve meets the blow-up circle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import classify as _classify
from .classify import Classification, classify_point
from .errors import DegenerateSingularityError, FrontlabError
from .frontal import (DEFAULT_POINT_ORDER, FrontalSurface, local_point,
                      newton_to_curve, trace_singular_curve)
from .invariants import (CurveFrame, first_kind_invariants, hat_mean_gauss_curve,
                         hat_values, kappa_nu, kappa_nu_transversal_curve,
                         second_kind_invariants)
from .jets import Jet, deflate


# -- pointwise curvature at regular points -------------------------------------


def curvature_values(F: FrontalSurface, q) -> Tuple[float, float]:
    """(K, H) at a regular point, including the ambient sectional term."""
    f = F.f_jets(q, 2)
    nu = F.nu_jets(q, 1)
    fu = tuple(c.partial(0) for c in f)
    fv = tuple(c.partial(1) for c in f)
    nuu = F.chart.covariant_derivative(tuple(c.truncated(1) for c in f), nu, 0)
    nuv = F.chart.covariant_derivative(tuple(c.truncated(1) for c in f), nu, 1)
    x = tuple(c.truncated(0) for c in f)

    def ip(a, b):
        a0 = tuple(c.truncated(0) for c in a)
        b0 = tuple(c.truncated(0) for c in b)
        return F.chart.inner_product(x, a0, b0).value

    g11, g12, g22 = ip(fu, fu), ip(fu, fv), ip(fv, fv)
    h11, h12 = -ip(fu, nuu), -ip(fu, nuv)
    h21, h22 = -ip(fv, nuu), -ip(fv, nuv)
    den = g11 * g22 - g12 * g12
    if den <= 0:
        raise DegenerateSingularityError("curvature requested at a singular point")
    K_ext = (h11 * h22 - h12 * h21) / den
    H = (g11 * h22 - g12 * (h12 + h21) + g22 * h11) / (2 * den)
    if F.chart.euclidean:
        return K_ext, H
    x0 = [c.value for c in f]
    X = np.array([c.value for c in fu])
    Y = np.array([c.value for c in fv])
    cg = F.chart.sectional_curvature(x0, X, Y)
    return K_ext + cg, H


# -- polar blow-up probe ---------------------------------------------------------


@dataclass(frozen=True)
class ProbeConfig:
    r_max: float = 1e-1
    r_min: float = 1e-5
    per_decade: int = 9
    n_theta: int = 720
    sector_halfwidth: float = 0.05
    stability_factor: float = 2.0
    #: relative spread of the small-radius values below which the probe
    #: reports a direction-independent limit
    limit_spread_rtol: float = 0.1


@dataclass
class BlowupProbe:
    scalar: str
    p: Tuple[float, float]
    radii: List[float]
    thetas: List[float]
    excluded: List[float]          # excluded sector centers
    samples: List[Tuple[float, float, float]]
    decade_max: Dict[int, float]
    bounded: bool
    empirical_max: float
    limit_estimate: Optional[float]
    limit_spread: Optional[float]
    failures: int = 0

    def as_dict(self):
        return {
            "scalar": self.scalar, "p": list(self.p),
            "excluded_directions": list(self.excluded),
            "bounded": self.bounded, "empirical_max": self.empirical_max,
            "limit_estimate": self.limit_estimate,
            "limit_spread": self.limit_spread,
            "n_samples": len(self.samples), "failures": self.failures,
        }


def _exceptional_directions(F: FrontalSurface, p) -> List[float]:
    _, lu, lv = F.lambda_value_grad(p)
    t = math.atan2(lu, -lv)  # direction of the curve tangent (-lv, lu)
    return [t % (2 * math.pi), (t + math.pi) % (2 * math.pi)]


def blowup_probe(F: FrontalSurface, scalar: str, p,
                 config: ProbeConfig = ProbeConfig()) -> BlowupProbe:
    """Sample K, H, vK or vH on shrinking circles around p.

    vK and vH use lambda/|grad lambda(p)| as the transverse coordinate,
    which vanishes simply on the singular curve; for curves along the
    u-axis with a unit lambda gradient this is the usual v.
    """
    if scalar not in ("K", "H", "vK", "vH"):
        raise FrontlabError(f"unknown probe scalar '{scalar}'")
    p = (float(p[0]), float(p[1]))
    _, lu0, lv0 = F.lambda_value_grad(p)
    grad_scale = math.hypot(lu0, lv0)
    excluded = _exceptional_directions(F, p)
    ndec = max(1, int(round(math.log10(config.r_max / config.r_min))))
    radii = list(np.geomspace(config.r_max, config.r_min,
                              ndec * config.per_decade + 1))
    thetas = list(np.linspace(0.0, 2 * math.pi, config.n_theta, endpoint=False))
    samples = []
    failures = 0
    decade_values: Dict[int, List[float]] = {}
    for r in radii:
        dec = int(math.floor(math.log10(r) + 1e-12))
        for th in thetas:
            if any(abs((th - e + math.pi) % (2 * math.pi) - math.pi)
                   < config.sector_halfwidth for e in excluded):
                continue
            q = (p[0] + r * math.cos(th), p[1] + r * math.sin(th))
            if not F.spec.in_domain(q):
                continue
            try:
                K, H = curvature_values(F, q)
                val = K if scalar in ("K", "vK") else H
                if scalar in ("vK", "vH"):
                    lam, _, _ = F.lambda_value_grad(q)
                    val *= lam / grad_scale
            except FrontlabError:
                failures += 1
                continue
            samples.append((r, th, val))
            decade_values.setdefault(dec, []).append(abs(val))
    decade_max = {d: max(vs) for d, vs in decade_values.items() if vs}
    descending = [decade_max[d] for d in sorted(decade_max, reverse=True)]
    bounded = True
    for a, b in zip(descending, descending[1:]):
        if b > config.stability_factor * max(a, 1e-12):
            bounded = False
    limit_estimate = limit_spread = None
    if samples:
        r_small = min(r for r, _, _ in samples)
        tail = [v for r, _, v in samples if r == r_small]
        if tail:
            med = float(np.median(tail))
            spread = float(np.quantile(tail, 0.9) - np.quantile(tail, 0.1))
            limit_estimate = med
            limit_spread = spread
    return BlowupProbe(scalar=scalar, p=p, radii=radii, thetas=thetas,
                       excluded=excluded, samples=samples,
                       decade_max=decade_max, bounded=bounded,
                       empirical_max=max((abs(v) for _, _, v in samples),
                                         default=0.0),
                       limit_estimate=limit_estimate,
                       limit_spread=limit_spread, failures=failures)


def probe_limit_exists(probe: BlowupProbe,
                       config: ProbeConfig = ProbeConfig()) -> bool:
    if not probe.bounded or probe.limit_spread is None:
        return False
    scale = max(1.0, abs(probe.limit_estimate or 0.0), probe.empirical_max)
    return probe.limit_spread < config.limit_spread_rtol * scale


# -- verdicts ----------------------------------------------------------------------


@dataclass(frozen=True)
class FunctionVerdict:
    bounded_near: bool
    rationally_bounded: bool
    rationally_continuous: bool
    witnesses: Dict[str, float] = field(default_factory=dict)

    def as_dict(self):
        return {"bounded_near": self.bounded_near,
                "rationally_bounded": self.rationally_bounded,
                "rationally_continuous": self.rationally_continuous,
                "witnesses": dict(self.witnesses)}


@dataclass(frozen=True)
class BoundednessVerdict:
    K: FunctionVerdict
    H: FunctionVerdict
    method: str                      # "Theorem" | "Empirical"
    note: str = ""

    def as_dict(self):
        return {"K": self.K.as_dict(), "H": self.H.as_dict(),
                "method": self.method, "note": self.note}


def _is_zero(x: float, scale: float = 1.0) -> bool:
    return abs(x) < _classify.ZERO_RTOL * max(1.0, scale)


def _arc_points(F: FrontalSurface, p, arc: Optional[Sequence], step: float):
    if arc is not None:
        return [s.p for s in arc]
    samples = trace_singular_curve(F, p, step=step, max_samples=24)
    return [s.p for s in samples]


def boundedness_report(F: FrontalSurface, p,
                       classification: Optional[Classification] = None,
                       arc: Optional[Sequence] = None,
                       order: int = DEFAULT_POINT_ORDER,
                       arc_step: float = 0.05,
                       probe_config: ProbeConfig = ProbeConfig()) -> BoundednessVerdict:
    """Verdicts for K and H at a non-degenerate singular point.

    ``arc`` may carry traced samples around p for the bounded-near
    clauses; a short arc is traced on demand otherwise.
    """
    classification = classification or classify_point(F, p, order)
    label = classification.label
    if label in ("Regular",):
        raise FrontlabError("boundedness verdicts apply to singular points")
    if label == "DegenerateSingular":
        raise DegenerateSingularityError(
            "no verdict at a degenerate singular point")

    if label in ("CuspidalEdge", "CuspidalCrossCap", "FirstKindNonFrontDegenerate"):
        inv = first_kind_invariants(F, p, order)
        pts = _arc_points(F, p, arc, arc_step)
        arc_invs = [first_kind_invariants(F, q, order) for q in pts]
        scale_pi = max([abs(a.kappa_nu) * max(abs(a.kappa_c), 1.0)
                        for a in arc_invs] + [1.0])
        scale_c = max([abs(a.kappa_c) for a in arc_invs] + [1.0])
        k_rb = _is_zero(inv.kappa_pi, scale_pi)
        k_rc = k_rb and _is_zero(inv.d_kappa_pi, scale_pi)
        k_bn = all(_is_zero(a.kappa_pi, scale_pi) for a in arc_invs)
        h_rb = _is_zero(inv.kappa_c, scale_c)
        h_rc = h_rb and _is_zero(inv.d_kappa_c, scale_c)
        h_bn = all(_is_zero(a.kappa_c, scale_c) for a in arc_invs)
        K = FunctionVerdict(k_bn, k_rb or k_bn, k_rc or k_bn,
                            {"kappa_pi": inv.kappa_pi,
                             "d_kappa_pi": inv.d_kappa_pi,
                             "max_arc_kappa_pi": max(abs(a.kappa_pi)
                                                     for a in arc_invs)})
        H = FunctionVerdict(h_bn, h_rb or h_bn, h_rc or h_bn,
                            {"kappa_c": inv.kappa_c, "d_kappa_c": inv.d_kappa_c,
                             "max_arc_kappa_c": max(abs(a.kappa_c)
                                                    for a in arc_invs)})
        return BoundednessVerdict(K, H, "Theorem")

    if label in ("Swallowtail", "SecondKindFrontNonSwallowtail"):
        fr = CurveFrame(F, p, order)
        kn_jet = kappa_nu_transversal_curve(fr)
        kn = kn_jet.value
        dkn_du = kn_jet.partial(0).value
        hh, _ = hat_mean_gauss_curve(fr)
        kH = 2 * hh.value
        dkH = 2 * hh.partial(0).value
        pts = _arc_points(F, p, arc, arc_step)
        arc_kn = [kappa_nu(F, newton_to_curve(F, q), order) for q in pts]
        arc_kH = []
        for q in pts:
            frq = CurveFrame(F, newton_to_curve(F, q), order)
            hq, _ = hat_mean_gauss_curve(frq)
            arc_kH.append(2 * hq.value)
        scale_n = max([abs(v) for v in arc_kn] + [1.0])
        scale_h = max([abs(v) for v in arc_kH] + [1.0])
        k_rb = _is_zero(kn, scale_n)
        k_rc = k_rb and _is_zero(dkn_du, scale_n)
        k_bn = all(_is_zero(v, scale_n) for v in arc_kn)
        h_rb = _is_zero(kH, scale_h)
        h_rc = h_rb and _is_zero(dkH, scale_h)
        h_bn = all(_is_zero(v, scale_h) for v in arc_kH)
        K = FunctionVerdict(k_bn, k_rb or k_bn, k_rc or k_bn,
                            {"kappa_nu": kn, "omega_nu_coefficient": dkn_du,
                             "max_arc_kappa_nu": max(abs(v) for v in arc_kn)})
        H = FunctionVerdict(h_bn, h_rb or h_bn, h_rc or h_bn,
                            {"kappa_H": kH, "d_kappa_H": dkH,
                             "max_arc_kappa_H": max(abs(v) for v in arc_kH)})
        return BoundednessVerdict(K, H, "Theorem")

    # second kind, not a front: no covering theorem; empirical only
    pk = blowup_probe(F, "K", p, probe_config)
    ph = blowup_probe(F, "H", p, probe_config)
    K = FunctionVerdict(pk.bounded, pk.bounded, probe_limit_exists(pk, probe_config),
                        {"empirical_max_K": pk.empirical_max})
    H = FunctionVerdict(ph.bounded, ph.bounded, probe_limit_exists(ph, probe_config),
                        {"empirical_max_H": ph.empirical_max})
    return BoundednessVerdict(
        K, H, "Empirical",
        note="second-kind non-front point: no theorem covers this case; "
             "flags reflect the blow-up probe only")


# -- Gauss-map equivalence ---------------------------------------------------------


@dataclass(frozen=True)
class GaussMapReport:
    is_gauss_singular: Optional[bool]
    kappa_nu_zero: bool
    KdA_zero: bool
    kappa_nu: float
    KdA_coefficient: float
    dnu_singular_values: Tuple[float, float]

    def as_dict(self):
        return {"is_gauss_singular": self.is_gauss_singular,
                "kappa_nu_zero": self.kappa_nu_zero,
                "KdA_zero": self.KdA_zero,
                "kappa_nu": self.kappa_nu,
                "KdA_coefficient": self.KdA_coefficient}


def gauss_map_singular(F: FrontalSurface, p,
                       order: int = DEFAULT_POINT_ORDER) -> GaussMapReport:
    """The three predicates of the Gauss-map equivalence at a rank-one point.

    In the Euclidean chart the smooth extension of K times the signed area
    element is det(nu, nu_u, nu_v); the Gauss-map rank comes from the
    singular values of d(nu).  In a general chart the Gauss-map clause is
    unavailable and reported as None.
    """
    lp = local_point(F, p, order)
    if lp.rank != 1:
        raise DegenerateSingularityError(
            f"Gauss-map test needs a rank-one point at (u,v)=({p[0]:g},{p[1]:g})")
    kn = kappa_nu(F, p, order, lp=lp)
    scale_kn = max(1.0, abs(kn))
    if F.chart.euclidean:
        nuu = tuple(c.partial(0) for c in lp.nu)
        nuv = tuple(c.partial(1) for c in lp.nu)
        D = np.column_stack([[c.value for c in nuu], [c.value for c in nuv]])
        svals = np.linalg.svd(D, compute_uv=False)
        nu0 = np.array([c.value for c in lp.nu])
        kda = float(np.linalg.det(np.column_stack(
            [nu0, D[:, 0], D[:, 1]])))
        gauss_singular = bool(svals[1] < _classify.ZERO_RTOL * max(1.0, svals[0]))
        return GaussMapReport(
            is_gauss_singular=gauss_singular,
            kappa_nu_zero=_is_zero(kn, scale_kn),
            KdA_zero=_is_zero(kda, max(1.0, float(svals[0]) ** 2)),
            kappa_nu=kn, KdA_coefficient=kda,
            dnu_singular_values=(float(svals[0]), float(svals[1])))
    # general chart: K times the area density extends smoothly as
    # hatK times a nonvanishing factor, so its vanishing is hatK(p) = 0
    fr = CurveFrame(F, p, order)
    _, hk = hat_mean_gauss_curve(fr)
    kda = hk.value
    return GaussMapReport(
        is_gauss_singular=None,
        kappa_nu_zero=_is_zero(kn, scale_kn),
        KdA_zero=_is_zero(kda),
        kappa_nu=kn, KdA_coefficient=kda,
        dnu_singular_values=(float("nan"), float("nan")))
