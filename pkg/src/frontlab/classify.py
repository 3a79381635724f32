"""Classification of non-degenerate singular points.

The decision tree: non-degeneracy, then the kind (null direction
transversal or tangent to the singular curve), then the front test
(nonvanishing covariant derivative of the normal along the null
direction), then the kind-specific criterion: first-kind fronts are
cuspidal edges; second-kind fronts with transversally crossing null
direction are swallowtails; first-kind non-fronts split on the cusp
witness function psi_ccr and its derivative (cuspidal cross caps have a
simple zero).  Everything else lands in an explicit residual bucket, and
the full evidence is recorded so borderline calls are auditable.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import DegenerateSingularityError, KindError
from .frontal import (DEFAULT_POINT_ORDER, FrontalSurface, LocalPoint,
                      curve_kind, kind_transversality, local_point,
                      singular_curve_jets)
from .invariants import CurveFrame, kappa_nu
from .jets import Jet

#: a quantity is treated as zero below this relative threshold
ZERO_RTOL = 1e-8


def set_zero_rtol(value: float) -> None:
    """Process-wide override of the zero-test threshold (CLI --tolerance)."""
    global ZERO_RTOL
    ZERO_RTOL = float(value)

LABELS = (
    "Regular",
    "CuspidalEdge",
    "Swallowtail",
    "CuspidalCrossCap",
    "FirstKindNonFrontDegenerate",
    "SecondKindFrontNonSwallowtail",
    "SecondKindNonFront",
    "DegenerateSingular",
)


@dataclass(frozen=True)
class Evidence:
    """Raw values behind a classification, for audit."""

    lambda_value: float
    lambda_grad: Tuple[float, float]
    rank: Optional[int] = None
    kind: Optional[str] = None
    is_front: Optional[bool] = None
    nu_eta_norm: Optional[float] = None
    kappa_nu: Optional[float] = None
    psi_ccr: Optional[float] = None
    d_psi_ccr: Optional[float] = None
    transversality: Optional[float] = None
    d_transversality: Optional[float] = None

    def as_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class Classification:
    label: str
    evidence: Evidence

    def as_dict(self):
        return {"label": self.label, "evidence": self.evidence.as_dict()}


def psi_ccr_jet(F: FrontalSurface, p, order: int = DEFAULT_POINT_ORDER,
                fr: Optional[CurveFrame] = None) -> Tuple[Jet, Jet]:
    """The cusp witness det_g(gamma', nu, nabla_eta nu) along the curve.

    Returns (psi_ccr jet, speed jet) in the local curve parameter, with
    the null field oriented so {gamma', eta} is positive at the point.
    The arclength derivative is the jet derivative divided by the speed.
    """
    fr = fr or CurveFrame(F, p, order)
    if fr.kind != "first":
        raise KindError("psi_ccr needs a first-kind point (gamma' must not vanish)")
    nu_eta_c = fr._compose_on_curve(fr.nu_eta)
    od = min(nu_eta_c[0].order, fr.velocity[0].order)
    vel = tuple(c.truncated(od) for c in fr.velocity)
    nus = tuple(c.truncated(od) for c in fr.nu_c)
    net = tuple(c.truncated(od) for c in nu_eta_c)
    x = fr._ghat(od)
    det = fr.chart.det_g(x, vel, nus, net)
    return det, fr.speed


def is_front_at(F: FrontalSurface, p, order: int = DEFAULT_POINT_ORDER,
                lp: Optional[LocalPoint] = None,
                rtol: float = ZERO_RTOL) -> bool:
    """True when the normal has nonvanishing derivative along the null
    direction (the pair (f, nu) immerses)."""
    lp = lp or local_point(F, p, order)
    if lp.rank != 1:
        raise DegenerateSingularityError(
            f"front test needs a rank-one point at (u,v)=({p[0]:g},{p[1]:g})")
    return _nu_eta_norm(F, lp) > rtol * _nu_scale(F, lp)


def _nu_eta_norm(F: FrontalSurface, lp: LocalPoint) -> float:
    from .frontal import directional_derivative
    eta = (float(lp.eta0[0]), float(lp.eta0[1]))
    d = directional_derivative(F.chart, lp.f, lp.nu, eta)
    od = d[0].order
    x = tuple(c.truncated(od) for c in lp.f)
    return math.sqrt(max(F.chart.inner_product(x, d, d).value, 0.0))


def _nu_scale(F: FrontalSurface, lp: LocalPoint) -> float:
    # scale of the normal's first derivatives in both chart directions
    from .frontal import directional_derivative
    total = 1.0
    for e in ((1.0, 0.0), (0.0, 1.0)):
        d = directional_derivative(F.chart, lp.f, lp.nu, e)
        od = d[0].order
        x = tuple(c.truncated(od) for c in lp.f)
        total = max(total, math.sqrt(max(F.chart.inner_product(x, d, d).value, 0.0)))
    return total


def classify_point(F: FrontalSurface, p,
                   order: int = DEFAULT_POINT_ORDER) -> Classification:
    """Classify a parameter point of the surface."""
    lp = local_point(F, p, order)
    lam_scale = max(1.0, lp.lam.max_abs_coeff())
    lam_val = lp.lam.value
    grad = (float(lp.lam_grad[0]), float(lp.lam_grad[1]))
    if abs(lam_val) > ZERO_RTOL * lam_scale:
        return Classification("Regular", Evidence(lam_val, grad, rank=2))
    if lp.degenerate or lp.rank == 0:
        return Classification("DegenerateSingular",
                              Evidence(lam_val, grad, rank=lp.rank))

    fr = CurveFrame(F, p, order, lp=lp)
    kind = fr.kind
    nu_eta_norm = _nu_eta_norm(F, lp)
    front = nu_eta_norm > ZERO_RTOL * _nu_scale(F, lp)
    kn = kappa_nu(F, p, order, lp=lp)

    if kind == "first":
        psi, speed = psi_ccr_jet(F, p, order, fr=fr)
        psi0 = psi.value
        dpsi = psi.partial(0).value / speed.value
        scale = max(1.0, psi.max_abs_coeff())
        ev = Evidence(lam_val, grad, rank=1, kind=kind, is_front=front,
                      nu_eta_norm=nu_eta_norm, kappa_nu=kn,
                      psi_ccr=psi0, d_psi_ccr=dpsi)
        if front:
            return Classification("CuspidalEdge", ev)
        if abs(dpsi) > ZERO_RTOL * scale:
            return Classification("CuspidalCrossCap", ev)
        return Classification("FirstKindNonFrontDegenerate", ev)

    tv, dtv = kind_transversality(fr.cj)
    ev = Evidence(lam_val, grad, rank=1, kind=kind, is_front=front,
                  nu_eta_norm=nu_eta_norm, kappa_nu=kn,
                  transversality=tv, d_transversality=dtv)
    if not front:
        return Classification("SecondKindNonFront", ev)
    if abs(dtv) > ZERO_RTOL:
        return Classification("Swallowtail", ev)
    return Classification("SecondKindFrontNonSwallowtail", ev)
