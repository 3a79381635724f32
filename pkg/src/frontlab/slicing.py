"""Orthogonal plane slices through first-kind singular points.

Cutting the surface by the plane through the image point orthogonal to
the singular-curve tangent exposes a planar 3/2-cusp whose cuspidal
curvature must reproduce the surface's cuspidal curvature at that point.
The section curve is computed by implicit jets (no meshing): in a frame
whose second direction is the null direction, the plane equation is
solved for the first coordinate as a function of the second, and the
resulting space curve is projected onto an orthonormal basis of the
plane.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .errors import DegenerateSingularityError, KindError, SliceError
from .frontal import (DEFAULT_POINT_ORDER, FrontalSurface, _pad, local_point,
                      solve_graph)
from .invariants import CurveFrame, kappa_c_curve, planar_cusp_curvature
from .jets import Jet

#: Whitney's cross-cap determinant above this (relative) scale rejects the
#: input: the point is a cross cap, not a frontal singular point.
CROSS_CAP_RTOL = 1e-7


@dataclass(frozen=True)
class SliceCurve:
    """The planar section at a first-kind singular point."""

    p: Tuple[float, float]
    origin: np.ndarray          # f(p)
    plane_normal: np.ndarray    # unit tangent of the image curve
    basis: Tuple[np.ndarray, np.ndarray]
    graph: Jet                  # first-frame-coordinate as a jet in the null one
    sigma: Tuple[Jet, Jet, Jet]  # space jets of the section, offset from origin
    sigma_plane: Tuple[Jet, Jet]

    def points(self, ts):
        """Sample the planar section curve (for plotting/CSV export)."""
        out = []
        for t in ts:
            x = _eval_jet1(self.sigma_plane[0], t)
            y = _eval_jet1(self.sigma_plane[1], t)
            out.append((t, x, y))
        return out


def _eval_jet1(j: Jet, t: float) -> float:
    deg = max((k for (k,) in j.coeffs), default=0)
    acc = 0.0
    for k in range(deg, -1, -1):
        acc = acc * t + j.coeffs.get((k,), 0.0)
    return acc


def cross_cap_determinant(f_e, f_etaeta, f_eeta, x=None) -> float:
    """Whitney's cross-cap witness det(f_u, f_vv, f_uv) in an admissible frame."""
    m = np.array([[c.value for c in f_e],
                  [c.value for c in f_etaeta],
                  [c.value for c in f_eeta]])
    return float(np.linalg.det(m))


def orthogonal_slice(F: FrontalSurface, p, order: int = DEFAULT_POINT_ORDER):
    """Section of the surface by the plane orthogonal to the singular
    tangent at f(p).  Euclidean charts only."""
    if not F.chart.euclidean:
        raise SliceError("orthogonal slicing is defined in the Euclidean chart only")
    fr = CurveFrame(F, p, order)
    if fr.kind != "first":
        raise KindError("orthogonal_slice needs a first-kind singular point")

    # admissible linear frame: first direction along the curve, second null
    cvel = (fr.cj.c_off[0].partial(0).value, fr.cj.c_off[1].partial(0).value)
    tnorm = math.hypot(*cvel)
    tdir = np.array(cvel) / tnorm
    eta = np.array([fr.E[0].value, fr.E[1].value])
    m = order
    dU = Jet.variable(0, 0.0, 2, m)
    dV = Jet.variable(1, 0.0, 2, m)
    sub = [dU * float(tdir[0]) + dV * float(eta[0]),
           dU * float(tdir[1]) + dV * float(eta[1])]
    f0 = np.array([c.value for c in fr.lp.f])
    fuv = tuple((c - float(v0)).compose(sub) for c, v0 in zip(fr.lp.f, f0))

    f_U = tuple(c.partial(0) for c in fuv)
    f_V = tuple(c.partial(1) for c in fuv)
    q = np.array([c.value for c in f_U])
    qn = float(np.linalg.norm(q))
    if qn < 1e-12:
        raise SliceError("curve tangent has zero image velocity")
    f_VV = tuple(c.partial(1) for c in f_V)
    f_UV = tuple(c.partial(1) for c in f_U)
    wdet = cross_cap_determinant(f_U, f_VV, f_UV)
    scale = max(1.0, qn) * max(1.0, float(np.linalg.norm([c.value for c in f_VV]))) \
        * max(1.0, float(np.linalg.norm([c.value for c in f_UV])))
    if abs(wdet) > CROSS_CAP_RTOL * scale:
        raise SliceError(
            f"cross-cap witness determinant {wdet:.3e} is nonzero: the point "
            f"is a cross cap, not a frontal singular point")

    # implicit solve of <f - f(p), f_U(p)> = 0 for U = U(V)
    G = sum((c * float(qi) for c, qi in zip(fuv, q)),
            Jet.constant(0.0, 2, m))
    axis, graph = solve_graph(G)
    if axis != 1:
        raise SliceError("plane equation is degenerate along the curve tangent")

    t = Jet.variable(0, 0.0, 1, graph.order)
    curve = [_pad(graph, graph.order), t]
    sigma = tuple(c.truncated(graph.order).compose(curve) for c in fuv)

    qhat = q / qn
    b1 = np.array([c.value for c in f_VV])
    b1 = b1 - float(b1 @ qhat) * qhat
    n1 = float(np.linalg.norm(b1))
    if n1 < 1e-12:
        raise SliceError("transverse second derivative degenerates in the plane")
    b1 = b1 / n1
    b2 = np.cross(qhat, b1)
    sigma_plane = (
        sum((c * float(b) for c, b in zip(sigma, b1)), Jet.constant(0.0, 1, graph.order)),
        sum((c * float(b) for c, b in zip(sigma, b2)), Jet.constant(0.0, 1, graph.order)),
    )
    return SliceCurve(p=(float(p[0]), float(p[1])), origin=f0, plane_normal=qhat,
                      basis=(b1, b2), graph=graph, sigma=sigma,
                      sigma_plane=sigma_plane)


def slice_cusp_check(F: FrontalSurface, p,
                     order: int = DEFAULT_POINT_ORDER) -> Tuple[float, float, float]:
    """Compare the surface cuspidal curvature with the planar cusp value.

    Returns (kappa_c_surface, tau_slice, rel_diff).  Fails when the point
    has vanishing cuspidal curvature (no 3/2-cusp to compare against).
    """
    fr = CurveFrame(F, p, order)
    kc = kappa_c_curve(fr).value
    sl = orthogonal_slice(F, p, order)
    try:
        tau = planar_cusp_curvature(sl.sigma_plane)
    except DegenerateSingularityError as exc:
        raise SliceError(f"section is not a 3/2-cusp at (u,v)=({p[0]:g},{p[1]:g}): "
                         f"{exc}") from exc
    rel = abs(kc - tau) / max(abs(kc), 1e-300)
    return kc, tau, rel
