"""Built-in catalog of reference surfaces.

Each entry is a complete spec document plus the point of interest, the
expected classification there, and reference invariant values for the
default parameters.  The CLI can list the entries and materialize the
spec files; the test suite uses them as regression anchors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Optional, Tuple

from .frontal import FrontalSurface, resolve_normal
from .specfile import parse_surface_spec


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    description: str
    toml: str
    seed: Tuple[float, float]
    point: Tuple[float, float]
    classification: str
    expected: Dict[str, float] = field(default_factory=dict)


def _entry(name, description, toml, seed, point, classification, expected=None):
    return CatalogEntry(name, description, toml.strip() + "\n", seed, point,
                        classification, expected or {})


_SQ2 = math.sqrt(2.0)

CATALOG: Dict[str, CatalogEntry] = {}


def _register(e: CatalogEntry):
    CATALOG[e.name] = e


_register(_entry(
    "cuspidal_edge",
    "standard cuspidal edge (u, v^2, v^3); flat singular curve on the u-axis",
    """
[surface]
f = ["u", "v^2", "v^3"]
normal = ["0", "-3*v/sqrt(9*v^2+4)", "2/sqrt(9*v^2+4)"]
[domain]
u = [-1.0, 1.0]
v = [-1.0, 1.0]
""",
    seed=(0.0, 0.1), point=(0.0, 0.0), classification="CuspidalEdge",
    expected={"kappa_s": 0.0, "kappa_nu": 0.0, "kappa_c": 3.0 / _SQ2},
))

_register(_entry(
    "cone",
    "circular cone (v cos u, v sin u, v^2+v); every singular point is of the "
    "second kind with constant limiting normal curvature",
    """
[surface]
f = ["v*cos(u)", "v*sin(u)", "v^2+v"]
normal = [
  "-(1+2*v)*cos(u)/sqrt((1+2*v)^2+1)",
  "-(1+2*v)*sin(u)/sqrt((1+2*v)^2+1)",
  "1/sqrt((1+2*v)^2+1)",
]
[domain]
u = [-7.0, 7.0]
v = [-0.4, 0.4]
""",
    seed=(1.0, 0.0), point=(0.0, 0.0),
    classification="SecondKindFrontNonSwallowtail",
    expected={"kappa_nu": 1.0 / _SQ2},
))

_register(_entry(
    "swallowtail_quartic",
    "swallowtail family with quartic components; the limiting normal "
    "curvature at the origin is 8a and drifts with slope -64b/3 along the curve",
    """
[surface]
f = [
  "u^4-4*u^2*v+a*(u^2-2*v)^2",
  "u^3-3*u*v+b*(u^2-2*v)^2",
  "u^2/2-v",
]
normal = [
  "3/sqrt(9+64*u^2+16*(3*(a-1)*u^2-8*b*u^3-6*a*v+16*b*u*v)^2)",
  "-8*u/sqrt(9+64*u^2+16*(3*(a-1)*u^2-8*b*u^3-6*a*v+16*b*u*v)^2)",
  "-4*(3*(a-1)*u^2-8*b*u^3-6*a*v+16*b*u*v)/sqrt(9+64*u^2+16*(3*(a-1)*u^2-8*b*u^3-6*a*v+16*b*u*v)^2)",
]
[params]
a = 0.5
b = 1.0
[domain]
u = [-0.6, 0.6]
v = [-0.6, 0.6]
""",
    seed=(0.0, 0.1), point=(0.0, 0.0), classification="Swallowtail",
    expected={"kappa_nu": 4.0, "d_kappa_nu_du": -64.0 / 3.0},
))

_register(_entry(
    "peak_front",
    "front with an isolated second-kind point that is not a swallowtail",
    """
[surface]
f = ["5*u^4+2*u*v", "v", "4*u^5+u^2*v-v^2"]
normal = [
  "-u/sqrt(u^2+(u^2+2*v)^2+1)",
  "(u^2+2*v)/sqrt(u^2+(u^2+2*v)^2+1)",
  "1/sqrt(u^2+(u^2+2*v)^2+1)",
]
[domain]
u = [-0.8, 0.8]
v = [-0.8, 0.8]
""",
    seed=(0.0, 0.05), point=(0.0, 0.0),
    classification="SecondKindFrontNonSwallowtail",
    expected={"kappa_nu": 0.0},
))

_register(_entry(
    "peak_frontal",
    "frontal that is not a front at its second-kind point (the normal's "
    "differential vanishes there)",
    """
[surface]
f = ["u^2+2*v", "u^3+3*u*v", "u^5+5*u^3*v"]
normal = [
  "-5*u^3/sqrt(25*u^6+25*u^4+1)",
  "5*u^2/sqrt(25*u^6+25*u^4+1)",
  "-1/sqrt(25*u^6+25*u^4+1)",
]
[domain]
u = [-0.8, 0.8]
v = [-0.8, 0.8]
""",
    seed=(0.0, 0.05), point=(0.0, 0.0), classification="SecondKindNonFront",
    expected={"kappa_H": 0.0},
))

_register(_entry(
    "cuspidal_cross_cap",
    "cuspidal cross cap with prescribed singular and limiting normal "
    "curvatures ks, kn and cusp opening rate c",
    """
[surface]
f = ["u", "ks*u^2/2+v^2/2", "c*u*v^3/6+kn*u^2/2"]
normal = [
  "(3*c*ks*u^2*v-c*v^3-6*kn*u)/sqrt(9*c^2*u^2*v^2+(c*v*(v^2-3*ks*u^2)+6*kn*u)^2+36)",
  "-3*c*u*v/sqrt(9*c^2*u^2*v^2+(c*v*(v^2-3*ks*u^2)+6*kn*u)^2+36)",
  "6/sqrt(9*c^2*u^2*v^2+(c*v*(v^2-3*ks*u^2)+6*kn*u)^2+36)",
]
[params]
ks = 2.0
kn = 0.0
c = 6.0
[domain]
u = [-0.5, 0.5]
v = [-0.5, 0.5]
""",
    seed=(0.1, 0.05), point=(0.0, 0.0), classification="CuspidalCrossCap",
    expected={"kappa_s": 2.0, "kappa_nu": 0.0, "kappa_c": 0.0},
))

_register(_entry(
    "edge52",
    "edge of 5/2 type: first kind, nowhere a front, with bounded Gaussian "
    "and mean curvature",
    """
[surface]
f = ["u", "a*u^2+v^2", "c*u^2+b*v^5"]
normal = [
  "(10*a*b*u*v^3-4*c*u)/sqrt((4*c*u-10*a*b*u*v^3)^2+25*b^2*v^6+4)",
  "-5*b*v^3/sqrt((4*c*u-10*a*b*u*v^3)^2+25*b^2*v^6+4)",
  "2/sqrt((4*c*u-10*a*b*u*v^3)^2+25*b^2*v^6+4)",
]
[params]
a = 1.0
b = 1.0
c = 1.0
[domain]
u = [-0.8, 0.8]
v = [-0.8, 0.8]
""",
    seed=(0.0, 0.1), point=(0.0, 0.0),
    classification="FirstKindNonFrontDegenerate",
    expected={"kappa_s": 2.0, "kappa_nu": 2.0},
))

_register(_entry(
    "cusp_k",
    "cuspidal edge deformed by a*u^k in the cusp direction; the exponent k "
    "switches the rational boundedness class of the Gaussian curvature",
    """
[surface]
f = ["u", "v^2", "v^3+a*u^k"]
normal = [
  "-2*a*k*u^(k-1)/sqrt(4*a^2*k^2*u^(2*k-2)+9*v^2+4)",
  "-3*v/sqrt(4*a^2*k^2*u^(2*k-2)+9*v^2+4)",
  "2/sqrt(4*a^2*k^2*u^(2*k-2)+9*v^2+4)",
]
[params]
a = 1.0
k = 2
[domain]
u = [-1.0, 1.0]
v = [-1.0, 1.0]
""",
    seed=(0.0, 0.1), point=(0.0, 0.0), classification="CuspidalEdge",
    expected={},
))

_register(_entry(
    "cross_cap_rational",
    "cuspidal cross cap whose Gaussian curvature is rationally bounded even "
    "though the limiting normal curvature is 2 (it is not a front)",
    """
[surface]
f = ["u", "v^2", "u*v^3+u^2"]
normal = [
  "-2*(2*u+v^3)/sqrt(4+4*(2*u+v^3)^2+9*u^2*v^2)",
  "-3*u*v/sqrt(4+4*(2*u+v^3)^2+9*u^2*v^2)",
  "2/sqrt(4+4*(2*u+v^3)^2+9*u^2*v^2)",
]
[domain]
u = [-0.5, 0.5]
v = [-0.5, 0.5]
""",
    seed=(0.1, 0.05), point=(0.0, 0.0), classification="CuspidalCrossCap",
    expected={"kappa_nu": 2.0},
))

_register(_entry(
    "sw2",
    "swallowtail with tunable scales b, c; carries the reference values for "
    "kappa_H, tau_s, tau_c and the vH / vK expansions",
    """
[surface]
f = [
  "v+u^2/2-b^2*u^2*v/2-b^2*u^4/8",
  "b*u^3/3+b*u*v",
  "c*v^2/2",
]
normal = [
  "2*b*c*(u^2+v)/sqrt(b^6*u^4+b^4*u^2*(c^2*(u^2+2*v)^2+4)+4*b^2*(c^2*v^2+1)+4*c^2*u^2)",
  "c*u*(b^2*(u^2+2*v)-2)/sqrt(b^6*u^4+b^4*u^2*(c^2*(u^2+2*v)^2+4)+4*b^2*(c^2*v^2+1)+4*c^2*u^2)",
  "-b*(b^2*u^2+2)/sqrt(b^6*u^4+b^4*u^2*(c^2*(u^2+2*v)^2+4)+4*b^2*(c^2*v^2+1)+4*c^2*u^2)",
]
[params]
b = 1.0
c = 1.0
[domain]
u = [-0.8, 0.8]
v = [-0.8, 0.8]
""",
    seed=(0.3, 0.0), point=(0.0, 0.0), classification="Swallowtail",
    expected={"kappa_H": 1.0, "tau_s": 2.0, "tau_c": _SQ2,
              "kappa_nu": -1.0, "two_hatH": 1.0, "hatK": -1.0},
))

_register(_entry(
    "developable",
    "developable strip swept along a latitude circle of the unit sphere; "
    "flat (K = 0) with cuspidal curvature -2*cot(phi)/sqrt(a)",
    """
[surface]
f = [
  "v*sin(phi)*cos(u/sin(phi))+a*sin(phi)^2*sin(u/sin(phi))",
  "v*sin(phi)*sin(u/sin(phi))+a*sin(phi)^2*(1-cos(u/sin(phi)))",
  "v*cos(phi)+a*u*cos(phi)",
]
normal = [
  "-cos(phi)*cos(u/sin(phi))",
  "-cos(phi)*sin(u/sin(phi))",
  "sin(phi)",
]
[params]
a = 1.0
phi = 1.0471975511965976
[domain]
u = [-1.5, 1.5]
v = [-0.5, 0.5]
""",
    seed=(0.2, 0.1), point=(0.0, 0.0), classification="CuspidalEdge",
    expected={"kappa_nu": 0.0,
              "abs_kappa_c": 2.0 / math.tan(math.pi / 3.0)},
))


def names():
    return sorted(CATALOG.keys())


def get(name: str) -> CatalogEntry:
    if name not in CATALOG:
        raise KeyError(f"unknown catalog entry '{name}'; known: {', '.join(names())}")
    return CATALOG[name]


def load_surface(name: str, params: Optional[Dict[str, float]] = None) -> FrontalSurface:
    entry = get(name)
    spec = parse_surface_spec(entry.toml, name=name)
    if params:
        spec = spec.with_params(params)
    return resolve_normal(spec)


def materialize(name: str, directory: str) -> Path:
    entry = get(name)
    path = Path(directory) / f"{name}.toml"
    path.write_text(entry.toml, encoding="utf-8")
    return path
