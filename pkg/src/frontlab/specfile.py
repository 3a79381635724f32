"""Surface spec documents.

A surface is described by a TOML document::

    [surface]
    f = ["u", "v^2", "v^3"]            # three expressions in u, v
    normal = ["0", "-3*v", "2"]        # optional; validated, not normalized

    [params]
    a = 1.0

    [metric]
    type = "euclidean"                 # or "sphere" / "hyperbolic"
    # g = [["1","0","0"], ["0","1","0"], ["0","0","(1+x1)^2"]]

    [domain]
    u = [-1.0, 1.0]
    v = [-1.0, 1.0]

Only ``[surface].f`` is mandatory.  A supplied normal is used exactly as
written (it must already be unit length and orthogonal to the surface
tangents, which :func:`frontlab.frontal.resolve_normal` checks on a grid).
Parameters are late-bound reals so one parsed spec can sweep a family.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field, replace
from typing import Dict, Optional, Tuple

if sys.version_info >= (3, 11):
    import tomllib as _toml
else:
    import tomli as _toml

from .ambient import (AmbientChart, chart_from_matrix, euclidean_chart,
                      hyperbolic_chart, sphere_chart)
from .errors import ExpressionError, SpecFileError
from .expressions import Expression, parse_expression

SURFACE_VARS = ("u", "v")


@dataclass(frozen=True)
class SurfaceSpec:
    """A parsed surface definition with late-bound parameters."""

    f: Tuple[Expression, Expression, Expression]
    normal: Optional[Tuple[Expression, Expression, Expression]]
    params: Dict[str, float]
    chart: AmbientChart
    domain: Tuple[Tuple[float, float], Tuple[float, float]]
    name: str = ""

    def with_params(self, overrides: Dict[str, float]) -> "SurfaceSpec":
        unknown = set(overrides) - set(self.params)
        if unknown:
            raise SpecFileError(f"unknown parameter(s): {', '.join(sorted(unknown))}")
        merged = dict(self.params)
        merged.update({k: float(v) for k, v in overrides.items()})
        chart = self.chart
        if chart.kind == "general" and chart.params:
            chart = replace(chart, params=dict(merged))
        return replace(self, params=merged, chart=chart)

    def in_domain(self, p) -> bool:
        (ulo, uhi), (vlo, vhi) = self.domain
        return ulo <= p[0] <= uhi and vlo <= p[1] <= vhi


def _expr_list(raw, key: str, params, n=3):
    if not isinstance(raw, list) or len(raw) != n:
        raise SpecFileError(f"'{key}' must be a list of {n} expression strings")
    out = []
    for i, text in enumerate(raw):
        try:
            out.append(parse_expression(text, SURFACE_VARS, params))
        except ExpressionError as exc:
            raise SpecFileError(f"in {key}[{i}] = {text!r}: {exc}") from exc
    return tuple(out)


def parse_surface_spec(text: str, name: str = "") -> SurfaceSpec:
    """Parse a spec document into a :class:`SurfaceSpec`.

    Raises :class:`SpecFileError` with the TOML line/column for document
    syntax errors and with the expression position for expression errors.
    """
    try:
        doc = _toml.loads(text)
    except _toml.TOMLDecodeError as exc:
        raise SpecFileError(f"spec document is not valid TOML: {exc}") from exc

    surface = doc.get("surface")
    if not isinstance(surface, dict) or "f" not in surface:
        raise SpecFileError("missing [surface] section with an 'f' entry")

    params_raw = doc.get("params", {})
    if not isinstance(params_raw, dict):
        raise SpecFileError("[params] must be a table of name = real entries")
    params = {}
    for k, v in params_raw.items():
        if not isinstance(v, (int, float)) or isinstance(v, bool):
            raise SpecFileError(f"parameter '{k}' must be a real number")
        params[k] = float(v)
    param_names = tuple(params.keys())

    f = _expr_list(surface["f"], "surface.f", param_names)
    normal = None
    if "normal" in surface:
        normal = _expr_list(surface["normal"], "surface.normal", param_names)

    metric = doc.get("metric", {"type": "euclidean"})
    if not isinstance(metric, dict):
        raise SpecFileError("[metric] must be a table")
    if "g" in metric:
        g = metric["g"]
        try:
            chart = chart_from_matrix(g, params=params, name="custom")
        except ExpressionError as exc:
            raise SpecFileError(f"in metric.g: {exc}") from exc
    else:
        mtype = metric.get("type", "euclidean")
        factories = {"euclidean": euclidean_chart, "sphere": sphere_chart,
                     "hyperbolic": hyperbolic_chart}
        if mtype not in factories:
            raise SpecFileError(
                f"unknown metric type {mtype!r}; use euclidean, sphere, hyperbolic, "
                f"or supply a g matrix")
        chart = factories[mtype]()

    dom_raw = doc.get("domain", {})
    domain = []
    for var in SURFACE_VARS:
        rng = dom_raw.get(var, [-1.0, 1.0])
        if (not isinstance(rng, list) or len(rng) != 2
                or not all(isinstance(x, (int, float)) for x in rng)
                or rng[0] >= rng[1]):
            raise SpecFileError(f"domain.{var} must be [lo, hi] with lo < hi")
        domain.append((float(rng[0]), float(rng[1])))

    return SurfaceSpec(f=f, normal=normal, params=params, chart=chart,
                       domain=(domain[0], domain[1]),
                       name=name or surface.get("name", ""))


def load_surface_spec(path: str) -> SurfaceSpec:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return parse_surface_spec(text, name=str(path))
