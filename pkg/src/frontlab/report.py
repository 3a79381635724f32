"""Analysis reports and deterministic serialization.

Reports are self-contained: the configuration echo plus the surface
identity reproduce the run bit-for-bit (floats are serialized with
repr round-tripping, keys are sorted, and nothing time-dependent is
written).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from . import __version__
from .boundedness import ProbeConfig, boundedness_report
from .classify import classify_point
from .errors import DegenerateSingularityError, FrontlabError, KindError
from .frontal import (FrontalSurface, locate_second_kind_points,
                      newton_to_curve, trace_singular_curve)
from .invariants import (InvariantProfile, first_kind_profile,
                         second_kind_invariants)
from .slicing import slice_cusp_check


def json_dumps(obj) -> str:
    """Deterministic JSON: sorted keys, round-trip floats, no timestamps."""
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=True)


def format_float(x: float) -> str:
    return f"{x:.12g}"


def profile_csv(profile: InvariantProfile) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(profile.COLUMNS)
    for row in profile.rows():
        w.writerow([format_float(x) for x in row])
    return buf.getvalue()


def samples_csv(samples) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["u", "v", "t", "kind", "lambda_u", "lambda_v", "eta_u", "eta_v"])
    for s in samples:
        r = s.as_row()
        w.writerow([format_float(r[0]), format_float(r[1]), format_float(r[2]),
                    r[3], format_float(r[4]), format_float(r[5]),
                    format_float(r[6]), format_float(r[7])])
    return buf.getvalue()


def probe_csv(probe) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["r", "theta", "value"])
    for r, th, val in probe.samples:
        w.writerow([format_float(r), format_float(th), format_float(val)])
    return buf.getvalue()


def slice_csv(slice_curve, ts) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "x", "y"])
    for t, x, y in slice_curve.points(ts):
        w.writerow([format_float(t), format_float(x), format_float(y)])
    return buf.getvalue()


@dataclass
class AnalysisOptions:
    seed: Optional[Sequence[float]] = None
    step: float = 0.05
    max_samples: int = 200
    order: int = 6
    slice_at: Optional[float] = None
    probe: bool = False
    probe_config: ProbeConfig = field(default_factory=ProbeConfig)

    def as_dict(self):
        return {"seed": list(self.seed) if self.seed is not None else None,
                "step": self.step, "max_samples": self.max_samples,
                "order": self.order, "slice_at": self.slice_at,
                "probe": self.probe}


def analyze_surface(F: FrontalSurface, options: AnalysisOptions) -> Dict:
    """Full pipeline: trace, classify, invariants, verdicts, slices."""
    if options.seed is None:
        raise FrontlabError("an analysis seed (u, v) is required")
    samples = trace_singular_curve(F, tuple(options.seed), step=options.step,
                                   max_samples=options.max_samples)
    report: Dict = {
        "tool": {"name": "frontlab", "version": __version__},
        "surface": {
            "name": F.spec.name,
            "params": dict(sorted(F.params.items())),
            "normal_mode": F.normal_mode,
            "metric": F.chart.name,
            "domain": [list(F.spec.domain[0]), list(F.spec.domain[1])],
        },
        "config": options.as_dict(),
        "trace": {
            "n_samples": len(samples),
            "kinds": {"first": sum(1 for s in samples if s.kind == "first"),
                      "second": sum(1 for s in samples if s.kind == "second")},
            "samples": [
                {"u": s.p[0], "v": s.p[1], "t": s.t, "kind": s.kind,
                 "lambda_grad": list(s.lambda_grad), "eta": list(s.eta),
                 "sign_dlambda_eta": s.sign_dlambda_eta}
                for s in samples],
        },
    }

    seed_corrected = newton_to_curve(F, tuple(options.seed))
    n_second = sum(1 for s in samples if s.kind == "second")
    if n_second > len(samples) // 2:
        # the whole arc is second kind (cone-like); analyze a representative
        focus_points = [seed_corrected]
    else:
        focus_points = locate_second_kind_points(F, samples)
        if not focus_points:
            focus_points = [seed_corrected]

    points_out = []
    for q in focus_points:
        entry: Dict = {"u": q[0], "v": q[1]}
        try:
            cls = classify_point(F, q, options.order)
            entry["classification"] = cls.as_dict()
            verdict = boundedness_report(F, q, cls, arc=samples,
                                         order=options.order,
                                         arc_step=options.step,
                                         probe_config=options.probe_config)
            entry["boundedness"] = verdict.as_dict()
            if options.probe:
                from .boundedness import blowup_probe
                entry["probes"] = {
                    scalar: blowup_probe(F, scalar, q,
                                         options.probe_config).as_dict()
                    for scalar in ("K", "H")}
            if cls.label == "Swallowtail":
                inv = second_kind_invariants(F, q, options.order, swallowtail=True)
                entry["invariants"] = inv.as_dict()
            elif cls.evidence.kind == "second":
                inv = second_kind_invariants(F, q, options.order)
                entry["invariants"] = inv.as_dict()
        except (DegenerateSingularityError, KindError, FrontlabError) as exc:
            entry["error"] = str(exc)
        points_out.append(entry)
    report["points"] = points_out

    first = [s for s in samples if s.kind == "first"]
    if first:
        prof = first_kind_profile(F, first, options.order)
        report["profile"] = prof.as_dict()
    else:
        report["profile"] = None

    if options.slice_at is not None:
        t0 = options.slice_at
        # slice at the arc point whose graph parameter is closest to t0
        best = min(first, key=lambda s: abs(s.t - t0)) if first else None
        if best is None:
            report["slice"] = {"error": "no first-kind sample to slice at"}
        else:
            try:
                kc, tau, rel = slice_cusp_check(F, best.p, options.order)
                report["slice"] = {"u": best.p[0], "v": best.p[1],
                                   "kappa_c_surface": kc, "tau_slice": tau,
                                   "rel_diff": rel}
            except FrontlabError as exc:
                report["slice"] = {"error": str(exc)}
    return report
