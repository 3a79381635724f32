"""Command-line driver.

Subcommands: analyze, catalog, export-mesh, probe, slice.  Exit codes:
0 success, 2 spec/parse error, 3 degenerate singularity (a partial
report may still be written), 4 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from .boundedness import ProbeConfig, blowup_probe
from .catalog import CATALOG, get as catalog_get, materialize
from .errors import (DegenerateSingularityError, EvaluationError,
                     FrontlabError, SpecFileError)
from .frontal import TraceDiagnostic, resolve_normal
from .invariants import InvariantProfile
from .mesh import write_mesh
from .report import (AnalysisOptions, analyze_surface, json_dumps, probe_csv,
                     samples_csv, slice_csv)
from .specfile import load_surface_spec
from .slicing import orthogonal_slice, slice_cusp_check

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DEGENERATE = 3
EXIT_NUMERIC = 4


def _parse_params(items):
    out = {}
    for item in items or []:
        if "=" not in item:
            raise SpecFileError(f"--param expects name=value, got {item!r}")
        name, _, val = item.partition("=")
        try:
            out[name.strip()] = float(val)
        except ValueError as exc:
            raise SpecFileError(f"parameter {name!r} has non-numeric value "
                                f"{val!r}") from exc
    return out


def _parse_pair(text, flag):
    try:
        a, b = text.split(",")
        return float(a), float(b)
    except ValueError as exc:
        raise SpecFileError(f"{flag} expects 'u,v', got {text!r}") from exc


def _load(args):
    spec = load_surface_spec(args.spec)
    params = _parse_params(getattr(args, "param", None))
    if params:
        spec = spec.with_params(params)
    return resolve_normal(spec)


def _default_order(args):
    env = os.environ.get("FRONTLAB_JET_ORDER")
    if getattr(args, "order", None):
        return args.order
    if env:
        return int(env)
    return 6


def _write_out(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_analyze(args) -> int:
    F = _load(args)
    if args.tolerance is not None:
        from .classify import set_zero_rtol
        set_zero_rtol(args.tolerance)
    seed = _parse_pair(args.seed, "--seed") if args.seed else None
    if seed is None:
        raise SpecFileError("analyze requires --seed u,v")
    options = AnalysisOptions(seed=seed, step=args.step,
                              max_samples=args.max_samples,
                              order=_default_order(args),
                              slice_at=args.slice_at, probe=args.probe)
    partial = None
    code = EXIT_OK
    try:
        report = analyze_surface(F, options)
    except TraceDiagnostic as exc:
        # degenerate point on the arc: emit what was traced
        report = {"error": str(exc),
                  "trace": {"n_samples": len(exc.samples)},
                  "partial": True}
        code = EXIT_DEGENERATE
    _write_out(json_dumps(report), args.json)
    if args.csv and report.get("profile"):
        prof = InvariantProfile(**report["profile"])
        from .report import profile_csv
        _write_out(profile_csv(prof), args.csv)
    if args.trace_csv and "samples" in report.get("trace", {}):
        from .frontal import trace_singular_curve
        samples = trace_singular_curve(F, tuple(options.seed),
                                       step=options.step,
                                       max_samples=options.max_samples)
        _write_out(samples_csv(samples), args.trace_csv)
    return code


def cmd_catalog(args) -> int:
    if not args.name:
        for name in sorted(CATALOG):
            e = CATALOG[name]
            print(f"{name}: {e.description}")
            if e.expected:
                ref = ", ".join(f"{k}={v:.10g}" for k, v in sorted(e.expected.items()))
                print(f"    reference values: {ref}")
            print(f"    point of interest ({e.point[0]:g}, {e.point[1]:g}) -> "
                  f"{e.classification}; default seed ({e.seed[0]:g}, {e.seed[1]:g})")
        return EXIT_OK
    entry = catalog_get(args.name)
    path = materialize(args.name, args.out)
    print(f"wrote {path}")
    return EXIT_OK


def cmd_export_mesh(args) -> int:
    F = _load(args)
    try:
        nu, nv = (int(x) for x in args.grid.split("x"))
    except ValueError as exc:
        raise SpecFileError(f"--grid expects NUxNV, got {args.grid!r}") from exc
    write_mesh(F, (nu, nv), args.out)
    print(f"wrote {args.out}")
    if args.curve_csv:
        from .frontal import trace_singular_curve
        seed = _parse_pair(args.seed, "--seed") if args.seed else None
        if seed is None:
            raise SpecFileError("--curve-csv requires --seed u,v")
        samples = trace_singular_curve(F, seed, step=args.step,
                                       max_samples=args.max_samples)
        _write_out(samples_csv(samples), args.curve_csv)
    return EXIT_OK


def cmd_probe(args) -> int:
    F = _load(args)
    at = _parse_pair(args.at, "--at")
    cfg = ProbeConfig(r_max=args.r_max, r_min=args.r_min,
                      per_decade=args.per_decade, n_theta=args.n_theta)
    probe = blowup_probe(F, args.scalar, at, cfg)
    print(json_dumps(probe.as_dict()))
    if args.csv:
        _write_out(probe_csv(probe), args.csv)
    return EXIT_OK


def cmd_slice(args) -> int:
    F = _load(args)
    at = _parse_pair(args.at, "--at")
    kc, tau, rel = slice_cusp_check(F, at, order=_default_order(args))
    print(json_dumps({"kappa_c_surface": kc, "tau_slice": tau,
                      "rel_diff": rel}))
    if args.csv:
        sl = orthogonal_slice(F, at, order=_default_order(args))
        ts = list(np.linspace(-args.extent, args.extent, 101))
        _write_out(slice_csv(sl, ts), args.csv)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="frontlab",
        description="analyze wave-front singularities of parametrized surfaces")
    ap.add_argument("--version", action="version", version=f"frontlab {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(p, with_seed=True):
        p.add_argument("spec", help="surface spec document (TOML)")
        p.add_argument("--param", action="append", metavar="NAME=VALUE",
                       help="override a parameter (repeatable)")
        if with_seed:
            p.add_argument("--seed", metavar="U,V",
                           help="seed near the singular curve")
        p.add_argument("--order", type=int, default=None,
                       help="jet order (default 6 or FRONTLAB_JET_ORDER)")
        p.add_argument("--step", type=float, default=0.05,
                       help="trace step in the parameter plane")
        p.add_argument("--max-samples", type=int, default=200)

    pa = sub.add_parser("analyze", help="trace, classify, invariants, verdicts")
    add_common(pa)
    pa.add_argument("--json", default="-", metavar="PATH",
                    help="report destination ('-' for stdout)")
    pa.add_argument("--csv", default=None, metavar="PATH",
                    help="write the invariant profile as CSV")
    pa.add_argument("--trace-csv", default=None, metavar="PATH",
                    help="write the traced samples as CSV")
    pa.add_argument("--slice-at", type=float, default=None, metavar="T",
                    help="also slice at the arc point closest to arclength T")
    pa.add_argument("--probe", action="store_true",
                    help="include blow-up probes in the verdicts")
    pa.add_argument("--tolerance", type=float, default=None,
                    help="override the zero-test tolerance (advanced)")
    pa.set_defaults(func=cmd_analyze)

    pc = sub.add_parser("catalog", help="list or materialize built-in surfaces")
    pc.add_argument("name", nargs="?", help="entry to write as NAME.toml")
    pc.add_argument("--out", default=".", help="output directory")
    pc.set_defaults(func=cmd_catalog)

    pm = sub.add_parser("export-mesh", help="triangulated OBJ export")
    add_common(pm)
    pm.add_argument("--grid", default="100x100", help="NUxNV resolution")
    pm.add_argument("--out", required=True, help="mesh output path")
    pm.add_argument("--curve-csv", default=None,
                    help="write the traced singular polyline as CSV")
    pm.set_defaults(func=cmd_export_mesh)

    pp = sub.add_parser("probe", help="polar blow-up sampling of K/H/vK/vH")
    add_common(pp, with_seed=False)
    pp.add_argument("--at", required=True, metavar="U,V")
    pp.add_argument("--scalar", default="K", choices=("K", "H", "vK", "vH"))
    pp.add_argument("--r-max", type=float, default=1e-1)
    pp.add_argument("--r-min", type=float, default=1e-5)
    pp.add_argument("--per-decade", type=int, default=9)
    pp.add_argument("--n-theta", type=int, default=720)
    pp.add_argument("--csv", default=None)
    pp.set_defaults(func=cmd_probe)

    ps = sub.add_parser("slice", help="orthogonal plane slice and cusp check")
    add_common(ps, with_seed=False)
    ps.add_argument("--at", required=True, metavar="U,V")
    ps.add_argument("--csv", default=None, help="write the section polyline")
    ps.add_argument("--extent", type=float, default=0.3,
                    help="parameter range for the section polyline")
    ps.set_defaults(func=cmd_slice)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (SpecFileError, EvaluationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DegenerateSingularityError as exc:
        print(f"degenerate singularity: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except TraceDiagnostic as exc:
        print(f"trace stopped: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except FrontlabError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
