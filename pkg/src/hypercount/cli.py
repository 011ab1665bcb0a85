"""Command-line front end.  Every subcommand prints one JSON report.

Exit codes: 0 success, 1 malformed input or usage, 2 precondition failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bounds import Hypotheses, cubic_pipeline, generic_pipeline, quadratic_pipeline
from .curves import CurveModel, discriminant, good_primes, height, is_minimal, search_quadratic_points
from .errors import PreconditionError
from .family import verify_range
from .finite_fields import FFContext, affine_points, closed_point_counts, count_points, frobenius_orbits
from .polytopes import load_polytopes, mixed_volume, volume
from .valued_series import ValuedSeries, minimal_exponents, newton_polygon


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise UsageError(message)


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _load(path: str):
    return json.loads(Path(path).read_text())


def _curve(path: str) -> CurveModel:
    return CurveModel.from_json(_load(path))


def _rational_list(text: str):
    parts = [Fraction(s) for s in text.split(",")]
    return parts[0] if len(parts) == 1 else tuple(parts)


# ----------------------------------------------------------------- commands

def cmd_curve_info(args):
    c = _curve(args.file)
    out = {"genus": c.genus, "depressed": c.depressed, "discriminant": str(c.disc)}
    if c.depressed:
        h = height(c)
        mn = is_minimal(c)
        out["height"] = {"value": h.value, "index": h.index, "approx": f"{float(h):.6f}"}
        out["minimal"] = {"minimal": mn.minimal, "witness": mn.witness}
    else:
        out["height"] = None
        out["minimal"] = None
    out["good_primes"] = good_primes(c, args.prime_bound)
    return {"file": args.file, "prime_bound": args.prime_bound}, out, None


def cmd_curve_count(args):
    c = _curve(args.file)
    ctx = FFContext(args.p, args.m)
    if c.disc % args.p == 0:
        raise PreconditionError(f"bad reduction at {args.p}")
    f = c.ascending
    pts = affine_points(f, ctx)
    sizes = Counter(len(o) for o in frobenius_orbits(pts, ctx))
    counts = [count_points(f, FFContext(args.p, k)) for k in range(1, args.m + 1)]
    out = {
        "modulus": list(ctx.modulus),
        "affine_points": len(pts),
        "points": len(pts) + 1,
        "orbit_sizes": {str(k): v for k, v in sorted(sizes.items())},
        "closed_points_by_degree": closed_point_counts(counts),
    }
    return {"file": args.file, "p": args.p, "m": args.m}, out, None


def cmd_curve_search(args):
    c = _curve(args.file)
    pts = search_quadratic_points(c, args.bound)
    return {"file": args.file, "bound": args.bound}, {"points": [p.to_json() for p in pts]}, None


def cmd_polytope_mv(args):
    polys = load_polytopes(_load(args.file))
    out = {
        "mixed_volume": str(mixed_volume(polys)),
        "volumes": [str(volume(P)) for P in polys],
    }
    return {"file": args.file}, out, None


def cmd_series_newton(args):
    F = ValuedSeries.from_json(_load(args.file))
    m = _rational_list(args.m)
    exps = minimal_exponents(F, m)
    poly = newton_polygon(F, m)
    out = {"minimal_exponents": [list(u) for u in exps], "vertices": poly.to_json(), "empty": poly.is_empty}
    return {"file": args.file, "m": args.m}, out, None


def _bound(args, kind):
    hyps = Hypotheses.parse(args.assume, getattr(args, "p", None))
    c = _curve(args.file)
    if kind == "quadratic":
        rep = quadratic_pipeline(c, hyps)
    elif kind == "cubic":
        rep = cubic_pipeline(c, hyps)
    else:
        rep = generic_pipeline(args.d, c, hyps, p=args.p, refine=args.refine)
    inputs = {"file": args.file, "assume": args.assume}
    if kind == "generic":
        inputs.update(d=args.d, p=args.p, refine=args.refine)
    return inputs, rep.to_dict(), rep.hypotheses


def cmd_family_verify(args):
    if args.g_min < 3 or args.g_max < args.g_min:
        raise PreconditionError("need 3 <= g-min <= g-max")
    recs = [r.to_dict() for r in verify_range(args.g_min, args.g_max)]
    return {"g_min": args.g_min, "g_max": args.g_max}, {"records": recs, "all_passed": all(r["passed"] for r in recs)}, None


# ------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hypercount", description=__doc__.splitlines()[0])
    parser.add_argument("--pretty", action="store_true", help="human-readable summary instead of JSON")
    parser.add_argument("--version", action="version", version=__version__)
    top = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    curve = top.add_parser("curve").add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = curve.add_parser("info")
    p.add_argument("file")
    p.add_argument("--prime-bound", type=int, default=50)
    p.set_defaults(func=cmd_curve_info, command="curve info")
    p = curve.add_parser("count")
    p.add_argument("file")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, default=1)
    p.set_defaults(func=cmd_curve_count, command="curve count")
    p = curve.add_parser("search-quadratic")
    p.add_argument("file")
    p.add_argument("--bound", type=int, required=True)
    p.set_defaults(func=cmd_curve_search, command="curve search-quadratic")

    poly = top.add_parser("polytope").add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = poly.add_parser("mv")
    p.add_argument("file")
    p.set_defaults(func=cmd_polytope_mv, command="polytope mv")

    series = top.add_parser("series").add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = series.add_parser("newton")
    p.add_argument("file")
    p.add_argument("--m", required=True, help="radius, or comma-separated radii per variable")
    p.set_defaults(func=cmd_series_newton, command="series newton")

    bound = top.add_parser("bound").add_subparsers(dest="action", required=True, parser_class=_Parser)
    for kind in ("quadratic", "cubic"):
        p = bound.add_parser(kind)
        p.add_argument("file")
        p.add_argument("--assume", default="")
        p.set_defaults(func=lambda a, k=kind: _bound(a, k), command=f"bound {kind}")
    p = bound.add_parser("generic")
    p.add_argument("file")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--refine", action="store_true")
    p.add_argument("--assume", default="")
    p.set_defaults(func=lambda a: _bound(a, "generic"), command="bound generic")

    fam = top.add_parser("family").add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = fam.add_parser("verify")
    p.add_argument("--g-min", type=int, default=3)
    p.add_argument("--g-max", type=int, required=True)
    p.set_defaults(func=cmd_family_verify, command="family verify")
    return parser


def _summary(report: dict) -> str:
    lines = [f"{report['command']}  (hypercount {report['version']})"]
    for k, v in report["outputs"].items():
        if isinstance(v, (list, dict)):
            v = json.dumps(v, separators=(",", ":"))
            if len(v) > 100:
                v = v[:97] + "..."
        lines.append(f"  {k}: {v}")
    for h in report.get("hypotheses") or []:
        lines.append(f"  assumes: {h}")
    return "\n".join(lines)


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError:
        return 1
    except SystemExit as e:  # --help / --version
        return int(e.code or 0)
    try:
        inputs, outputs, hyps = args.func(args)
    except PreconditionError as e:
        sys.stderr.write(f"precondition failed: {e}\n")
        return 2
    except (ValueError, KeyError, TypeError, OSError, json.JSONDecodeError, ZeroDivisionError) as e:
        sys.stderr.write(f"malformed input: {e}\n")
        return 1
    report = {
        "command": args.command,
        "version": __version__,
        "inputs": _jsonable(inputs),
        "outputs": _jsonable(outputs),
        "hypotheses": hyps or [],
    }
    if args.pretty:
        stdout.write(_summary(report) + "\n")
    else:
        stdout.write(json.dumps(report, indent=2) + "\n")
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
