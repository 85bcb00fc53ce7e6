"""Command-line front end.

Exit status is 0 on success, 1 on domain or validation errors and 2 on
usage errors.  Reports go to stdout, diagnostics to stderr.
"""

import argparse
import sys

from . import __version__, report
from .candidates import (
    DEFAULT_RAYS,
    DEFAULT_SLOPE_FLOOR,
    refute_degree,
    scan_bijectivity,
)
from .efficiency import (
    DEFAULT_RATIO,
    DEFAULT_SLOPE_TOL,
    DEFAULT_STEPS,
    DEFAULT_TOL,
    RaySpec,
    classify,
    delta,
    format_rational,
    parse_rational,
    ray_limit_estimate,
)
from .errors import CantorInfoError
from .kproxy import WedgeSpec, census, wedge_points
from .pairing import pair_k, parse_nat, unpair_k
from .parser import parse_poly

DEFAULT_RAYS_TEXT = ",".join(format_rational(h) for h in DEFAULT_RAYS)


def _nat_arg(text):
    try:
        return parse_nat(text)
    except CantorInfoError:
        raise argparse.ArgumentTypeError(f"not a canonical natural: {text!r}")


def _pos_int(text):
    v = _nat_arg(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return v


def _rational_arg(text):
    try:
        return parse_rational(text)
    except CantorInfoError:
        raise argparse.ArgumentTypeError(f"not a rational p/q: {text!r}")


def _rational_list(text):
    return tuple(_rational_arg(t) for t in text.split(","))


def _nat_list(text):
    return tuple(_nat_arg(t) for t in text.split(","))


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("json", "csv", "plain"), default=None,
        help="output format (default: plain for pair/unpair/delta, json otherwise)",
    )
    common.add_argument("--seed", type=int, default=0, help="seed for randomized sampling (default 0)")

    parser = argparse.ArgumentParser(
        prog="cantorinfo",
        description="Cantor pairing, information efficiency and polynomial pairing candidates.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("pair", parents=[common], help="pair naturals (reads lines from stdin if none given)")
    p.add_argument("values", nargs="*", type=_nat_arg, metavar="x")

    p = sub.add_parser("unpair", parents=[common], help="unpair naturals (reads lines from stdin if none given)")
    p.add_argument("values", nargs="*", type=_nat_arg, metavar="n")
    p.add_argument("--arity", type=_pos_int, default=2, help="tuple length (default 2)")

    p = sub.add_parser("delta", parents=[common], help="information efficiency of a candidate at a point")
    p.add_argument("--poly", required=True, help="candidate expression")
    p.add_argument("--at", required=True, type=_nat_list, help="comma-separated point, e.g. 2,1")

    ray_help = (
        f"defaults: ratio {DEFAULT_RATIO}, steps {DEFAULT_STEPS}, tol {DEFAULT_TOL:g}, "
        f"slope-tol {DEFAULT_SLOPE_TOL:g}; x0 defaults to 2^20 * denominator(h)"
    )
    p = sub.add_parser("ray", parents=[common], help="ray-limit estimate along y = h*x", description=ray_help)
    p.add_argument("--poly", default="1/2(x + y)(x + y + 1) + y",
                   help="candidate expression (default: Cantor pairing)")
    p.add_argument("--h", required=True, type=_rational_arg, help="ray slope p/q")
    _ray_options(p)

    p = sub.add_parser("check", parents=[common], help="finite bijectivity scan on [0,N)^2")
    p.add_argument("--poly", required=True)
    p.add_argument("--box", required=True, type=_pos_int)
    p.add_argument("--max-witnesses", type=_pos_int, default=100)

    p = sub.add_parser(
        "refute", parents=[common], help="degree-drift refutation over several rays",
        description=f"{ray_help}; rays {DEFAULT_RAYS_TEXT}; slope floor {DEFAULT_SLOPE_FLOOR}",
    )
    p.add_argument("--poly", required=True)
    p.add_argument("--rays", type=_rational_list, default=DEFAULT_RAYS,
                   help=f"comma-separated slopes (default {DEFAULT_RAYS_TEXT})")
    p.add_argument("--slope-floor", type=float, default=DEFAULT_SLOPE_FLOOR)
    _ray_options(p)

    p = sub.add_parser("census", parents=[common], help="incompressibility census over [1,N)")
    p.add_argument("--n", required=True, type=_nat_arg)
    p.add_argument("--c", required=True, type=_nat_arg)
    p.add_argument("--sample", type=_pos_int, default=None,
                   help="draw this many seeded random values instead of a full sweep")

    p = sub.add_parser("wedge", parents=[common], help="lattice density of h*x <= y <= (h+eps)*x")
    p.add_argument("--h", required=True, type=_rational_arg)
    p.add_argument("--eps", required=True, type=_rational_arg)
    p.add_argument("--box", required=True, type=_pos_int)
    return parser


def _ray_options(p):
    p.add_argument("--x0", type=_pos_int, default=None)
    p.add_argument("--ratio", type=int, default=DEFAULT_RATIO)
    p.add_argument("--steps", type=int, default=DEFAULT_STEPS)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--slope-tol", type=float, default=DEFAULT_SLOPE_TOL)


def _config(args, **extra):
    cfg = {k: v for k, v in vars(args).items() if k not in ("values",)}
    cfg.update(extra)
    for k, v in list(cfg.items()):
        if isinstance(v, tuple):
            cfg[k] = [format_rational(t) if not isinstance(t, int) else str(t) for t in v]
    return cfg


def _lines(args, stdin):
    if args.values:
        yield args.values
        return
    for line in stdin:
        if line.strip():
            yield [parse_nat(t) for t in line.split()]


def cmd_pair(args, out, stdin):
    fmt = args.format
    results = [(xs, pair_k(xs)) for xs in _lines(args, stdin)]
    if fmt == "json":
        out.write(report.to_json({
            "config": _config(args),
            "results": [{"input": report.point(xs), "n": str(n)} for xs, n in results],
        }))
    elif fmt == "csv":
        out.write(report.to_csv(["input", "n"], [(" ".join(map(str, xs)), n) for xs, n in results]))
    else:
        for _, n in results:
            out.write(f"{n}\n")


def cmd_unpair(args, out, stdin):
    fmt = args.format
    results = []
    for row in _lines(args, stdin):
        for n in row:
            results.append((n, unpair_k(n, args.arity)))
    if fmt == "json":
        out.write(report.to_json({
            "config": _config(args),
            "results": [{"n": str(n), "coords": report.point(xs)} for n, xs in results],
        }))
    elif fmt == "csv":
        out.write(report.to_csv(["n", "coords"], [(n, " ".join(map(str, xs))) for n, xs in results]))
    else:
        for _, xs in results:
            out.write(" ".join(map(str, xs)) + "\n")


def cmd_delta(args, out, stdin):
    p = parse_poly(args.poly, len(args.at))
    value = delta(p, args.at)
    fmt = args.format
    if fmt == "json":
        out.write(report.to_json({
            "config": _config(args),
            "poly": p.to_string(),
            "value": str(p.eval_nat(args.at)),
            "delta": report.real(value),
        }))
    elif fmt == "csv":
        out.write(report.to_csv(["point", "value", "delta"], [
            (" ".join(map(str, args.at)), p.eval_nat(args.at), value)
        ]))
    else:
        out.write(f"{value:.12g}\n")


def cmd_ray(args, out, stdin):
    p = parse_poly(args.poly, 2)
    spec = RaySpec(h=args.h, x_start=args.x0, growth_ratio=args.ratio, steps=args.steps,
                   tol=args.tol, slope_tol=args.slope_tol)
    rep = ray_limit_estimate(p, spec)
    doc = report.ray_report(rep)
    doc["classification"] = classify(rep).value
    fmt = args.format
    if fmt == "json":
        out.write(report.to_json({"config": _config(args), "poly": p.to_string(), **doc}))
    elif fmt == "csv":
        out.write(report.to_csv(["x", "delta"], [(x, d) for x, d in rep.samples]))
    else:
        _plain(out, {k: v for k, v in doc.items() if k != "samples"})


def cmd_check(args, out, stdin):
    p = parse_poly(args.poly, 2)
    rep = scan_bijectivity(p, args.box, max_witnesses=args.max_witnesses)
    doc = report.scan_report(rep)
    fmt = args.format
    if fmt == "json":
        out.write(report.to_json({"config": _config(args), "poly": p.to_string(), **doc}))
    elif fmt == "csv":
        keys = ["box_side", "verdict", "collision_count", "integrality_violation_count",
                "min_value", "max_value", "threshold", "missing_count"]
        out.write(report.to_csv(keys, [[doc[k] for k in keys]]))
    else:
        _plain(out, {k: v for k, v in doc.items() if not isinstance(v, list)})


def cmd_refute(args, out, stdin):
    p = parse_poly(args.poly, 2)
    rep = refute_degree(p, rays=args.rays, slope_floor=args.slope_floor, x_start=args.x0,
                        growth_ratio=args.ratio, steps=args.steps, tol=args.tol,
                        slope_tol=args.slope_tol)
    doc = report.refutation_report(rep)
    fmt = args.format
    if fmt == "json":
        out.write(report.to_json({"config": _config(args), **doc}))
    elif fmt == "csv":
        keys = ["h", "drift_slope", "estimated_degree", "c_estimate", "converged",
                "leading_form_vanishes", "classification"]
        out.write(report.to_csv(keys, [[r[k] for k in keys] for r in doc["rays"]]))
    else:
        _plain(out, {k: v for k, v in doc.items() if k != "rays"})


def cmd_census(args, out, stdin):
    rep = census(args.n, args.c, sample=args.sample, seed=args.seed)
    doc = report.census_report(rep)
    fmt = args.format
    if fmt == "json":
        out.write(report.to_json({"config": _config(args), **doc}))
    elif fmt == "csv":
        keys = ["N", "c", "count", "fraction", "bound"]
        out.write(report.to_csv(keys, [[doc[k] for k in keys]]))
    else:
        _plain(out, doc)


def cmd_wedge(args, out, stdin):
    rep = wedge_points(WedgeSpec(args.h, args.eps, args.box))
    doc = report.wedge_report(rep)
    fmt = args.format
    if fmt == "json":
        out.write(report.to_json({"config": _config(args), **doc}))
    elif fmt == "csv":
        keys = ["h", "eps", "N", "count", "fraction", "area_fraction"]
        out.write(report.to_csv(keys, [[doc[k] for k in keys]]))
    else:
        _plain(out, doc)


def _plain(out, doc):
    for k, v in doc.items():
        if isinstance(v, bool):
            v = str(v).lower()
        out.write(f"{k}: {'' if v is None else v}\n")


DEFAULT_FORMAT = {"pair": "plain", "unpair": "plain", "delta": "plain"}

COMMANDS = {
    "pair": cmd_pair,
    "unpair": cmd_unpair,
    "delta": cmd_delta,
    "ray": cmd_ray,
    "check": cmd_check,
    "refute": cmd_refute,
    "census": cmd_census,
    "wedge": cmd_wedge,
}


def main(argv=None, stdin=None, stdout=None, stderr=None):
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    if args.format is None:
        args.format = DEFAULT_FORMAT.get(args.command, "json")
    try:
        COMMANDS[args.command](args, stdout, stdin)
    except CantorInfoError as exc:
        stderr.write(f"cantorinfo {args.command}: error: {exc}\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
