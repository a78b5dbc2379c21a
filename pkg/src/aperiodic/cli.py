"""Command line interface.

Exit codes: 0 for success, 2 when a requested verification produced a
negative verdict (the witness is printed), 1 for usage or input errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import annihilators as ann
from . import decomposition as dec
from . import forced as fc
from . import generators as gen
from . import plots
from . import reportio as rio
from .algebra import parse_poly, format_poly
from .configurations import Configuration, torus_config
from .delone import (
    class_tests,
    delone_constants,
    lagarias_test,
    meyer_HT,
    minkowski_flc,
    patch_count,
)
from .precision import named_value
from .window import parse_window

OK, FAILED, ERROR = 0, 2, 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(ERROR, f"{self.prog}: error: {message}\n")


def _box(text: str) -> tuple:
    out = []
    for part in text.split(","):
        lo, _, hi = part.partition(":")
        out.append((int(lo), int(hi)))
    return tuple(out)


def _box_points(box: tuple) -> list:
    return list(dec.box_points(box))


def _point(text: str) -> tuple:
    return tuple(int(t) for t in text.replace("(", " ").replace(")", " ")
                 .replace(",", " ").split())


def _directions(text: str) -> list:
    return [_point(part) for part in text.split(";") if part.strip()]


def load_config(text: str) -> Configuration:
    """Inline torus shorthand torus:z1,z2;alpha or a spec file path."""
    if text.startswith("torus:"):
        body = text[len("torus:"):]
        zpart, _, apart = body.partition(";")
        z = tuple(Fraction(t) for t in zpart.split(","))
        return torus_config(z, named_value(apart))
    return rio.read_config_spec(text)


def _emit(args, command, payload, lines):
    for line in lines:
        print(line)
    if getattr(args, "json", None):
        arguments = {k: str(v) for k, v in vars(args).items()
                     if k not in ("func", "json") and v is not None}
        rio.dump_report(rio.make_report(command, arguments, payload), args.json)
        print(f"report written to {args.json}")


# ---------------------------------------------------------------------------
# commands

def cmd_gen(args) -> int:
    window = parse_window(args.window)
    alpha = named_value(args.alpha) if args.alpha else None
    cloud = gen.example_set(args.name, window, alpha=alpha)
    rio.write_cloud(cloud, args.out)
    print(f"{cloud.describe()} -> {args.out}")
    if args.plot:
        if cloud.basis.dim == 1:
            plots.ticks_1d_svg(cloud, args.plot)
        else:
            plots.scatter_2d_svg(cloud, args.plot)
        print(f"plot written to {args.plot}")
    return OK


def cmd_analyze(args) -> int:
    cloud = rio.read_cloud(args.cloud)
    pitch = Fraction(args.grid_pitch) if args.grid_pitch else None
    constants = delone_constants(cloud, grid_pitch=pitch)
    classes = class_tests(cloud, epsilon=Fraction(args.epsilon)
                          if args.epsilon else None, constants=constants)
    payload = {"constants": constants, "classes": classes}
    lines = [
        f"points: {len(cloud)}",
        f"packing radius: {constants.packing_radius}"
        + ("" if constants.packing_exact else " (lower bracket)"),
        f"covering radius: [{constants.covering_lower}, {constants.covering_upper}]",
        f"uniformly discrete: {constants.flags['uniformly_discrete']}",
        f"relatively dense: {constants.flags['relatively_dense_in_window']}",
        f"finite local complexity: {classes.flc.status}",
        f"meyer difference test: {classes.meyer.status}",
    ]
    rc = OK
    if args.lagarias:
        grid = [Fraction(t) for t in args.lagarias.split(",")]
        lag = lagarias_test(cloud, grid, constants=constants)
        payload["lagarias"] = lag
        lines.append(f"periodicity trigger: {lag.trigger}")
        if args.csv:
            plots.counts_csv(lag.rows, args.csv)
            lines.append(f"counts written to {args.csv}")
    if args.meyer_T:
        rep = meyer_HT(cloud, Fraction(args.meyer_T), constants=constants)
        payload["meyer_HT"] = rep
        lines.append(f"covering count bound at T={args.meyer_T}: "
                     f"{rep.lhs} <= {rep.rhs}: {rep.holds}")
        if not rep.holds:
            rc = FAILED
    if args.minkowski:
        fin = [_point(p) for p in args.minkowski.split(";")]
        rep = minkowski_flc(cloud, fin)
        payload["minkowski"] = rep
        lines.append(f"sum-set complexity consistent: {rep.consistent}")
    _emit(args, "analyze", payload, lines)
    return rc


def cmd_patches(args) -> int:
    cloud = rio.read_cloud(args.cloud)
    result = patch_count(cloud, Fraction(args.radius))
    lines = [f"distinct patches of radius {args.radius}: {result.count} "
             f"(from {result.centers} admissible centers; window lower bound)"]
    _emit(args, "patches", result, lines)
    return OK


def cmd_verify(args) -> int:
    config = load_config(args.config)
    f = parse_poly(args.poly, config.basis)
    probes = _box_points(_box(args.probes))
    cert = ann.verify_annihilator(f, config, probes)
    _emit(args, "annihilate-verify", cert, [f"{format_poly(f)}: {cert.summary()}"])
    return OK if cert.verified else FAILED


def cmd_find(args) -> int:
    config = load_config(args.config)
    shape = _box_points(_box(args.shape))
    probes = _box_points(_box(args.probes))
    result = ann.find_periodizer(config, shape, probes)
    lines = []
    rc = OK
    if result.poly is None:
        lines.append("no periodizer on this shape (row space saturated)")
        rc = FAILED
    else:
        lines.append(f"periodizer: {format_poly(result.poly)}")
        lines.append(f"product is constant {result.constant} on the probes")
        if args.compose:
            annihilator, period, cert = ann.periodizer_to_annihilator(
                result.poly, config, probes)
            if annihilator is None:
                lines.append("no certified period for the product was found")
                rc = FAILED
            else:
                lines.append(f"annihilator: {format_poly(annihilator)} "
                             f"(period {period}); {cert.summary()}")
    _emit(args, "annihilate-find", result, lines)
    return rc


def cmd_dilate(args) -> int:
    config = load_config(args.config)
    f = parse_poly(args.poly, config.basis)
    probes = _box_points(_box(args.probes))
    ks = [int(k) for k in args.k.split(",")]
    witness = ann.check_dilation(f, config, probes, ks)
    lines = [f"prime-factor bound: {witness.bound}",
             f"admissible scales tested: {[k for k, _ in witness.tested]}",
             f"skipped (inadmissible): {list(witness.skipped)}",
             f"all admissible scales verified: {witness.all_pass}"]
    _emit(args, "annihilate-dilate", witness, lines)
    return OK if witness.all_pass else FAILED


def cmd_special(args) -> int:
    config = load_config(args.config)
    f = parse_poly(args.poly, config.basis)
    u = _point(args.at)
    g = ann.special_annihilator(f, u, args.scale)
    probes = _box_points(_box(args.probes))
    usable = [p for p in probes
              if all(config.contains(tuple(a - b for a, b in zip(p, v)))
                     for v in g.terms)]
    if not usable:
        print("probe box leaves no usable probes for the product support")
        return ERROR
    cert = ann.verify_annihilator(g, config, usable)
    lines = [f"factors anchored at {u}, scale {args.scale}: "
             f"{len(g.terms)} terms; {cert.summary()}"]
    _emit(args, "annihilate-special", cert, lines)
    return OK if cert.verified else FAILED


def cmd_period(args) -> int:
    cloud = rio.read_cloud(args.cloud)
    scan = ann.detect_period_1d(cloud, Fraction(args.width))
    lines = [f"verdict: {scan.verdict}",
             f"anchored windows: {scan.anchors}, candidates: {scan.candidates_tested}"]
    if scan.period is not None:
        lines.append(f"period: {scan.period} (length {scan.period_length})")
    _emit(args, "annihilate-period", scan, lines)
    return OK if scan.verdict == "verified-period" else FAILED


def cmd_decompose(args) -> int:
    config = load_config(args.config)
    dirs = _directions(args.directions)
    box = _box(args.box)
    try:
        witness = dec.decompose(config, dirs, box)
    except dec.DecompositionError as exc:
        print(f"decomposition failed: {exc} (witness {exc.witness})")
        return FAILED
    lines = [f"inner box: {witness.inner_box}", "checks:"]
    for chk in witness.checks:
        state = "ok" if chk["ok"] else "FAILED at {}".format(chk["witness"])
        lines.append("  {}: {} ({} points)".format(chk["identity"], state,
                                                   chk["points"]))
    lines.append(f"certified: {witness.certified}")
    payload = {"inner_box": witness.inner_box, "checks": witness.checks,
               "certified": witness.certified, "log": witness.log}
    _emit(args, "decompose", payload, lines)
    return OK if witness.certified else FAILED


def cmd_forced(args) -> int:
    polys = [parse_poly(p) for p in args.poly]
    if args.directions:
        verdicts = fc.hyperplane_condition(polys[0], _directions(args.directions))
        lines = []
        bad = False
        for v in verdicts:
            if v.ok:
                lines.append(f"direction {v.direction}: transversal")
            else:
                lines.append(f"direction {v.direction}: support point "
                             f"{v.witness} lies on the orthogonal line")
                bad = True
        _emit(args, "forced-hyperplane", verdicts, lines)
        return FAILED if bad else OK
    report = fc.vertex_coverage(polys)
    lines = [f"mode: {report.mode}"]
    for m in report.members:
        lines.append(f"  {format_poly(m.poly)}: uncovered rays {m.uncovered_rays}")
    lines.append(f"family-wide uncovered directions: {report.uncovered}")
    lines.append(f"every direction covered: {report.covered_all}")
    _emit(args, "forced-vertex", report, lines)
    return OK if report.covered_all else FAILED


def cmd_plot(args) -> int:
    if args.what == "support":
        f = parse_poly(args.source)
        plots.support_polygon_svg(f, args.out)
    else:
        cloud = rio.read_cloud(args.source)
        if args.what == "ticks":
            plots.ticks_1d_svg(cloud, args.out)
        else:
            plots.scatter_2d_svg(cloud, args.out)
    print(f"plot written to {args.out}")
    return OK


def cmd_selftest(args) -> int:
    from . import selftest
    failures = selftest.run(criteria=args.criterion)
    return OK if failures == 0 else FAILED


# ---------------------------------------------------------------------------

def build_parser() -> _Parser:
    top = _Parser(prog="aperiodic",
                  description="Exact tools for low-complexity point sets "
                              "and their annihilating polynomials.")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write an example point cloud file")
    p.add_argument("name", help="S1, S2, S3, Ex5.6, Ex7.3 or fibonacci")
    p.add_argument("--window", required=True, help="lo:hi[,lo:hi]")
    p.add_argument("--alpha", help="slope: rational, pi, golden, sqrtN")
    p.add_argument("--out", required=True)
    p.add_argument("--plot")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("analyze", help="Delone constants and class tests")
    p.add_argument("cloud")
    p.add_argument("--grid-pitch")
    p.add_argument("--epsilon")
    p.add_argument("--lagarias", help="comma separated radii")
    p.add_argument("--meyer-T", dest="meyer_T")
    p.add_argument("--minkowski", help="finite set, points separated by ;")
    p.add_argument("--csv")
    p.add_argument("--json")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("patches", help="distinct patch count at a radius")
    p.add_argument("cloud")
    p.add_argument("radius")
    p.add_argument("--json")
    p.set_defaults(func=cmd_patches)

    anni = sub.add_parser("annihilate", help="annihilator tools")
    asub = anni.add_subparsers(dest="subcommand", required=True)

    p = asub.add_parser("verify", help="check a polynomial against a configuration")
    p.add_argument("config", help="spec file or torus:z1,z2;alpha")
    p.add_argument("poly")
    p.add_argument("--probes", required=True, help="box lo:hi,lo:hi")
    p.add_argument("--json")
    p.set_defaults(func=cmd_verify)

    p = asub.add_parser("find", help="search a periodizer on a domain shape")
    p.add_argument("config")
    p.add_argument("--shape", required=True, help="box of domain exponents")
    p.add_argument("--probes", required=True)
    p.add_argument("--compose", action="store_true",
                   help="also search a difference factor giving an annihilator")
    p.add_argument("--json")
    p.set_defaults(func=cmd_find)

    p = asub.add_parser("dilate", help="verify stretched annihilators")
    p.add_argument("config")
    p.add_argument("poly")
    p.add_argument("--probes", required=True)
    p.add_argument("--k", required=True, help="comma separated scales")
    p.add_argument("--json")
    p.set_defaults(func=cmd_dilate)

    p = asub.add_parser("special", help="difference-product annihilator")
    p.add_argument("config")
    p.add_argument("poly")
    p.add_argument("--at", required=True, help="support point to anchor")
    p.add_argument("--scale", type=int, default=1)
    p.add_argument("--probes", required=True)
    p.add_argument("--json")
    p.set_defaults(func=cmd_special)

    p = asub.add_parser("period", help="scan a 1-D cloud for a verified period")
    p.add_argument("cloud")
    p.add_argument("--width", required=True, help="anchored window width")
    p.add_argument("--json")
    p.set_defaults(func=cmd_period)

    p = sub.add_parser("decompose", help="split a window into periodic parts")
    p.add_argument("config")
    p.add_argument("--directions", required=True, help="(a,b);(c,d);...")
    p.add_argument("--box", required=True)
    p.add_argument("--json")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("forced", help="support geometry checks")
    p.add_argument("poly", nargs="+")
    p.add_argument("--directions", help="hyperplane condition directions")
    p.add_argument("--json")
    p.set_defaults(func=cmd_forced)

    p = sub.add_parser("plot", help="deterministic SVG output")
    p.add_argument("what", choices=("ticks", "scatter", "support"))
    p.add_argument("source", help="cloud file, or a polynomial for support")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("selftest", help="run the acceptance checks")
    p.add_argument("--criterion", type=int, action="append",
                   help="restrict to one criterion (repeatable)")
    p.set_defaults(func=cmd_selftest)

    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
