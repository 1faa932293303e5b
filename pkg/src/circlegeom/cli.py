"""Command-line interface: ``circlegeom {analyze,synthesize,render,enumerate}``.

Exit status: 0 success, 1 usage or parse error, 2 unmet precondition
(lattice not of convex dimension <= 2, size bound exceeded), 3 internal
verification failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .closure import SizeBoundError, verify_convex_geometry
from .experiments import MAX_MEMBERS, SCOPES, enumerate_scope
from .geometry import CircleFamily, is_concave, is_separated
from .io import (
    ParseError,
    dump_circle_file,
    format_rational,
    parse_circle_file,
    parse_lattice_file,
    parse_rational,
    sniff_kind,
)
from .lattice import (
    caratheodory,
    convex_dimension,
    is_dually_slim,
    is_lower_semimodular,
    is_meet_distributive,
    lattice_of_family,
)
from .render import family_to_svg, lattice_to_dot
from .synthesis import NotRepresentableError, SynthesisError, synthesize, verify_representation

EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION, EXIT_INTERNAL = 0, 1, 2, 3
FULL_CHECK_LIMIT = 12
DEFAULT_MAX_SIZE = 20
CARATHEODORY_ORDERS = (2, 3, 4)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class CommandError(Exception):
    def __init__(self, message: str, status: int):
        super().__init__(message)
        self.status = status


def _read_input(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CommandError(f"cannot read {path}: {exc.strerror}", EXIT_USAGE) from None


def _write_output(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _load_family(args) -> CircleFamily:
    family = parse_circle_file(_read_input(args.input))
    if args.tolerance is not None:
        family = CircleFamily(family.members, family.kind, parse_rational(args.tolerance, "--tolerance"))
    return family


# -- analyze -------------------------------------------------------------------------


def analyze_family(family: CircleFamily, max_size: int = DEFAULT_MAX_SIZE) -> dict:
    """The report printed by ``analyze`` as a JSON-ready dict."""
    mode = "full" if len(family) <= FULL_CHECK_LIMIT else "sampled"
    geometry = verify_convex_geometry(family, mode)
    L = lattice_of_family(family, max_size=max_size)
    report = {
        "members": len(family),
        "kind": family.kind,
        "convex_geometry": {
            "holds": geometry.ok,
            "mode": mode,
            "subsets_checked": geometry.subsets_checked,
            "checks": geometry.checks,
            "witnesses": {k: _jsonable(v) for k, v in geometry.witnesses.items()},
        },
        "closed_sets": L.n,
        "convex_dimension": convex_dimension(L),
        "join_irreducibles": len(L.jir),
        "meet_irreducibles": len(L.mir),
        "meet_distributive": is_meet_distributive(L).holds,
        "lower_semimodular": is_lower_semimodular(L).holds,
        "dually_slim": is_dually_slim(L),
        "concave": None,
        "separated": None,
        "caratheodory": {},
    }
    if family.kind == "collinear":
        concave = is_concave(family)
        report["concave"] = concave.holds
        if not concave:
            report["concave_witness"] = list(concave.witness)
        report["separated"] = is_separated(family)
    for n in CARATHEODORY_ORDERS:
        try:
            v = caratheodory(L, n)
        except SizeBoundError as exc:
            report["caratheodory"][f"C{n}"] = {"holds": None, "reason": str(exc)}
            continue
        entry = {"holds": v.holds}
        if not v:
            a, B = v.witness
            entry["witness"] = {"element": a, "join_of": list(B)}
        report["caratheodory"][f"C{n}"] = entry
    return report


def _jsonable(v):
    if isinstance(v, (frozenset, set)):
        return sorted(v)
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, Fraction):
        return format_rational(v)
    return v


def _yes(v) -> str:
    return "n/a" if v is None else ("yes" if v else "no")


def format_analysis(r: dict) -> str:
    cg = r["convex_geometry"]
    lines = [
        f"members: {r['members']} ({r['kind']})",
        f"convex geometry: {_yes(cg['holds'])} ({cg['mode']} check, {cg['subsets_checked']} subsets)",
    ]
    for name, w in cg["witnesses"].items():
        lines.append(f"  {name} fails: {json.dumps(w)}")
    lines += [
        f"closed sets: {r['closed_sets']}",
        f"convex dimension: {r['convex_dimension']}",
        f"join-irreducibles: {r['join_irreducibles']}",
        f"meet-irreducibles: {r['meet_irreducibles']}",
        f"lower semimodular: {_yes(r['lower_semimodular'])}",
        f"dually slim: {_yes(r['dually_slim'])}",
        f"concave: {_yes(r['concave'])}",
        f"separated: {_yes(r['separated'])}",
    ]
    if "concave_witness" in r:
        lines.append(f"  violating triple: {', '.join(r['concave_witness'])}")
    for name, entry in r["caratheodory"].items():
        line = f"{name}: {_yes(entry['holds'])}"
        if "witness" in entry:
            w = entry["witness"]
            line += f" ({w['element']} needs {', '.join(w['join_of'])})"
        lines.append(line)
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    family = _load_family(args)
    report = analyze_family(family, max_size=args.max_size)
    text = json.dumps(report, indent=2) + "\n" if args.format == "json" else format_analysis(report)
    _write_output(args.output, text)
    return EXIT_OK


# -- synthesize -------------------------------------------------------------------------


def cmd_synthesize(args) -> int:
    L = parse_lattice_file(_read_input(args.input))
    if L.n > args.max_size:
        raise CommandError(f"lattice has {L.n} elements, bound is {args.max_size}", EXIT_PRECONDITION)
    try:
        rep, trace = synthesize(L)
    except NotRepresentableError as exc:
        raise CommandError(str(exc), EXIT_PRECONDITION) from None
    except SynthesisError as exc:
        raise CommandError(f"synthesis failed: {exc}", EXIT_INTERNAL) from None
    report = verify_representation(rep, L)
    if not report.ok:
        failed = ", ".join(k for k, v in report.checks.items() if not v)
        raise CommandError(f"synthesized family failed verification: {failed}", EXIT_INTERNAL)
    _write_output(args.output, dump_circle_file(rep.family))
    if args.trace:
        Path(args.trace).write_text(trace.to_json(), encoding="utf-8")
    if args.output not in (None, "-"):
        summary = {"circles": len(rep.family), "steps": len(trace.steps), "backtracks": trace.backtracks,
                   "checks": report.checks}
        if args.format == "json":
            sys.stdout.write(json.dumps(summary, indent=2) + "\n")
        else:
            sys.stdout.write(
                f"wrote {len(rep.family)} circles to {args.output} "
                f"({len(trace.steps)} steps, {trace.backtracks} backtracks); all checks passed\n"
            )
    return EXIT_OK


# -- render -------------------------------------------------------------------------------


def cmd_render(args) -> int:
    text = _read_input(args.input)
    fmt = args.format if args.format in ("dot", "svg") else None
    if fmt is None:
        raise CommandError("render needs --format dot or --format svg", EXIT_USAGE)
    kind = sniff_kind(text)
    if kind == "lattice":
        if fmt == "svg":
            raise CommandError("svg rendering needs a circle file", EXIT_USAGE)
        out = lattice_to_dot(parse_lattice_file(text))
    else:
        family = parse_circle_file(text)
        if fmt == "svg":
            out = family_to_svg(family)
        else:
            out = lattice_to_dot(lattice_of_family(family, max_size=args.max_size))
    _write_output(args.output, out)
    return EXIT_OK


# -- enumerate ------------------------------------------------------------------------------


def cmd_enumerate(args) -> int:
    summary = enumerate_scope(args.scope, args.max_size, args.samples, args.seed)
    text = json.dumps(summary.to_dict(), indent=2) + "\n" if args.format == "json" else summary.to_text()
    _write_output(args.output, text)
    return EXIT_OK


# -- entry point --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="circlegeom", description="Convex geometries of circles.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, formats, default_format):
        p.add_argument("--input", "-i", help="input file (default: standard input)")
        p.add_argument("--output", "-o", help="output file (default: standard output)")
        p.add_argument("--format", choices=formats, default=default_format)
        p.add_argument("--json", dest="format", action="store_const", const="json",
                       help="shorthand for --format json")
        p.add_argument("--max-size", type=int, default=DEFAULT_MAX_SIZE,
                       help="bound on input size: circles in a circle file, elements in a"
                            f" lattice file (default {DEFAULT_MAX_SIZE})")

    p = sub.add_parser("analyze", help="report on the convex geometry of a circle file")
    common(p, ("text", "json"), "text")
    p.add_argument("--tolerance", help="planar tolerance as P/Q")
    p.set_defaults(run=cmd_analyze)

    p = sub.add_parser("synthesize", help="build a circle family realizing a lattice file")
    common(p, ("text", "json"), "text")
    p.add_argument("--trace", help="write the synthesis trace (JSON) here")
    p.set_defaults(run=cmd_synthesize)

    p = sub.add_parser("render", help="emit SVG (circle file) or a DOT Hasse diagram")
    common(p, ("dot", "svg"), None)
    p.set_defaults(run=cmd_render)

    p = sub.add_parser("enumerate", help="sample families in a scope and tabulate their lattices")
    p.add_argument("--scope", choices=SCOPES, required=True)
    p.add_argument("--output", "-o")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--json", dest="format", action="store_const", const="json")
    p.add_argument("--max-size", type=int, default=5, help=f"members per family (at most {MAX_MEMBERS})")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(run=cmd_enumerate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.status
    except ParseError as exc:
        print(f"parse error at {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SizeBoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except NotRepresentableError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
