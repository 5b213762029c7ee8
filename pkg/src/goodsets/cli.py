"""Command-line front end.  Every subcommand reads and writes JSON.

Exit codes: 0 success, 1 invalid input, 2 infeasible or violated
precondition, 3 an exhaustive search exceeded its cap.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .components import (check_union_maximal_good, quotient, related_components,
                         relatively_full_components)
from .errors import CapExceeded, GoodSetsError, InvalidInput, PreconditionError
from .generate import KINDS, GeneratorSpec, generate
from .loops import (ENUMERATION_BOUND, decompose_weak_loop, enumerate_loops,
                    extend_from_maximal_good, fundamental_loops, maximal_good_subset)
from .measures import Measure, loop_measure
from .pointset import PointFunction, PointSet, format_rational, parse_function, parse_point_set
from .polytope import POLYTOPE_BOUND, enumerate_extreme_points, uperp_dimension
from .structure import analyze_structure, is_full, is_good, solve_decomposition

DEFAULT_CAP = 1000


class Failure(Exception):
    """Finished with a document but a nonzero exit code."""

    def __init__(self, document: dict, exit_code: int):
        super().__init__(document)
        self.document = document
        self.exit_code = exit_code


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        return Path(path).read_text()
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from None


def _points(args) -> PointSet:
    if not args.input:
        raise InvalidInput("--input is required")
    return parse_point_set(_read(args.input))


def _method(args) -> str:
    return "heuristic" if args.heuristic else "oracle"


def _loops(S: PointSet, args) -> dict:
    if len(S) > ENUMERATION_BOUND:
        if not args.heuristic_fallback:
            raise CapExceeded(f"loop enumeration is bounded at {ENUMERATION_BOUND} points")
        return {"count": None, "truncated": True, "items": []}
    try:
        loops = enumerate_loops(S, cap=args.cap)
        truncated = False
    except CapExceeded:
        if not args.heuristic_fallback:
            raise
        loops = enumerate_loops(S, cap=args.cap, truncate=True)
        truncated = True
    return {"count": None if truncated else len(loops), "truncated": truncated,
            "items": [c.to_document() for c in loops]}


def _partitions(S: PointSet, args, good: bool) -> dict:
    kw = dict(method=_method(args), fallback=args.heuristic_fallback)
    return {
        "related": related_components(S, **kw).to_document() if good else None,
        "relatively_full": relatively_full_components(S, **kw).to_document(),
    }


def cmd_analyze(args) -> dict:
    started = time.perf_counter()
    S = _points(args)
    structure = analyze_structure(S)
    M = maximal_good_subset(S)
    partitions = _partitions(S, args, structure.good)
    loops = _loops(S, args)
    basis = [loop_measure(c, S) for c in fundamental_loops(S, M)]
    report = {
        "tool": {"name": "goodsets", "version": __version__},
        "structure": structure.to_document(),
        "maximal_good_subset": [list(p) for p in M.points],
        "partitions": partitions,
        "loops": loops,
        "uperp": {"dimension": uperp_dimension(S), "basis": [m.to_document() for m in basis]},
    }
    if args.skip_extreme:
        report["extreme_points"] = {"skipped": "requested"}
    elif len(S) > POLYTOPE_BOUND:
        if not args.heuristic_fallback:
            raise CapExceeded(f"vertex enumeration is bounded at {POLYTOPE_BOUND} points")
        report["extreme_points"] = {"skipped": f"more than {POLYTOPE_BOUND} points"}
    else:
        pts = enumerate_extreme_points(S)
        report["extreme_points"] = {"count": len(pts), "items": [m.to_document() for m in pts]}
    _check_report(report)
    if args.timing:
        report["timing_seconds"] = round(time.perf_counter() - started, 6)
    return report


def _check_report(report: dict) -> None:
    s = report["structure"]
    if s["good"] and report["loops"]["count"] not in (0, None):
        raise AssertionError("good set reported with loops")
    related = report["partitions"]["related"]
    if s["full"] and related is not None and not related["fell_back"] and len(related["parts"]) != 1:
        raise AssertionError("full set reported with several related components")


def _anchors(args, S: PointSet):
    if not args.anchor:
        return None
    out = {}
    for text in args.anchor:
        axis, sep, label = text.partition("=")
        if not sep or not axis.isdigit():
            raise InvalidInput(f"anchor must look like AXIS=LABEL, got {text!r}")
        out[int(axis) - 1] = label
    return out


def cmd_solve(args) -> dict:
    S = _points(args)
    values = parse_function(_read(args.function), S)
    f = PointFunction.from_mapping(S, values)
    anchors = _anchors(args, S)
    result = solve_decomposition(S, f, anchors)
    if result is None:
        for cert in fundamental_loops(S):
            mu = loop_measure(cert, S)
            pairing = mu.pair(f)
            if pairing:
                raise Failure({"feasible": False, "violated_loop": cert.to_document(),
                               "measure": mu.to_document(),
                               "pairing": format_rational(pairing)}, 2)
        raise AssertionError("solver found no solution but no loop measure detects it")
    bundle, freedom = result
    return {"feasible": True, "freedom_dim": freedom, "bundle": bundle.to_document()}


def cmd_extend(args) -> dict:
    S = _points(args)
    M = maximal_good_subset(S)
    values = parse_function(_read(args.function), S, partial=True)
    outside = [p for p in values if p not in M]
    if outside:
        raise PreconditionError(f"{list(outside[0])} is not in the maximal good subset")
    g = PointFunction.from_mapping(M, values)
    f = extend_from_maximal_good(S, M, g)
    return {"maximal_good_subset": [list(p) for p in M.points], "function": f.to_document()}


def cmd_decompose(args) -> dict:
    S = _points(args)
    values = parse_function(_read(args.measure), S, partial=True)
    mu = Measure.from_mapping(S, values, default=Fraction(0))
    dec = decompose_weak_loop(mu)
    doc = dec.to_document()
    doc["input_norm"] = format_rational(mu.norm)
    return doc


def cmd_loops(args) -> dict:
    S = _points(args)
    return _loops(S, args)


def cmd_components(args) -> dict:
    S = _points(args)
    kw = dict(method=_method(args), fallback=args.heuristic_fallback)
    doc = {}
    if args.kind in ("related", "all"):
        if args.kind == "related" or is_good(S):
            doc["related"] = related_components(S, **kw).to_document()
        else:
            doc["related"] = None
    if args.kind in ("relatively_full", "all"):
        doc["relatively_full"] = relatively_full_components(S, **kw).to_document()
    if args.kind == "union":
        doc["union"] = check_union_maximal_good(S, cap=args.cap).to_document()
    return doc


def cmd_quotient(args) -> dict:
    import random

    S = _points(args)
    rng = random.Random(args.seed) if args.seed is not None else None
    q = quotient(S, _method(args), rng=rng, fallback=args.heuristic_fallback)
    doc = q.to_document()
    doc["full"] = is_full(S)
    doc["image_full"] = is_full(q.image)
    return doc


def cmd_extreme(args) -> dict:
    S = _points(args)
    pts = enumerate_extreme_points(S)
    return {"count": len(pts), "items": [m.to_document() for m in pts]}


def cmd_generate(args) -> dict:
    budgets = None
    if args.budget:
        parts = [int(x) for x in args.budget.split(",")]
        budgets = tuple(parts * args.n if len(parts) == 1 else parts)
    spec = GeneratorSpec(args.kind, args.n, args.size, budgets, args.seed or 0)
    return generate(spec).to_document()


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", metavar="PATH", help="point-set document ('-' for stdin)")
    common.add_argument("--output", metavar="PATH", help="write the result here instead of stdout")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum number of loops")
    how = common.add_mutually_exclusive_group()
    how.add_argument("--oracle", action="store_true", help="exhaustive component search (default)")
    how.add_argument("--heuristic", action="store_true", help="merge-rule component search")
    common.add_argument("--heuristic-fallback", action="store_true",
                        help="degrade instead of failing when a search bound is exceeded")

    parser = argparse.ArgumentParser(prog="goodsets", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="full structural report")
    p.add_argument("--skip-extreme", action="store_true")
    p.add_argument("--timing", action="store_true", help="include wall-clock time (not byte-stable)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("solve", parents=[common], help="write f as u_1 + ... + u_n")
    p.add_argument("--function", required=True, metavar="PATH")
    p.add_argument("--anchor", action="append", metavar="AXIS=LABEL",
                   help="pin u_AXIS(LABEL) = 0 (1-based axis, all but the last)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("extend", parents=[common], help="extend a function on the maximal good subset")
    p.add_argument("--function", required=True, metavar="PATH")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("decompose", parents=[common], help="sign-aligned loop decomposition")
    p.add_argument("--measure", required=True, metavar="PATH")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("loops", parents=[common], help="enumerate all loops")
    p.set_defaults(func=cmd_loops)

    p = sub.add_parser("components", parents=[common], help="related / relatively full parts")
    p.add_argument("--kind", choices=("related", "relatively_full", "union", "all"), default="all")
    p.set_defaults(func=cmd_components)

    p = sub.add_parser("quotient", parents=[common], help="collapse related components")
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("extreme", parents=[common], help="extreme points of the marginal-free unit ball")
    p.set_defaults(func=cmd_extreme)

    p = sub.add_parser("generate", parents=[common], help="random point set")
    p.add_argument("--kind", choices=KINDS, default="full")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--budget", help="labels per axis: one integer or a comma list")
    p.set_defaults(func=cmd_generate)
    return parser


def _emit(doc: dict, args) -> None:
    text = json.dumps(doc, indent=2) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc = args.func(args)
    except Failure as exc:
        _emit(exc.document, args)
        return exc.exit_code
    except GoodSetsError as exc:
        print(f"goodsets: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"goodsets: {exc}", file=sys.stderr)
        return 1
    _emit(doc, args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
