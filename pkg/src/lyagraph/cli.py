"""Command-line interface.

Exit codes: 0 = realizable (or the command succeeded), 1 = structurally
valid input that is not realizable, 2 = invalid input or bounds.  Output is
deterministic byte-for-byte for identical input and flags; the optional
LYAGRAPH_BUDGET environment variable overrides the enumeration safety
budget.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Sequence

from .checker import Target, check
from .enumeration import (
    BudgetExceededError,
    EnumerationBounds,
    count_realizable,
    default_label_pool,
    enumerate_graphs,
    random_graph,
)
from .graph import SuspensionSFT, reverse
from .invariants import invariant_report
from .io import ParseError, parse_auto, render_dsl, render_json, render_report
from .linalg import IntMatrix

_TARGETS = {"s2xs1": Target.S2XS1, "s3": Target.S3}


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lyagraph",
        description="Decide whether an abstract Lyapunov graph is realizable "
                    "by a Smale flow on S2xS1 or S3.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="check one graph file")
    _add_graph_args(p_check)
    p_check.set_defaults(handler=_cmd_check, explain=False)

    p_explain = sub.add_parser(
        "explain", help="check one graph file with per-vertex detail")
    _add_graph_args(p_explain)
    p_explain.set_defaults(handler=_cmd_check, explain=True)

    p_inv = sub.add_parser(
        "invariants",
        help="matrix invariants of a file holding a single sft declaration")
    p_inv.add_argument("file", type=Path)
    p_inv.add_argument("--json", action="store_true")
    p_inv.set_defaults(handler=_cmd_invariants)

    p_enum = sub.add_parser("enumerate", help="enumerate graphs within bounds")
    _add_bounds_args(p_enum)
    p_enum.add_argument("--target", required=True, choices=sorted(_TARGETS))
    p_enum.add_argument("--count-only", action="store_true")
    p_enum.add_argument("--workers", type=int, default=1)
    p_enum.set_defaults(handler=_cmd_enumerate)

    p_rand = sub.add_parser("random", help="generate one seeded random graph")
    p_rand.add_argument("--seed", required=True, type=int)
    _add_bounds_args(p_rand)
    p_rand.add_argument("--json", action="store_true")
    p_rand.set_defaults(handler=_cmd_random)

    p_tr = sub.add_parser("transform", help="transform a graph file")
    p_tr.add_argument("--reverse", action="store_true", required=True,
                      help="reverse time: flip edges and swap label roles")
    p_tr.add_argument("file", type=Path)
    p_tr.add_argument("--json", action="store_true")
    p_tr.set_defaults(handler=_cmd_transform)

    return parser


def _add_graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("file", type=Path)
    p.add_argument("--target", required=True, choices=sorted(_TARGETS))
    p.add_argument("--json", action="store_true")


def _add_bounds_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-vertices", required=True, type=int)
    p.add_argument("--max-weight", required=True, type=int)
    p.add_argument("--max-parallel", type=int, default=1)
    p.add_argument("--matrices", type=Path,
                   help="JSON file with a list of subshift matrices for the "
                        "label pool (default: [1], [2], [[1,1],[1,1]], "
                        "[[1,0],[0,1]])")


def _read(path: Path) -> str:
    return path.read_text(encoding="utf-8")


def _bounds_from(args) -> EnumerationBounds:
    if args.matrices is not None:
        raw = json.loads(_read(args.matrices))
        if not isinstance(raw, list) or not raw:
            raise ParseError("expected a nonempty JSON list of matrices",
                             path=str(args.matrices))
        try:
            matrices = tuple(IntMatrix.from_rows(m) for m in raw)
            pool = default_label_pool(matrices)
        except (ValueError, TypeError) as exc:
            raise ParseError(str(exc), path=str(args.matrices)) from exc
    else:
        pool = default_label_pool()
    try:
        return EnumerationBounds(
            max_vertices=args.max_vertices,
            max_weight=args.max_weight,
            max_parallel_edges=args.max_parallel,
            label_pool=pool,
        )
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def _budget() -> int | None:
    raw = os.environ.get("LYAGRAPH_BUDGET")
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError as exc:
        raise ParseError(f"LYAGRAPH_BUDGET must be an integer, got {raw!r}") from exc


def _cmd_check(args) -> int:
    doc = parse_auto(_read(args.file))
    report = check(doc.graph, _TARGETS[args.target])
    if args.json:
        out = render_report(report, "json")
    else:
        out = render_report(report, "text",
                            graph=doc.graph if args.explain else None)
    sys.stdout.write(out)
    return 0 if report.realizable else 1


def _cmd_invariants(args) -> int:
    doc = parse_auto(_read(args.file))
    g = doc.graph
    if len(g.vertices) != 1 or g.edges or not isinstance(
            g.vertices[0].label, SuspensionSFT):
        raise ParseError(
            "invariants expects a file with exactly one sft vertex and no edges")
    report = invariant_report(g.vertices[0].label.matrix)
    if args.json:
        doc_out = {
            "k": report.k,
            "irreducible": report.irreducible,
            "permutation": report.permutation,
            "parry_sullivan": report.parry_sullivan,
            "bowen_franks": list(report.bowen_franks),
        }
        sys.stdout.write(json.dumps(doc_out, indent=2) + "\n")
    else:
        factors = ", ".join(str(d) for d in report.bowen_franks)
        sys.stdout.write(
            f"k: {report.k}\n"
            f"irreducible: {_yesno(report.irreducible)}\n"
            f"permutation: {_yesno(report.permutation)}\n"
            f"parry_sullivan: {report.parry_sullivan}\n"
            f"bowen_franks: [{factors}]\n")
    return 0


def _yesno(flag: bool) -> str:
    return "yes" if flag else "no"


def _cmd_enumerate(args) -> int:
    bounds = _bounds_from(args)
    target = _TARGETS[args.target]
    budget = _budget()
    if args.count_only:
        total, realizable = count_realizable(
            bounds, target, workers=max(1, args.workers), budget=budget)
        sys.stdout.write(f"total={total} realizable={realizable}\n")
        return 0
    for i, g in enumerate(enumerate_graphs(bounds, budget=budget), start=1):
        verdict = "realizable" if check(g, target).realizable else "not realizable"
        sys.stdout.write(f"# graph {i}: {verdict}\n")
        sys.stdout.write(render_dsl(g))
        sys.stdout.write("\n")
    return 0


def _cmd_random(args) -> int:
    bounds = _bounds_from(args)
    g = random_graph(args.seed, bounds)
    sys.stdout.write(render_json(g) if args.json else render_dsl(g))
    return 0


def _cmd_transform(args) -> int:
    doc = parse_auto(_read(args.file))
    g = reverse(doc.graph)
    sys.stdout.write(render_json(g) if args.json else render_dsl(g))
    return 0


if __name__ == "__main__":
    sys.exit(main())
