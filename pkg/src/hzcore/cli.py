"""Command-line surface: classify, color, gen, oracle, verify.

Every emitted coloring is re-verified by the independent properness
checker before printing.  Output is byte-identical for identical
(input, flags, seed).  Exit codes: 0 = success / Class 1, 2 = Class 2,
1 = error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import classify as cls
from . import harness
from .coloring import PartialEdgeColoring
from .errors import HzError, NotCandidate
from .formats import (
    from_edge_list,
    from_graph6,
    load_graph,
    to_edge_list,
    to_graph6,
)
from .graphs import Graph, max_degree
from .oracle import DEFAULT_BUDGET, chromatic_index_exact, enumerate_small_graphs
from .vizing import color_delta_plus_one


def _read_graph(path: str, fmt: str | None) -> Graph:
    if fmt is None:
        return load_graph(path)
    text = sys.stdin.read() if path == "-" else open(path).read()
    if fmt == "g6":
        return from_graph6(text.strip().splitlines()[0])
    if fmt == "el":
        return from_edge_list(text)
    raise HzError(f"unknown format {fmt!r}")


def _verify_coloring(g: Graph, coloring: dict, k: int) -> None:
    pc = PartialEdgeColoring(g, k, coloring)
    pc.check()


def _emit(data: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(data, sort_keys=True))
        return
    for key, value in data.items():
        print(f"{key}\t{value}")


def cmd_classify(args) -> int:
    g = _read_graph(args.input, args.format)
    report = cls.classify(g)
    if report.coloring is not None:
        _verify_coloring(g, report.coloring, report.chromatic_index)
    _emit(report.to_json_dict(), args.output)
    return 0 if report.chromatic_class == 1 else 2


def cmd_color(args) -> int:
    g = _read_graph(args.input, args.format)
    if args.vizing:
        outcome = color_delta_plus_one(g)
        coloring, k = outcome.coloring, max_degree(g) + 1
        payload = {"colors_used": outcome.colors_used, "method": "vizing"}
    else:
        diag = cls.candidate_diagnostics(g)
        if not diag.ok:
            raise NotCandidate(diag.reason or "not a candidate")
        result = cls.color_optimal(g, seed=args.seed, budget=args.budget)
        coloring, k = result.coloring, max(result.chromatic_index, 1)
        payload = {
            "colors_used": result.colors_used,
            "chromatic_index": result.chromatic_index,
            "method": result.method,
        }
        if result.descent is not None:
            payload["descent"] = {
                "succeeded": result.descent.succeeded,
                "restarts": result.descent.restarts_used,
                "insertions": result.descent.insertions,
            }
    if coloring:
        _verify_coloring(g, coloring, k)
    payload["edges"] = sorted([u, v, c] for (u, v), c in coloring.items())
    _emit(payload, args.output)
    return 0


def cmd_gen(args) -> int:
    if args.family == "pstar":
        g = cls.petersen_minus()
    else:
        g = cls.gen_odelta(args.delta, args.n1)
    if args.output == "json":
        print(json.dumps({"n": g.n, "m": g.m, "graph6": to_graph6(g)}, sort_keys=True))
    elif args.as_format == "g6":
        print(to_graph6(g))
    else:
        sys.stdout.write(to_edge_list(g))
    return 0


def cmd_oracle(args) -> int:
    g = _read_graph(args.input, args.format)
    result = chromatic_index_exact(g, args.budget)
    if result.timed_out:
        _emit(
            {
                "timed_out": True,
                "lower_bound": result.lower_bound,
                "upper_bound": result.upper_bound,
                "nodes": result.nodes_explored,
            },
            args.output,
        )
        return 1
    if result.witness:
        _verify_coloring(g, result.witness, result.chromatic_index)
    _emit(
        {
            "chromatic_index": result.chromatic_index,
            "delta": max_degree(g),
            "nodes": result.nodes_explored,
        },
        args.output,
    )
    return 0


def cmd_verify(args) -> int:
    cfg = harness.HarnessConfig(
        perturbations=args.perturbations, seed=args.seed, budget=args.budget
    )
    graphs = []
    if args.input:
        graphs.append(_read_graph(args.input, args.format))
    else:
        for n in range(1, args.n_max + 1):
            graphs.extend(enumerate_small_graphs(n))
    suites = args.suite.split(",") if args.suite else None
    failures = 0
    for g6, report in harness.run_suite(graphs, cfg, suites):
        if report.verdict == "not_applicable" and not args.show_skipped:
            continue
        line = {"graph6": g6, **report.to_json_dict()}
        print(json.dumps(line, sort_keys=True))
        if report.verdict == "fail":
            failures += 1
    print(json.dumps({"summary": "fail" if failures else "pass", "failures": failures}))
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hzcore",
        description="Edge-coloring classification for graphs with a small core.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("input", help="graph file (.g6 or .el), or - for stdin")
            p.add_argument("--format", choices=["g6", "el"], default=None)
        p.add_argument("--output", choices=["json", "table"], default="json")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    p = sub.add_parser("classify", help="Class 1/2 verdict with witness")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("color", help="proper edge coloring")
    common(p)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--optimal", action="store_true", default=True)
    group.add_argument("--vizing", action="store_true")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("gen", help="generate family members")
    p.add_argument("family", choices=["odelta", "pstar"])
    p.add_argument("--delta", type=int, default=None)
    p.add_argument("--n1", type=int, default=None)
    p.add_argument("--as-format", choices=["g6", "el"], default="g6", dest="as_format")
    p.add_argument("--output", choices=["json", "table", "raw"], default="raw")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("oracle", help="exact chromatic index")
    common(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="lemma property suite")
    p.add_argument("input", nargs="?", default=None)
    p.add_argument("--format", choices=["g6", "el"], default=None)
    p.add_argument("--suite", default=None, help="comma-separated check names")
    p.add_argument("--n-max", type=int, default=5, dest="n_max")
    p.add_argument("--perturbations", type=int, default=4)
    p.add_argument("--show-skipped", action="store_true")
    p.add_argument("--output", choices=["json"], default="json")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "gen" and args.family == "odelta":
        if args.delta is None or args.n1 is None:
            parser.error("gen odelta requires --delta and --n1")
    try:
        return args.func(args)
    except HzError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
