"""Command-line front end.

Subcommands: reduce, solve {ds,aug,improve}, normalize, verify, export-dot.

Exit codes (stable contract):
  0 success / yes       4 node-expansion cap hit
  1 no                  5 edge set is not augmenting
  2 parse or usage      6 unsound swap (trace printed)
  3 disconnected input  7 equivalence mismatch under the default variant
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import harness, swaprules
from .errors import (
    DisconnectedInputError,
    GraphParseError,
    NotAugmentingError,
    NotProperError,
    OutOfRangeError,
    ResourceExceededError,
    RuleUnsoundError,
    SelfLoopError,
)
from .gadget import (
    CLOSED_NEIGHBORHOOD,
    VARIANTS,
    build_gadget,
    parse_map,
    serialize_map,
)
from .graph import (
    Edge,
    Graph,
    normalize_edge,
    parse_graph,
    serialize_graph,
)
from .solvers import (
    SolveResult,
    solve_diameter_augmentation,
    solve_diameter_improvement,
    solve_dominating_set,
)

EXIT_YES = 0
EXIT_NO = 1
EXIT_PARSE = 2
EXIT_DISCONNECTED = 3
EXIT_RESOURCE = 4
EXIT_NOT_AUGMENTING = 5
EXIT_RULE_UNSOUND = 6
EXIT_MISMATCH = 7


def parse_edge_set(text: str) -> frozenset[Edge]:
    edges = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] != "e" or len(parts) != 3:
            raise GraphParseError("expected `e <u> <v>`", lineno)
        try:
            u, v = int(parts[1]), int(parts[2])
        except ValueError:
            raise GraphParseError("non-integer endpoints", lineno)
        edges.add(normalize_edge(u, v))
    return frozenset(edges)


def format_edges(edges) -> str:
    return " ".join(f"{u}-{v}" for u, v in sorted(edges)) or "-"


def format_vertices(vs) -> str:
    return " ".join(str(v) for v in sorted(vs)) or "-"


def _print_result(problem: str, g: Graph, k: int, res: SolveResult, edge_witness: bool):
    print(f"problem {problem}")
    print(f"n {g.n}")
    print(f"m {g.m}")
    print(f"k {k}")
    print(f"answer {'yes' if res.answer else 'no'}")
    if res.witness is None:
        print("witness -")
    elif edge_witness:
        print(f"witness {format_edges(res.witness)}")
    else:
        print(f"witness {format_vertices(res.witness)}")
    print(f"nodes_expanded {res.nodes_expanded}")
    print(f"time_ms {res.elapsed * 1000:.1f}")


def cmd_reduce(args) -> int:
    g1 = parse_graph(Path(args.infile).read_text())
    gadget = build_gadget(g1, args.variant)
    Path(args.out).write_text(serialize_graph(gadget.graph))
    Path(args.map).write_text(serialize_map(gadget))
    print(
        f"gadget written: {gadget.graph.n} vertices, {gadget.graph.m} edges "
        f"({gadget.variant})"
    )
    return EXIT_YES


def cmd_solve(args) -> int:
    g = parse_graph(Path(args.infile).read_text())
    if args.problem == "ds":
        res = solve_dominating_set(g, args.k)
        _print_result("ds", g, args.k, res, edge_witness=False)
    elif args.problem == "aug":
        res = solve_diameter_augmentation(g, args.k, args.target_diameter)
        _print_result("aug", g, args.k, res, edge_witness=True)
    else:
        res = solve_diameter_improvement(g, args.k)
        _print_result("improve", g, args.k, res, edge_witness=True)
    return EXIT_YES if res.answer else EXIT_NO


def cmd_normalize(args) -> int:
    graph = parse_graph(Path(args.infile).read_text())
    gadget = parse_map(graph, Path(args.map).read_text())
    edges = parse_edge_set(Path(args.edges).read_text())
    proper, trace = swaprules.normalize(gadget, edges)
    dominating = swaprules.extract_dominating_set(gadget, proper)
    print(f"proper {format_edges(proper)}")
    print(f"dominating {format_vertices(dominating)}")
    print(f"steps {len(trace.steps)}")
    for i, step in enumerate(trace.steps):
        print(
            f"step {i} rule {step.rule} "
            f"removed {format_edges(step.removed)} "
            f"added {format_edges(step.added)} "
            f"diameter_after {step.diameter_after}"
        )
    if args.trace:
        Path(args.trace).write_text(swaprules.trace_to_json(trace))
    return EXIT_YES


def cmd_verify(args) -> int:
    config = harness.CampaignConfig(
        n_min=args.n_min,
        n_max=args.n_max,
        samples=args.samples,
        edge_prob=args.edge_prob,
        seed=args.seed,
        variant=args.variant,
        k_max=args.k_max,
    )
    config.validate()
    report = harness.run_campaign(config)
    summary = harness.report_summary(report)
    sys.stdout.write(summary)
    if args.report:
        prefix = Path(args.report)
        prefix.parent.mkdir(parents=True, exist_ok=True)
        Path(f"{prefix}.csv").write_text(harness.report_csv(report))
        Path(f"{prefix}_summary.txt").write_text(summary)
        harness.render_report_figure(report, f"{prefix}.png")
        print(f"report written to {prefix}.csv / {prefix}_summary.txt / {prefix}.png")
    if report.hard_failures:
        return EXIT_MISMATCH
    return EXIT_YES


ROLE_COLORS = {
    "U1": "lightblue",
    "U2": "lightgreen",
    "Y": "gold",
    "Z": "orange",
    "X": "tomato",
}


def cmd_export_dot(args) -> int:
    graph = parse_graph(Path(args.infile).read_text())
    roles = None
    if args.map:
        gadget = parse_map(graph, Path(args.map).read_text())
        roles = gadget.roles
    lines = ["graph G {"]
    if roles:
        lines.append("  node [style=filled];")
        for v in range(graph.n):
            color = ROLE_COLORS[roles[v]]
            lines.append(f'  {v} [label="{v}:{roles[v]}" fillcolor="{color}"];')
    for u, v in graph.edges:
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diam2aug",
        description="dominating-set / diameter-2 augmentation reduction toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="build the gadget graph from G1")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--map", required=True)
    p.add_argument("--variant", choices=VARIANTS, default=CLOSED_NEIGHBORHOOD)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("solve", help="run an exact solver")
    p.add_argument("problem", choices=("ds", "aug", "improve"))
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--target-diameter", type=int, default=2)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("normalize", help="swap an augmenting set into proper form")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--map", required=True)
    p.add_argument("--edges", required=True)
    p.add_argument("--trace", help="write the JSON trace here")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("verify", help="run an equivalence campaign")
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--edge-prob", type=float, default=0.4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--variant", choices=VARIANTS, default=CLOSED_NEIGHBORHOOD)
    p.add_argument("--k-max", type=int, default=3)
    p.add_argument("--report", help="path prefix for CSV/summary/figure outputs")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export-dot", help="emit a DOT rendering of a graph")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--map")
    p.add_argument("--out")
    p.set_defaults(func=cmd_export_dot)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphParseError, OutOfRangeError, SelfLoopError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DisconnectedInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DISCONNECTED
    except ResourceExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (NotAugmentingError, NotProperError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_AUGMENTING
    except RuleUnsoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.trace is not None:
            sys.stderr.write(swaprules.trace_to_json(exc.trace))
        return EXIT_RULE_UNSOUND


if __name__ == "__main__":
    sys.exit(main())
