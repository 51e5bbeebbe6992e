"""Command-line front end.

Subcommands: analyze, reach, reduce, crosscheck, gen, bench. Exit codes:
0 success / positive answer, 1 negative answer (query "no", unreachable,
mismatches), 2 usage or parse errors. All commands are deterministic
functions of (argv, input files, seed); PA_LAB_SEED supplies the default
seed.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from . import crosscheck as cc
from . import textio
from .andersen import solve
from .cfl import all_pairs, builtin_grammar, st_query
from .model import AnalysisError, StatementProfile
from .reductions import bmm_to_d1, d1_to_program, triangle_to_st_d1


def _default_seed() -> int:
    try:
        return int(os.environ.get("PA_LAB_SEED", "0"))
    except ValueError:
        return 0


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _write(path: str, text: str):
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)


def _load_grammar(name_or_path: str):
    if name_or_path.endswith(".cfg"):
        return textio.parse_grammar(_read(name_or_path))
    return builtin_grammar(name_or_path)


def _profile(args) -> StatementProfile:
    return StatementProfile.from_name(args.profile)


# ---------------------------------------------------------------------------
# subcommands

def cmd_analyze(args) -> int:
    program = textio.parse_program(_read(args.program))
    solution = solve(program)
    if args.query:
        p, q = args.query
        answer = solution.query(p, q)
        print("yes" if answer else "no")
        return 0 if answer else 1
    sys.stdout.write(textio.serialize_solution(solution))
    return 0


def cmd_reach(args) -> int:
    graph = textio.parse_graph(_read(args.graph))
    grammar = _load_grammar(args.grammar)
    if (args.source is None) != (args.target is None):
        raise AnalysisError("--source and --target must be given together")
    if args.source is not None:
        s = graph.resolve(args.source)
        t = graph.resolve(args.target)
        reachable = st_query(graph, grammar, s, t)
        print("reachable" if reachable else "unreachable")
        return 0 if reachable else 1
    summaries = all_pairs(graph, grammar)
    for u, v in sorted(summaries.pairs(grammar.start)):
        if u == v and not args.include_self:
            continue
        print(f"{graph.name_of(u)} -> {graph.name_of(v)}")
    return 0


def cmd_reduce(args) -> int:
    if args.variant == "bmm-to-d1":
        if len(args.inputs) != 2:
            raise AnalysisError("bmm-to-d1 needs two matrix files")
        a = textio.parse_matrix(_read(args.inputs[0]))
        b = textio.parse_matrix(_read(args.inputs[1]))
        inst = bmm_to_d1(a, b)
        _write(args.output, textio.serialize_graph(inst.graph))
        rmap = inst.map
    elif args.variant == "d1-to-pa":
        if len(args.inputs) != 1:
            raise AnalysisError("d1-to-pa needs one graph file")
        graph = textio.parse_graph(_read(args.inputs[0]))
        program, rmap = d1_to_program(graph, _profile(args), args.prune_isolated)
        _write(args.output, textio.serialize_program(program))
    elif args.variant == "triangle-to-d1":
        if len(args.inputs) != 1:
            raise AnalysisError("triangle-to-d1 needs one graph file")
        graph = textio.parse_graph(_read(args.inputs[0]))
        inst = triangle_to_st_d1(graph, args.directed)
        _write(args.output, textio.serialize_graph(inst.graph))
        rmap = inst.map
    else:  # unreachable; argparse screens variants
        raise AnalysisError(f"unknown variant {args.variant}")
    if args.map:
        _write(args.map, textio.serialize_map(rmap))
    return 0


def cmd_crosscheck(args) -> int:
    if args.suite == "bmm":
        report = cc.check_bmm_chain(args.max_n, args.trials, args.seed, _profile(args))
    elif args.suite == "peg":
        report = cc.check_peg_equivalence(args.trials, args.seed)
    elif args.suite == "pt-prime":
        report = cc.check_pt_prime(args.trials, args.seed)
    else:
        report = cc.check_triangle_chain(args.max_n, args.trials, args.seed, args.directed)
    print(report.summary_text())
    return 0 if report.passed else 1


def cmd_gen(args) -> int:
    if args.kind == "matrix":
        text = textio.serialize_matrix(cc.rand_matrix(args.n, args.density, args.seed))
    elif args.kind == "program":
        text = textio.serialize_program(cc.rand_program(args.n, args.stmts, args.seed))
    elif args.kind == "dyck-graph":
        text = textio.serialize_graph(cc.rand_dyck_graph(args.n, args.m, args.seed))
    else:  # simple-graph
        text = textio.serialize_graph(
            cc.rand_simple_graph(args.n, args.density, args.seed, args.directed)
        )
    if args.output:
        _write(args.output, text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_bench(args) -> int:
    sizes = [int(tok) for tok in args.sizes.split(",") if tok]
    for n in sizes:
        if args.suite == "reach-d1":
            graph = cc.rand_dyck_graph(n, 2 * n, args.seed)
            started = time.perf_counter()
            all_pairs(graph, builtin_grammar("d1"))
            elapsed = time.perf_counter() - started
            print(f"n={n} m={2 * n} suite=reach-d1 seconds={elapsed:.4f}")
        else:  # solve
            program = cc.rand_program(n, 2 * n, args.seed)
            started = time.perf_counter()
            solve(program)
            elapsed = time.perf_counter() - started
            print(f"n={n} m={2 * n} suite=solve seconds={elapsed:.4f}")
    return 0


# ---------------------------------------------------------------------------
# parser wiring

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="palab",
        description="points-to analysis, Dyck/CFL reachability, and cross-checked reductions",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    seed_default = _default_seed()

    p = sub.add_parser("analyze", help="solve a pointer program")
    p.add_argument("program", help="program file (.pa)")
    p.add_argument("--query", nargs=2, metavar=("P", "Q"), help="ask whether p points to q")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("reach", help="CFL reachability over a labeled graph")
    p.add_argument("graph", help="graph file (.lg)")
    p.add_argument("--grammar", required=True, help="d1 | dyck:<k> | pt | pt-prime | file.cfg")
    p.add_argument("--source", help="source node (name or id) for an s-t query")
    p.add_argument("--target", help="target node (name or id) for an s-t query")
    p.add_argument("--include-self", action="store_true", help="also print self pairs")
    p.set_defaults(func=cmd_reach)

    p = sub.add_parser("reduce", help="run one of the reductions")
    p.add_argument("variant", choices=["bmm-to-d1", "d1-to-pa", "triangle-to-d1"])
    p.add_argument("inputs", nargs="+", help="input file(s)")
    p.add_argument("-o", "--output", required=True, help="output instance file")
    p.add_argument("--map", help="also write the provenance map (TSV)")
    p.add_argument("--profile", default="case1", help="statement profile case1..case6")
    p.add_argument("--prune-isolated", action="store_true", help="skip degree-0 node gadgets")
    p.add_argument("--directed", action="store_true", help="treat triangle input as directed")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("crosscheck", help="randomized oracle equivalence suites")
    p.add_argument("--suite", required=True, choices=["bmm", "peg", "pt-prime", "triangle"])
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--max-n", type=int, default=8, help="instance size cap (bmm, triangle)")
    p.add_argument("--seed", type=int, default=seed_default)
    p.add_argument("--profile", default="case1", help="statement profile for the bmm suite")
    p.add_argument("--directed", action="store_true", help="directed triangle mode")
    p.set_defaults(func=cmd_crosscheck)

    p = sub.add_parser("gen", help="write a seeded random instance")
    p.add_argument("kind", choices=["matrix", "program", "dyck-graph", "simple-graph"])
    p.add_argument("-n", type=int, required=True, help="size (nodes / variables / dimension)")
    p.add_argument("-m", type=int, default=0, help="edge count (dyck-graph)")
    p.add_argument("--stmts", type=int, default=10, help="statement count cap (program)")
    p.add_argument("--density", type=float, default=0.3)
    p.add_argument("--directed", action="store_true")
    p.add_argument("--seed", type=int, default=seed_default)
    p.add_argument("-o", "--output", help="output file (default stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="informational size-vs-time rows")
    p.add_argument("--sizes", required=True, help="comma-separated sizes, e.g. 50,100,200")
    p.add_argument("--suite", default="reach-d1", choices=["reach-d1", "solve"])
    p.add_argument("--seed", type=int, default=seed_default)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except AnalysisError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
