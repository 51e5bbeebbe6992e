"""Shared test fixtures and independent brute-force oracles.

The oracles here deliberately avoid the library's saturation and worklist
code paths: path enumeration + chart-parser membership checks reachability,
and a direct constraint sweep checks that a points-to solution is closed.
"""

from __future__ import annotations

import random
from collections import defaultdict

from palab.cfl import derives
from palab.crosscheck import worked_dyck_graph
from palab.model import (
    Grammar,
    LabeledDigraph,
    PointsToSolution,
    Program,
    StatementKind,
)

EXAMPLE_PROGRAM_TEXT = "a = &b\nb = &d\nc = *a\n"

# the worked bracket graph rendered with the variable names used by the
# reduced-program walkthrough: u0 (=x0), v1 (=y1), w2 (=z2), w3 (=z3)
_RENAMES = {"x0": "u0", "y1": "v1", "z2": "w2", "z3": "w3"}

REDUCED_PROGRAM_TEXT = """\
t1 = &u0; *v1 = t1
v1 = &t2; *t2 = w2
v1 = &t3; *t3 = w3
u0 = *t4; t4 = t5; t5 = &t6; t6 = &u0'
v1 = *t7; t7 = t8; t8 = &t9; t9 = &v1'
w2 = *t10; t10 = t11; t11 = &t12; t12 = &w2'
w3 = *t13; t13 = t14; t14 = &t15; t15 = &w3'
"""


def renamed_worked_graph() -> LabeledDigraph:
    g = worked_dyck_graph()
    names = tuple(_RENAMES.get(n, n) for n in g.node_names)
    return LabeledDigraph(g.node_count, g.alphabet, g.edges, names)


def path_strings(graph: LabeledDigraph) -> dict[tuple[int, int], set[tuple[str, ...]]]:
    """All path label strings between every node pair; the graph must be
    acyclic. The empty path is included for every node."""
    adj: dict[int, list[tuple[str, int]]] = defaultdict(list)
    for src, label, dst in sorted(graph.edges):
        adj[src].append((label, dst))
    out: dict[tuple[int, int], set[tuple[str, ...]]] = defaultdict(set)

    def walk(start: int, node: int, labels: list[str]):
        out[(start, node)].add(tuple(labels))
        for label, nxt in adj[node]:
            labels.append(label)
            walk(start, nxt, labels)
            labels.pop()

    for v in range(graph.node_count):
        walk(v, v, [])
    return out


def reachable_by_enumeration(
    graph: LabeledDigraph, grammar: Grammar, symbol: str
) -> set[tuple[int, int]]:
    """Oracle: pairs joined by a path whose string the symbol derives."""
    pairs = set()
    for (u, v), words in path_strings(graph).items():
        if any(derives(grammar, symbol, w) for w in words):
            pairs.add((u, v))
    return pairs


def constraint_violations(program: Program, solution: PointsToSolution) -> list[str]:
    """One more resolution pass over the solved state; a closed (fixpoint)
    solution yields no violations."""
    pt = solution.pt
    bad = []
    for st in program.statements:
        if st.kind is StatementKind.ADDRESS_OF:
            if st.rhs not in pt[st.lhs]:
                bad.append(f"loc({st.rhs}) missing from pt({st.lhs})")
        elif st.kind is StatementKind.ASSIGN:
            if not pt[st.rhs] <= pt[st.lhs]:
                bad.append(f"pt({st.rhs}) not within pt({st.lhs})")
        elif st.kind is StatementKind.ASSIGN_STAR:
            for v in pt[st.rhs]:
                if not pt[v] <= pt[st.lhs]:
                    bad.append(f"pt({v}) not within pt({st.lhs})")
        else:
            for v in pt[st.lhs]:
                if not pt[st.rhs] <= pt[v]:
                    bad.append(f"pt({st.rhs}) not within pt({v})")
    return bad


def erased_statement_forms(program: Program) -> list[str]:
    """Statement multiset with every t<k> temporary replaced by `?`,
    for comparisons up to temp naming."""

    def erase(name: str) -> str:
        return "?" if name[0] == "t" and name[1:].isdigit() else name

    shapes = {
        StatementKind.ADDRESS_OF: "{} = &{}",
        StatementKind.ASSIGN: "{} = {}",
        StatementKind.ASSIGN_STAR: "{} = *{}",
        StatementKind.STAR_ASSIGN: "*{} = {}",
    }
    return sorted(
        shapes[st.kind].format(erase(st.lhs.name), erase(st.rhs.name))
        for st in program.statements
    )


def rand_acyclic_graph(alphabet: list[str], max_nodes: int, max_edges: int, seed: int) -> LabeledDigraph:
    """Random DAG with labels from `alphabet`; edges respect node order."""
    rng = random.Random(seed)

    def pick(k: int) -> int:
        return min(int(rng.random() * k), k - 1)

    n = 2 + pick(max_nodes - 1)
    edges = set()
    for _ in range(pick(max_edges + 1)):
        u = pick(n - 1)
        v = u + 1 + pick(n - u - 1)
        edges.add((u, alphabet[pick(len(alphabet))], v))
    return LabeledDigraph(n, alphabet, edges)
