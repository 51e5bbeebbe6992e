"""Constructive reductions with exact size bookkeeping.

* Boolean matrix product -> Dyck-1 reachability on a 3-layer graph
  (3n nodes, one edge per non-zero entry).
* Dyck-1 reachability -> a normalized pointer program, for any of the six
  statement-type profiles (node gadgets make each query variable point to
  its primed address variable; edge gadgets encode the bracket labels).
* Triangle detection -> single-source/single-target Dyck-1 reachability on
  a 4-layer graph with bracket chains through s and t.

All outputs are byte-deterministic for a given input, and every reduction
returns a provenance map from input entities to output entities.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .model import (
    BadEdgeLabelError,
    BooleanMatrix,
    DimensionMismatchError,
    DYCK_CLOSE,
    DYCK_LABELS,
    DYCK_OPEN,
    InvalidParamsError,
    LabeledDigraph,
    Program,
    ReductionMap,
    SelfLoopError,
    Statement,
    StatementKind,
    StatementProfile,
    Variable,
    is_identifier,
)
from .cfl import all_pairs, dyck_grammar


@dataclass(frozen=True)
class D1Instance:
    """A Dyck-1 reachability instance plus provenance for its layers."""

    graph: LabeledDigraph
    map: ReductionMap

    def __post_init__(self):
        if not self.graph.alphabet <= DYCK_LABELS:
            raise BadEdgeLabelError("instance alphabet must be the two Dyck-1 labels")


@dataclass(frozen=True)
class StInstance:
    """A Dyck-1 instance with distinguished source and sink nodes."""

    graph: LabeledDigraph
    s: int
    t: int
    map: ReductionMap

    def __post_init__(self):
        for src, _, dst in self.graph.edges:
            if dst == self.s:
                raise InvalidParamsError("source node must have no incoming edges")
            if src == self.t:
                raise InvalidParamsError("sink node must have no outgoing edges")


# ---------------------------------------------------------------------------
# Boolean matrix product -> Dyck-1 reachability

def bmm_to_d1(a: BooleanMatrix, b: BooleanMatrix) -> D1Instance:
    """Three layers x/y/z of n nodes each; a[i][j]=1 adds x_i -[1-> y_j and
    b[i][j]=1 adds y_i -]1-> z_j."""
    if a.n != b.n:
        raise DimensionMismatchError(f"matrix sizes differ: {a.n} vs {b.n}")
    n = a.n
    names = [f"x{i}" for i in range(n)] + [f"y{i}" for i in range(n)] + [f"z{i}" for i in range(n)]
    edges = set()
    for i in range(n):
        for j in range(n):
            if a.bits[i][j]:
                edges.add((i, DYCK_OPEN, n + j))
            if b.bits[i][j]:
                edges.add((n + i, DYCK_CLOSE, 2 * n + j))
    graph = LabeledDigraph(3 * n, DYCK_LABELS, edges, names)
    rmap = ReductionMap(
        roles=("x", "y", "z"),
        forward={i: (i, n + i, 2 * n + i) for i in range(n)},
        meta={"n": n, "x_base": 0, "y_base": n, "z_base": 2 * n},
    )
    return D1Instance(graph, rmap)


def multiply_via_d1(a: BooleanMatrix, b: BooleanMatrix) -> BooleanMatrix:
    """Boolean product computed by Dyck-1 reachability on the reduced graph."""
    inst = bmm_to_d1(a, b)
    summaries = all_pairs(inst.graph, dyck_grammar(1))
    n = a.n
    start_pairs = summaries.pairs("D1")
    return BooleanMatrix(
        [[1 if (i, 2 * n + j) in start_pairs else 0 for j in range(n)] for i in range(n)]
    )


# ---------------------------------------------------------------------------
# Dyck-1 reachability -> pointer program

def _node_base_names(graph: LabeledDigraph) -> list[str]:
    names = []
    for v in range(graph.node_count):
        name = graph.node_names[v] if graph.node_names is not None else f"n{v}"
        # temps are reserved; fall back rather than collide with t<i>
        if not is_identifier(name) or (name[0] == "t" and name[1:].isdigit()):
            name = f"n{v}"
        names.append(name)
    taken = set(names)
    if len(taken) != len(names) or any(name + "'" in taken for name in names):
        names = [f"n{v}" for v in range(graph.node_count)]
    return names


def d1_to_program(
    instance: Union[D1Instance, LabeledDigraph],
    profile: StatementProfile = StatementProfile.CASE1,
    prune_isolated: bool = False,
) -> tuple[Program, ReductionMap]:
    """Emit the pointer program whose points-to facts mirror Dyck-1
    reachability: u reaches v iff the query variable of u points to the
    primed address variable of v.

    Node gadgets (by profile, temps fresh per gadget):
        case1  v = *t1; t1 = t2; t2 = &t3; t3 = &v'
        case3  v = *t1; t1 = &t2; t2 = &v'
        case2 / case4  v = t1; t1 = &v'
        case5 / case6  v = &v'
    Edge gadgets:
        star-assign style (cases 1/2/3/5):
            open  (u, v):  t = &u; *v = t      close (u, v):  u = &t; *t = v
        assign-star style (cases 4/6):
            open  (u, v):  u = *v              close (u, v):  u = &v

    `prune_isolated` drops the node gadgets of degree-0 nodes.
    """
    graph = instance.graph if isinstance(instance, D1Instance) else instance
    bad = {label for _, label, _ in graph.edges} - DYCK_LABELS
    if bad:
        raise BadEdgeLabelError(f"non-Dyck-1 edge labels: {sorted(bad)}")

    base = _node_base_names(graph)
    statements: list[Statement] = []
    forward: dict[int, tuple] = {}
    temp_counter = 0

    def fresh_temp() -> Variable:
        nonlocal temp_counter
        temp_counter += 1
        return Variable(f"t{temp_counter}")

    for v in range(graph.node_count):
        if prune_isolated and not graph.degree_nonzero(v):
            continue
        qvar = Variable(base[v])
        avar = Variable(base[v] + "'")
        forward[v] = (qvar, avar)
        if profile is StatementProfile.CASE1:
            t1, t2, t3 = fresh_temp(), fresh_temp(), fresh_temp()
            statements += [
                Statement(StatementKind.ASSIGN_STAR, qvar, t1),
                Statement(StatementKind.ASSIGN, t1, t2),
                Statement(StatementKind.ADDRESS_OF, t2, t3),
                Statement(StatementKind.ADDRESS_OF, t3, avar),
            ]
        elif profile is StatementProfile.CASE3:
            t1, t2 = fresh_temp(), fresh_temp()
            statements += [
                Statement(StatementKind.ASSIGN_STAR, qvar, t1),
                Statement(StatementKind.ADDRESS_OF, t1, t2),
                Statement(StatementKind.ADDRESS_OF, t2, avar),
            ]
        elif profile in (StatementProfile.CASE2, StatementProfile.CASE4):
            t1 = fresh_temp()
            statements += [
                Statement(StatementKind.ASSIGN, qvar, t1),
                Statement(StatementKind.ADDRESS_OF, t1, avar),
            ]
        else:  # CASE5 / CASE6
            statements.append(Statement(StatementKind.ADDRESS_OF, qvar, avar))

    for src, label, dst in sorted(graph.edges):
        u, v = Variable(base[src]), Variable(base[dst])
        if profile.edges_via_star_assign:
            t = fresh_temp()
            if label == DYCK_OPEN:
                statements += [
                    Statement(StatementKind.ADDRESS_OF, t, u),
                    Statement(StatementKind.STAR_ASSIGN, v, t),
                ]
            else:
                statements += [
                    Statement(StatementKind.ADDRESS_OF, u, t),
                    Statement(StatementKind.STAR_ASSIGN, t, v),
                ]
        else:
            if label == DYCK_OPEN:
                statements.append(Statement(StatementKind.ASSIGN_STAR, u, v))
            else:
                statements.append(Statement(StatementKind.ADDRESS_OF, u, v))

    rmap = ReductionMap(
        roles=("query_var", "addr_var"),
        forward=forward,
        meta={"profile": profile.value, "prune_isolated": prune_isolated},
    )
    return Program(statements), rmap


# ---------------------------------------------------------------------------
# triangle detection -> s-t Dyck-1 reachability

def _undirected_pairs(graph: LabeledDigraph) -> list[tuple[int, int]]:
    pairs = set()
    for src, _, dst in graph.edges:
        if src == dst:
            raise SelfLoopError(f"self-loop at node {src}")
        pairs.add((min(src, dst), max(src, dst)))
    return sorted(pairs)


def _directed_pairs(graph: LabeledDigraph) -> list[tuple[int, int]]:
    pairs = set()
    for src, _, dst in graph.edges:
        if src == dst:
            raise SelfLoopError(f"self-loop at node {src}")
        pairs.add((src, dst))
    return sorted(pairs)


def triangle_to_st_d1(graph: LabeledDigraph, directed: bool = False) -> StInstance:
    """Four layer copies per node plus s and t.

    An open-bracket chain runs from s through layer 0 (ascending node
    order) and a close-bracket chain from layer 3 back into t, so the walk
    down to any u_0 and up from the matching u_3 is balanced. Each input
    edge (u, v) contributes, per layer j in 0..2, an auxiliary hop
    u_j -[1-> aux -]1-> v_{j+1}; undirected inputs also get the mirrored
    hop v_j -> u_{j+1}. A triangle through u is then exactly a balanced
    s-to-t walk via u_0 .. u_3.
    """
    pairs = _directed_pairs(graph) if directed else _undirected_pairs(graph)
    n = graph.node_count

    def layer(u: int, j: int) -> int:
        return 4 * u + j

    s_node, t_node = 4 * n, 4 * n + 1
    edges: set[tuple[int, str, int]] = set()
    if n:
        edges.add((s_node, DYCK_OPEN, layer(0, 0)))
        edges.add((layer(0, 3), DYCK_CLOSE, t_node))
    for u in range(1, n):
        edges.add((layer(u - 1, 0), DYCK_OPEN, layer(u, 0)))
        edges.add((layer(u, 3), DYCK_CLOSE, layer(u - 1, 3)))

    aux = 4 * n + 2
    aux_names: list[str] = []
    i = 0
    for u, v in pairs:
        for j in range(3):
            edges.add((layer(u, j), DYCK_OPEN, aux))
            edges.add((aux, DYCK_CLOSE, layer(v, j + 1)))
            aux_names.append(f"t{i}")
            aux += 1
            if not directed:
                edges.add((layer(v, j), DYCK_OPEN, aux))
                edges.add((aux, DYCK_CLOSE, layer(u, j + 1)))
                aux_names.append(f"t{i}'")
                aux += 1
            i += 1

    base = []
    for v in range(n):
        name = graph.node_names[v] if graph.node_names is not None else f"n{v}"
        base.append(name)
    names = [f"{base[u]}{j}" for u in range(n) for j in range(4)] + ["s", "t"] + aux_names
    if len(set(names)) != len(names):
        names = [f"n{u}_{j}" for u in range(n) for j in range(4)] + ["s", "t"] + aux_names

    out = LabeledDigraph(aux, DYCK_LABELS, edges, names)
    rmap = ReductionMap(
        roles=("layer0", "layer1", "layer2", "layer3"),
        forward={u: tuple(layer(u, j) for j in range(4)) for u in range(n)},
        meta={"s": s_node, "t": t_node, "directed": directed},
    )
    return StInstance(out, s_node, t_node, rmap)
