"""Pointer expression graphs.

Every variable v contributes three nodes (&v, v, *v). Statements become
labeled program edges, pointer structure becomes dereference edges, and the
graph is bidirected: each edge u -t-> v has a reverse v -t̄-> u, with the
bar spelled as a leading "-" on the label.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .model import (
    LabeledDigraph,
    MalformedPegError,
    Program,
    Statement,
    StatementKind,
    Variable,
)

LABEL_R = "r"
LABEL_S = "s"
LABEL_AS = "as"
LABEL_SA = "sa"
LABEL_D = "d"

PEG_BASE_LABELS = (LABEL_R, LABEL_S, LABEL_AS, LABEL_SA, LABEL_D)
PEG_ALPHABET = frozenset(PEG_BASE_LABELS) | frozenset("-" + t for t in PEG_BASE_LABELS)

_STATEMENT_LABEL = {
    StatementKind.ADDRESS_OF: LABEL_R,
    StatementKind.ASSIGN: LABEL_S,
    StatementKind.ASSIGN_STAR: LABEL_AS,
    StatementKind.STAR_ASSIGN: LABEL_SA,
}


def inverse_label(label: str) -> str:
    return label[1:] if label.startswith("-") else "-" + label


class ExprForm(enum.Enum):
    ADDR = 0   # &v
    VAR = 1    # v
    DEREF = 2  # *v

    def render(self, var: Variable) -> str:
        return ("&", "", "*")[self.value] + var.name


@dataclass(frozen=True)
class PEG:
    """Bidirected expression graph plus the node -> expression mapping."""

    graph: LabeledDigraph
    expr_of: tuple[tuple[Variable, ExprForm], ...]

    def node(self, var: Variable, form: ExprForm) -> int:
        """Node id of an expression; the layout is (&v, v, *v) per variable."""
        base = 3 * self._var_index[var]
        return base + form.value

    @property
    def _var_index(self) -> dict[Variable, int]:
        cached = self.__dict__.get("_var_index_cache")
        if cached is None:
            cached = {var: i // 3 for i, (var, form) in enumerate(self.expr_of) if form is ExprForm.VAR}
            self.__dict__["_var_index_cache"] = cached
        return cached


def build_peg(program: Program) -> PEG:
    """Construct the expression graph of a normalized program.

    Per statement: a=&b inserts a -r-> &b, a=b inserts a -s-> b, a=*b
    inserts a -as-> *b, *a=b inserts *a -sa-> b. Per variable v, the
    dereference edges &v -d-> v and v -d-> *v are always present. Every
    edge also gets its reverse with the barred label.
    """
    variables = program.variables
    index = {v: i for i, v in enumerate(variables)}

    def addr(v: Variable) -> int:
        return 3 * index[v]

    def var(v: Variable) -> int:
        return 3 * index[v] + 1

    def deref(v: Variable) -> int:
        return 3 * index[v] + 2

    edges: set[tuple[int, str, int]] = set()

    def insert(src: int, label: str, dst: int):
        edges.add((src, label, dst))
        edges.add((dst, inverse_label(label), src))

    for v in variables:
        insert(addr(v), LABEL_D, var(v))
        insert(var(v), LABEL_D, deref(v))
    for st in program.statement_set:
        if st.kind is StatementKind.ADDRESS_OF:
            insert(var(st.lhs), LABEL_R, addr(st.rhs))
        elif st.kind is StatementKind.ASSIGN:
            insert(var(st.lhs), LABEL_S, var(st.rhs))
        elif st.kind is StatementKind.ASSIGN_STAR:
            insert(var(st.lhs), LABEL_AS, deref(st.rhs))
        else:
            insert(deref(st.lhs), LABEL_SA, var(st.rhs))

    expr_of = []
    names = []
    for v in variables:
        for form in (ExprForm.ADDR, ExprForm.VAR, ExprForm.DEREF):
            expr_of.append((v, form))
            names.append(form.render(v))
    graph = LabeledDigraph(3 * len(variables), PEG_ALPHABET, edges, names or None)
    return PEG(graph, tuple(expr_of))


def peg_statements(peg: PEG) -> Program:
    """Recover the statement set encoded by a PEG's program edges."""
    out: list[Statement] = []
    for src, label, dst in sorted(peg.graph.edges):
        if label not in _STATEMENT_LABEL.values():
            continue
        svar, sform = peg.expr_of[src]
        dvar, dform = peg.expr_of[dst]
        expect = {
            LABEL_R: (ExprForm.VAR, ExprForm.ADDR, StatementKind.ADDRESS_OF),
            LABEL_S: (ExprForm.VAR, ExprForm.VAR, StatementKind.ASSIGN),
            LABEL_AS: (ExprForm.VAR, ExprForm.DEREF, StatementKind.ASSIGN_STAR),
            LABEL_SA: (ExprForm.DEREF, ExprForm.VAR, StatementKind.STAR_ASSIGN),
        }[label]
        if sform is not expect[0] or dform is not expect[1]:
            raise MalformedPegError(
                f"{label}-edge joins {sform.render(svar)} and {dform.render(dvar)}, "
                "which reads back as no statement"
            )
        out.append(Statement(expect[2], svar, dvar))
    return Program(out)
