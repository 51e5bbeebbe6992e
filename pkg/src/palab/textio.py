"""Line-oriented ASCII formats: programs (.pa), labeled graphs (.lg),
matrices (.bm), grammars (.cfg), solutions (.sol), provenance maps (.map).

`#` starts a comment in every format. Parsing a serialized value gives the
value back; serializing a parsed canonical text gives the text back.
"""

from __future__ import annotations

import re
from typing import Iterable

from .model import (
    BooleanMatrix,
    Grammar,
    InvalidNodeError,
    LabeledDigraph,
    ParseError,
    PointsToSolution,
    Program,
    ReductionMap,
    Statement,
    StatementKind,
    Variable,
)

_IDENT = r"[A-Za-z_][A-Za-z0-9_]*'*"
_STMT_RE = re.compile(
    rf"(?P<lstar>\*)?\s*(?P<lhs>{_IDENT})\s*=\s*(?P<rop>[&*])?\s*(?P<rhs>{_IDENT})\Z"
)


def _content_lines(text: str) -> Iterable[tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


# ---------------------------------------------------------------------------
# programs

def parse_program(text: str) -> Program:
    """Statements separated by newlines and/or semicolons; trailing ';' ok."""
    statements = []
    for lineno, line in _content_lines(text):
        for chunk in line.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            m = _STMT_RE.match(chunk)
            if not m:
                raise ParseError(f"not a normalized statement: {chunk!r}", lineno)
            lstar, lhs, rop, rhs = m.group("lstar", "lhs", "rop", "rhs")
            if lstar and rop:
                raise ParseError(f"not a normalized statement: {chunk!r}", lineno)
            if lstar:
                kind = StatementKind.STAR_ASSIGN
            elif rop == "&":
                kind = StatementKind.ADDRESS_OF
            elif rop == "*":
                kind = StatementKind.ASSIGN_STAR
            else:
                kind = StatementKind.ASSIGN
            statements.append(Statement(kind, Variable(lhs), Variable(rhs)))
    return Program(statements)


def serialize_program(program: Program) -> str:
    return "".join(f"{st}\n" for st in program.statements)


# ---------------------------------------------------------------------------
# labeled graphs

def parse_graph(text: str) -> LabeledDigraph:
    """Header `nodes <n>`, optional `alphabet <labels...>` and
    `name <id> <name>` lines, then edges `<src> <label> <dst>` where node
    tokens are ids or names (fresh names take dense ids in appearance
    order). Duplicate edges collapse silently."""
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty graph file: missing `nodes <n>` header")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "nodes":
        raise ParseError("expected `nodes <n>` header", lineno)
    try:
        node_count = int(parts[1])
    except ValueError:
        raise ParseError(f"bad node count {parts[1]!r}", lineno) from None
    if node_count < 0:
        raise ParseError("node count must be non-negative", lineno)

    alphabet: set[str] = set()
    alphabet_declared = False
    names: dict[int, str] = {}
    by_name: dict[str, int] = {}
    edges: set[tuple[int, str, int]] = set()
    next_auto = 0

    def resolve(token: str, lineno: int) -> int:
        nonlocal next_auto
        if token.lstrip("-").isdigit():
            node = int(token)
            if not 0 <= node < node_count:
                raise ParseError(f"node {node} out of range", lineno)
            return node
        if token in by_name:
            return by_name[token]
        while next_auto in names:
            next_auto += 1
        if next_auto >= node_count:
            raise ParseError(f"no free id for node name {token!r}", lineno)
        names[next_auto] = token
        by_name[token] = next_auto
        return next_auto

    for lineno, line in lines[1:]:
        parts = line.split()
        if parts[0] == "alphabet":
            alphabet.update(parts[1:])
            alphabet_declared = True
            continue
        if parts[0] == "name":
            if len(parts) != 3:
                raise ParseError("expected `name <id> <name>`", lineno)
            try:
                node = int(parts[1])
            except ValueError:
                raise ParseError(f"bad node id {parts[1]!r}", lineno) from None
            if not 0 <= node < node_count:
                raise ParseError(f"node {node} out of range", lineno)
            if node in names or parts[2] in by_name:
                raise ParseError(f"duplicate name binding {parts[2]!r}", lineno)
            names[node] = parts[2]
            by_name[parts[2]] = node
            continue
        if len(parts) != 3:
            raise ParseError("expected `<src> <label> <dst>` edge", lineno)
        src, label, dst = parts
        if alphabet_declared and label not in alphabet:
            raise ParseError(f"label {label!r} not in declared alphabet", lineno)
        if not alphabet_declared:
            alphabet.add(label)
        edges.add((resolve(src, lineno), label, resolve(dst, lineno)))

    node_names = None
    if names:
        if len(names) != node_count:
            raise ParseError(
                f"{len(names)} of {node_count} nodes named; name all or none"
            )
        node_names = tuple(names[i] for i in range(node_count))
    return LabeledDigraph(node_count, alphabet, edges, node_names)


def serialize_graph(graph: LabeledDigraph) -> str:
    lines = [f"nodes {graph.node_count}"]
    if graph.alphabet:
        lines.append("alphabet " + " ".join(sorted(graph.alphabet)))
    if graph.node_names is not None:
        lines += [f"name {i} {name}" for i, name in enumerate(graph.node_names)]
    lines += [f"{src} {label} {dst}" for src, label, dst in sorted(graph.edges)]
    return "".join(line + "\n" for line in lines)


# ---------------------------------------------------------------------------
# matrices

def parse_matrix(text: str) -> BooleanMatrix:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty matrix file: missing size header")
    lineno, header = lines[0]
    try:
        n = int(header)
    except ValueError:
        raise ParseError(f"bad matrix size {header!r}", lineno) from None
    rows = lines[1:]
    if len(rows) != n:
        raise ParseError(f"expected {n} rows, got {len(rows)}")
    bits = []
    for lineno, row in rows:
        if len(row) != n:
            raise ParseError(f"ragged row of length {len(row)}, expected {n}", lineno)
        if set(row) - {"0", "1"}:
            raise ParseError(f"matrix rows must be 0/1 strings: {row!r}", lineno)
        bits.append([int(ch) for ch in row])
    return BooleanMatrix(bits)


def serialize_matrix(matrix: BooleanMatrix) -> str:
    lines = [str(matrix.n)] + ["".join(str(x) for x in row) for row in matrix.bits]
    return "".join(line + "\n" for line in lines)


# ---------------------------------------------------------------------------
# grammars

def parse_grammar(text: str) -> Grammar:
    """`start <S>`, `terminals <t...>`, optional `nonterminals <N...>`,
    then productions `<LHS> -> <sym...>` with `eps` for the empty body."""
    start = None
    terminals: set[str] = set()
    nonterminals: set[str] = set()
    productions = []
    for lineno, line in _content_lines(text):
        parts = line.split()
        if parts[0] == "start":
            if len(parts) != 2:
                raise ParseError("expected `start <symbol>`", lineno)
            start = parts[1]
        elif parts[0] == "terminals":
            terminals.update(parts[1:])
        elif parts[0] == "nonterminals":
            nonterminals.update(parts[1:])
        elif len(parts) >= 2 and parts[1] == "->":
            rhs = tuple(sym for sym in parts[2:] if sym != "eps")
            productions.append((parts[0], rhs))
            nonterminals.add(parts[0])
        else:
            raise ParseError(f"unrecognized grammar line: {line!r}", lineno)
    if start is None:
        raise ParseError("grammar file missing `start` line")
    nonterminals.add(start)
    return Grammar(terminals, nonterminals, productions, start)


def serialize_grammar(grammar: Grammar) -> str:
    lines = [
        "start " + grammar.start,
        "terminals " + " ".join(sorted(grammar.terminals)),
        "nonterminals " + " ".join(sorted(grammar.nonterminals)),
    ]
    for lhs, rhs in grammar.productions:
        lines.append(f"{lhs} -> {' '.join(rhs) if rhs else 'eps'}")
    return "".join(line + "\n" for line in lines)


# ---------------------------------------------------------------------------
# solutions and maps

def serialize_solution(solution: PointsToSolution) -> str:
    lines = []
    for var in sorted(solution.pt, key=lambda v: v.name):
        members = ", ".join(sorted(w.name for w in solution.pt[var]))
        lines.append(f"pt({var}) = {{ {members} }}" if members else f"pt({var}) = {{ }}")
    return "".join(line + "\n" for line in lines)


def serialize_map(rmap: ReductionMap) -> str:
    """TSV provenance rows: `<source-entity>\\t<role>\\t<target-name>`."""
    lines = [f"meta\t{key}\t{rmap.meta[key]}" for key in sorted(rmap.meta)]
    for key in sorted(rmap.forward):
        for role, value in zip(rmap.roles, rmap.forward[key]):
            lines.append(f"{key}\t{role}\t{value}")
    return "".join(line + "\n" for line in lines)
