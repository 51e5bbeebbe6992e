"""Shared domain types: programs, labeled graphs, matrices, grammars, maps.

Everything here is an immutable value object; the algorithms live in the
sibling modules (andersen, peg, cfl, reductions).
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Optional, Union


# ---------------------------------------------------------------------------
# errors


class AnalysisError(Exception):
    """Base class for all structured errors raised by this package."""


class ParseError(AnalysisError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnknownVariableError(AnalysisError):
    pass


class AlphabetMismatchError(AnalysisError):
    def __init__(self, labels: Iterable[str]):
        self.labels = tuple(sorted(labels))
        super().__init__(f"edge labels not in grammar terminals: {', '.join(self.labels)}")


class InvalidNodeError(AnalysisError):
    pass


class DimensionMismatchError(AnalysisError):
    pass


class BadEdgeLabelError(AnalysisError):
    pass


class SelfLoopError(AnalysisError):
    pass


class MalformedPegError(AnalysisError):
    pass


class InvalidParamsError(AnalysisError):
    pass


class GrammarError(AnalysisError):
    pass


# ---------------------------------------------------------------------------
# variables and statements

# letters/digits/underscore, then optional trailing apostrophes (primed names)
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*'*\Z")


def is_identifier(name: str) -> bool:
    return bool(_IDENT_RE.match(name))


@dataclass(frozen=True, order=True)
class Variable:
    """A program variable. Equal names denote the same variable."""

    name: str

    def __post_init__(self):
        if not is_identifier(self.name):
            raise ParseError(f"invalid identifier {self.name!r}")

    def __str__(self) -> str:
        return self.name


def as_variable(v: Union[Variable, str]) -> Variable:
    return v if isinstance(v, Variable) else Variable(v)


class StatementKind(enum.Enum):
    ADDRESS_OF = "address_of"   # a = &b
    ASSIGN = "assign"           # a = b
    ASSIGN_STAR = "assign_star" # a = *b
    STAR_ASSIGN = "star_assign" # *a = b


@dataclass(frozen=True)
class Statement:
    """One normalized pointer statement (single level of dereferencing)."""

    kind: StatementKind
    lhs: Variable
    rhs: Variable

    def __str__(self) -> str:
        k = self.kind
        if k is StatementKind.ADDRESS_OF:
            return f"{self.lhs} = &{self.rhs}"
        if k is StatementKind.ASSIGN:
            return f"{self.lhs} = {self.rhs}"
        if k is StatementKind.ASSIGN_STAR:
            return f"{self.lhs} = *{self.rhs}"
        return f"*{self.lhs} = {self.rhs}"


def address_of(a: Union[Variable, str], b: Union[Variable, str]) -> Statement:
    return Statement(StatementKind.ADDRESS_OF, as_variable(a), as_variable(b))


def assign(a: Union[Variable, str], b: Union[Variable, str]) -> Statement:
    return Statement(StatementKind.ASSIGN, as_variable(a), as_variable(b))


def assign_star(a: Union[Variable, str], b: Union[Variable, str]) -> Statement:
    return Statement(StatementKind.ASSIGN_STAR, as_variable(a), as_variable(b))


def star_assign(a: Union[Variable, str], b: Union[Variable, str]) -> Statement:
    return Statement(StatementKind.STAR_ASSIGN, as_variable(a), as_variable(b))


@dataclass(frozen=True)
class Program:
    """An ordered list of normalized statements.

    Semantics are set-based: duplicates in the list are permitted but must
    not change any analysis result. The variable universe is the set of
    variables referenced by the statements, in first-appearance order.
    """

    statements: tuple[Statement, ...]

    def __init__(self, statements: Iterable[Statement]):
        object.__setattr__(self, "statements", tuple(statements))

    @cached_property
    def variables(self) -> tuple[Variable, ...]:
        seen: dict[Variable, None] = {}
        for st in self.statements:
            seen.setdefault(st.lhs)
            seen.setdefault(st.rhs)
        return tuple(seen)

    @cached_property
    def statement_set(self) -> frozenset[Statement]:
        return frozenset(self.statements)

    def __len__(self) -> int:
        return len(self.statements)


@dataclass(frozen=True)
class PointsToSolution:
    """Map from each variable to the set of variable locations it may point to."""

    pt: Mapping[Variable, frozenset[Variable]]

    def query(self, p: Union[Variable, str], q: Union[Variable, str]) -> bool:
        """True iff loc(q) is in pt(p). Both must be in the solved universe."""
        p, q = as_variable(p), as_variable(q)
        if p not in self.pt:
            raise UnknownVariableError(f"unknown variable {p}")
        if q not in self.pt:
            raise UnknownVariableError(f"unknown variable {q}")
        return q in self.pt[p]


# ---------------------------------------------------------------------------
# labeled digraphs and matrices

Edge = tuple[int, str, int]


@dataclass(frozen=True)
class LabeledDigraph:
    """A digraph with terminal-labeled edges over a declared alphabet.

    Node ids are dense 0-based integers; names are optional metadata.
    """

    node_count: int
    alphabet: frozenset[str]
    edges: frozenset[Edge]
    node_names: Optional[tuple[str, ...]] = None

    def __init__(
        self,
        node_count: int,
        alphabet: Iterable[str],
        edges: Iterable[Edge],
        node_names: Optional[Iterable[str]] = None,
    ):
        object.__setattr__(self, "node_count", node_count)
        object.__setattr__(self, "alphabet", frozenset(alphabet))
        object.__setattr__(self, "edges", frozenset(edges))
        names = tuple(node_names) if node_names is not None else None
        object.__setattr__(self, "node_names", names)
        if node_count < 0:
            raise InvalidParamsError("node_count must be non-negative")
        for src, label, dst in self.edges:
            if not (0 <= src < node_count and 0 <= dst < node_count):
                raise InvalidNodeError(f"edge ({src}, {label}, {dst}) out of range")
            if label not in self.alphabet:
                raise BadEdgeLabelError(f"edge label {label!r} not in alphabet")
        if names is not None:
            if len(names) != node_count:
                raise InvalidParamsError("node_names length must equal node_count")
            if len(set(names)) != len(names):
                raise InvalidParamsError("node names must be unique")

    def name_of(self, node: int) -> str:
        if self.node_names is not None:
            return self.node_names[node]
        return str(node)

    def resolve(self, token: str) -> int:
        """Map a node name or integer token to a node id."""
        if self.node_names is not None and token in self.node_names:
            return self.node_names.index(token)
        try:
            node = int(token)
        except ValueError:
            raise InvalidNodeError(f"unknown node {token!r}") from None
        if not 0 <= node < self.node_count:
            raise InvalidNodeError(f"node {node} out of range")
        return node

    def degree_nonzero(self, node: int) -> bool:
        return any(src == node or dst == node for src, _, dst in self.edges)


DYCK_OPEN, DYCK_CLOSE = "[1", "]1"
DYCK_LABELS = frozenset({DYCK_OPEN, DYCK_CLOSE})


@dataclass(frozen=True)
class BooleanMatrix:
    """Square 0/1 matrix, stored as a tuple of row tuples."""

    n: int
    bits: tuple[tuple[int, ...], ...]

    def __init__(self, bits: Iterable[Iterable[int]]):
        rows = tuple(tuple(int(x) for x in row) for row in bits)
        object.__setattr__(self, "n", len(rows))
        object.__setattr__(self, "bits", rows)
        if self.n == 0:
            raise InvalidParamsError("matrix must be non-empty")
        for row in rows:
            if len(row) != self.n:
                raise DimensionMismatchError("matrix must be square")
            for x in row:
                if x not in (0, 1):
                    raise InvalidParamsError(f"matrix entries must be 0/1, got {x}")

    def nnz(self) -> int:
        return sum(sum(row) for row in self.bits)

    @staticmethod
    def zero(n: int) -> "BooleanMatrix":
        return BooleanMatrix([[0] * n for _ in range(n)])

    @staticmethod
    def identity(n: int) -> "BooleanMatrix":
        return BooleanMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])


# ---------------------------------------------------------------------------
# grammars

Production = tuple[str, tuple[str, ...]]


@dataclass(frozen=True)
class Grammar:
    """A context-free grammar; productions may have empty right-hand sides."""

    terminals: frozenset[str]
    nonterminals: frozenset[str]
    productions: tuple[Production, ...]
    start: str

    def __init__(
        self,
        terminals: Iterable[str],
        nonterminals: Iterable[str],
        productions: Iterable[tuple[str, Iterable[str]]],
        start: str,
    ):
        object.__setattr__(self, "terminals", frozenset(terminals))
        object.__setattr__(self, "nonterminals", frozenset(nonterminals))
        object.__setattr__(
            self, "productions", tuple((lhs, tuple(rhs)) for lhs, rhs in productions)
        )
        object.__setattr__(self, "start", start)
        overlap = self.terminals & self.nonterminals
        if overlap:
            raise GrammarError(f"symbols both terminal and nonterminal: {sorted(overlap)}")
        if self.start not in self.nonterminals:
            raise GrammarError(f"start symbol {self.start!r} is not a nonterminal")
        declared = self.terminals | self.nonterminals
        for lhs, rhs in self.productions:
            if lhs not in self.nonterminals:
                raise GrammarError(f"production lhs {lhs!r} is not a nonterminal")
            for sym in rhs:
                if sym not in declared:
                    raise GrammarError(f"undeclared symbol {sym!r} in production for {lhs}")


# ---------------------------------------------------------------------------
# statement-type profiles

class StatementProfile(enum.Enum):
    """Which statement kinds (besides the mandatory address-of) a reduced
    program may use. The node/edge gadget shapes follow from the kinds."""

    CASE1 = "case1"  # star-assign + assign-star + assign
    CASE2 = "case2"  # star-assign + assign
    CASE3 = "case3"  # star-assign + assign-star
    CASE4 = "case4"  # assign-star + assign
    CASE5 = "case5"  # star-assign
    CASE6 = "case6"  # assign-star

    @property
    def uses_assign(self) -> bool:
        return self in (StatementProfile.CASE1, StatementProfile.CASE2, StatementProfile.CASE4)

    @property
    def uses_assign_star(self) -> bool:
        return self in (
            StatementProfile.CASE1,
            StatementProfile.CASE3,
            StatementProfile.CASE4,
            StatementProfile.CASE6,
        )

    @property
    def uses_star_assign(self) -> bool:
        return self in (
            StatementProfile.CASE1,
            StatementProfile.CASE2,
            StatementProfile.CASE3,
            StatementProfile.CASE5,
        )

    @property
    def edges_via_star_assign(self) -> bool:
        """True if graph edges are encoded with star-assign gadgets; the
        remaining profiles encode them with assign-star/address-of pairs."""
        return self.uses_star_assign

    @property
    def temps_per_node(self) -> int:
        return {
            StatementProfile.CASE1: 3,
            StatementProfile.CASE2: 1,
            StatementProfile.CASE3: 2,
            StatementProfile.CASE4: 1,
            StatementProfile.CASE5: 0,
            StatementProfile.CASE6: 0,
        }[self]

    @property
    def temps_per_edge(self) -> int:
        return 1 if self.edges_via_star_assign else 0

    @property
    def allowed_kinds(self) -> frozenset[StatementKind]:
        kinds = {StatementKind.ADDRESS_OF}
        if self.uses_assign:
            kinds.add(StatementKind.ASSIGN)
        if self.uses_assign_star:
            kinds.add(StatementKind.ASSIGN_STAR)
        if self.uses_star_assign:
            kinds.add(StatementKind.STAR_ASSIGN)
        return frozenset(kinds)

    @staticmethod
    def from_name(name: str) -> "StatementProfile":
        try:
            return StatementProfile(name.lower())
        except ValueError:
            raise InvalidParamsError(f"unknown profile {name!r}") from None


# ---------------------------------------------------------------------------
# reduction provenance

@dataclass(frozen=True)
class ReductionMap:
    """Provenance from input-instance entities to output-instance entities.

    `forward` maps a source key (matrix index or node id) to a tuple of
    target entities; `roles` names the tuple slots; `meta` holds named
    distinguished entities such as the source/sink of an s-t instance.
    """

    roles: tuple[str, ...]
    forward: Mapping[int, tuple]
    meta: Mapping[str, object] = field(default_factory=dict)

    def entity(self, key: int, role: str):
        return self.forward[key][self.roles.index(role)]
