"""Generic CFL/Dyck reachability over labeled digraphs.

`all_pairs` saturates summary edges with the classic worklist closure over a
binarized grammar; `st_query` runs the same engine with an early exit. The
built-in grammars (Dyck-1, generalized Dyck, and the two points-to-analysis
reachability grammars over PEG labels) live here too, together with a
terminal Follow-set analysis and an Earley membership check used as an
independent oracle by the test harness.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .model import (
    AlphabetMismatchError,
    Grammar,
    InvalidNodeError,
    InvalidParamsError,
    LabeledDigraph,
)
from .peg import PEG_ALPHABET

# ---------------------------------------------------------------------------
# built-in grammars

PT_START = "Pt"
PT_PRIME_START = "Pt'"
_S, _SBAR = "S", "-S"


def dyck_grammar(k: int) -> Grammar:
    """Properly matched parentheses of k kinds; start symbol D<k>."""
    if k < 1:
        raise InvalidParamsError(f"dyck grammar needs k >= 1, got {k}")
    terminals = [f"[{i}" for i in range(1, k + 1)] + [f"]{i}" for i in range(1, k + 1)]
    start = f"D{k}"
    productions = [(start, (_S,))]
    productions += [(_S, (f"[{i}", _S, f"]{i}")) for i in range(1, k + 1)]
    productions += [(_S, (_S, _S)), (_S, ())]
    return Grammar(terminals, {start, _S}, productions, start)


def _pt_grammar() -> Grammar:
    # Summary reading: an S edge is a points-to subset constraint, a Pt edge
    # is a points-to fact, and -S mirrors S along reversed paths.
    productions = [
        (PT_START, (_S, "r")),
        (PT_START, ("r",)),
        (_S, ("as", "-d", _S, "r", "d")),
        (_S, ("-d", "-r", _SBAR, "d", "sa")),
        (_SBAR, ("-d", "-r", _SBAR, "d", "-as")),
        (_SBAR, ("-sa", "-d", _S, "r", "d")),
        (_S, (_S, _S)),
        (_SBAR, (_SBAR, _SBAR)),
        (_S, ("s",)),
        (_S, ()),
        (_SBAR, ("-s",)),
        (_SBAR, ()),
    ]
    return Grammar(PEG_ALPHABET, {PT_START, _S, _SBAR}, productions, PT_START)


def _pt_prime_grammar() -> Grammar:
    # The subset-only fragment that survives on reduction-built PEGs.
    productions = [
        (PT_PRIME_START, (_S,)),
        (_S, ("-d", "-r", _SBAR, "d", "sa")),
        (_SBAR, ("-sa", "-d", _S, "r", "d")),
        (_S, (_S, _S)),
        (_SBAR, (_SBAR, _SBAR)),
        (_S, ()),
        (_SBAR, ()),
    ]
    return Grammar(PEG_ALPHABET, {PT_PRIME_START, _S, _SBAR}, productions, PT_PRIME_START)


def builtin_grammar(name: str) -> Grammar:
    """Look up a built-in grammar: d1, dyck:<k>, pt, or pt_prime."""
    key = name.replace("-", "_").lower()
    if key == "d1":
        return dyck_grammar(1)
    if key.startswith("dyck:"):
        try:
            k = int(key.split(":", 1)[1])
        except ValueError:
            raise InvalidParamsError(f"bad dyck grammar name {name!r}") from None
        return dyck_grammar(k)
    if key == "pt":
        return _pt_grammar()
    if key == "pt_prime":
        return _pt_prime_grammar()
    raise InvalidParamsError(f"unknown builtin grammar {name!r}")


# ---------------------------------------------------------------------------
# normalization

def _nullable_closure(productions: Sequence[tuple[str, tuple[str, ...]]]) -> set[str]:
    nullable: set[str] = set()
    changed = True
    while changed:
        changed = False
        for lhs, rhs in productions:
            if lhs not in nullable and all(sym in nullable for sym in rhs):
                nullable.add(lhs)
                changed = True
    return nullable


@dataclass(frozen=True)
class NormalizedGrammar:
    """Binarized view of a grammar for the saturation engine.

    `binary_productions` have right-hand sides of length 1 or 2 with no
    epsilon; nullability is carried separately and compensated by extra
    unit rules, so the start-symbol reachability is unchanged.
    """

    original: Grammar
    binary_productions: tuple[tuple[str, tuple[str, ...]], ...]
    nullable: frozenset[str]
    helper_map: dict[str, tuple[str, tuple[str, ...]]]

    @property
    def helpers(self) -> frozenset[str]:
        return frozenset(self.helper_map)


def normalize(grammar: Grammar, assoc: str = "right") -> NormalizedGrammar:
    """Split long productions with fresh helpers and pre-compute nullability.

    `assoc` picks the helper chaining direction; either yields the same
    summaries once helpers are projected out.
    """
    if assoc not in ("right", "left"):
        raise InvalidParamsError(f"unknown binarization order {assoc!r}")
    nullable = _nullable_closure(grammar.productions)

    helper_map: dict[str, tuple[str, tuple[str, ...]]] = {}
    rules: list[tuple[str, tuple[str, ...]]] = []
    counter = 0

    def fresh(origin: tuple[str, tuple[str, ...]]) -> str:
        nonlocal counter
        counter += 1
        sym = f"@{counter}"
        helper_map[sym] = origin
        return sym

    helper_nullable: set[str] = set()
    for lhs, rhs in grammar.productions:
        if len(rhs) == 0:
            continue  # carried by `nullable`
        if len(rhs) <= 2:
            rules.append((lhs, rhs))
            continue
        origin = (lhs, rhs)
        if assoc == "right":
            # lhs -> s0 H1, H1 -> s1 H2, ..., H_{k-2} -> s_{k-2} s_{k-1}
            chain = [fresh(origin) for _ in range(len(rhs) - 2)]
            heads = [lhs] + chain
            tails = chain + [rhs[-1]]
            for i, head in enumerate(heads):
                rules.append((head, (rhs[i], tails[i])))
            # a helper spans a suffix; it derives epsilon iff the suffix does
            for i in range(len(chain), 0, -1):
                suffix = rhs[i:]
                if all(s in nullable for s in suffix):
                    helper_nullable.add(chain[i - 1])
        else:
            # lhs -> H1 s_{k-1}, H1 -> H2 s_{k-2}, ..., H_{k-2} -> s0 s1
            chain = [fresh(origin) for _ in range(len(rhs) - 2)]
            current = lhs
            remaining = list(rhs)
            idx = 0
            while len(remaining) > 2:
                helper = chain[idx]
                rules.append((current, (helper, remaining[-1])))
                remaining.pop()
                current = helper
                idx += 1
            rules.append((current, tuple(remaining)))
            # a helper spans a prefix; it derives epsilon iff the prefix does
            for i, helper in enumerate(chain):
                prefix = rhs[: len(rhs) - 1 - i]
                if all(s in nullable for s in prefix):
                    helper_nullable.add(helper)

    all_nullable = set(nullable) | helper_nullable
    # nullable-aware compensation for binary rules
    extra: list[tuple[str, tuple[str, ...]]] = []
    for lhs, rhs in rules:
        if len(rhs) == 2:
            x, y = rhs
            if x in all_nullable:
                extra.append((lhs, (y,)))
            if y in all_nullable:
                extra.append((lhs, (x,)))
    seen: set = set()
    deduped = []
    for rule in rules + extra:
        if rule not in seen and rule[1] != (rule[0],):  # drop X -> X self loops
            seen.add(rule)
            deduped.append(rule)

    return NormalizedGrammar(
        original=grammar,
        binary_productions=tuple(deduped),
        nullable=frozenset(n for n in nullable if n in grammar.nonterminals),
        helper_map=helper_map,
    )


# ---------------------------------------------------------------------------
# saturation

@dataclass(frozen=True)
class SummarySet:
    """All derived (source, symbol, target) summary edges of a saturation."""

    summaries: frozenset[tuple[int, str, int]]

    def holds(self, src: int, symbol: str, dst: int) -> bool:
        return (src, symbol, dst) in self.summaries

    def pairs(self, symbol: str) -> frozenset[tuple[int, int]]:
        return frozenset((u, v) for u, sym, v in self.summaries if sym == symbol)


def _check_alphabet(graph: LabeledDigraph, grammar: Grammar):
    offending = graph.alphabet - grammar.terminals
    if offending:
        raise AlphabetMismatchError(offending)


def _saturate(
    graph: LabeledDigraph,
    norm: NormalizedGrammar,
    target: Optional[tuple[int, str, int]] = None,
):
    """Worklist closure; returns (summaries, symbol table, hit). With a
    target the scan stops as soon as that summary is derived; without one
    it always runs to the fixpoint."""
    symbols: dict[str, int] = {}

    def code(sym: str) -> int:
        got = symbols.get(sym)
        if got is None:
            got = symbols[sym] = len(symbols)
        return got

    unit_by: dict[int, list[int]] = {}
    left_pairs: dict[int, list[tuple[int, int]]] = {}   # on X: rules L -> X Y
    right_pairs: dict[int, list[tuple[int, int]]] = {}  # on Y: rules L -> X Y
    for lhs, rhs in norm.binary_productions:
        lhs_c = code(lhs)
        if len(rhs) == 1:
            unit_by.setdefault(code(rhs[0]), []).append(lhs_c)
        else:
            x, y = code(rhs[0]), code(rhs[1])
            left_pairs.setdefault(x, []).append((y, lhs_c))
            right_pairs.setdefault(y, []).append((x, lhs_c))

    seen: set[tuple[int, int, int]] = set()
    work: deque[tuple[int, int, int]] = deque()
    hit = False
    target_c = None
    if target is not None:
        target_c = (target[0], code(target[1]), target[2])

    def add(u: int, sym_c: int, v: int) -> bool:
        nonlocal hit
        triple = (u, sym_c, v)
        if triple in seen:
            return False
        seen.add(triple)
        work.append(triple)
        if triple == target_c:
            hit = True
        return hit

    for src, label, dst in sorted(graph.edges):
        if add(src, code(label), dst) and target is not None:
            return seen, symbols, True
    for sym in sorted(norm.nullable):
        sym_c = code(sym)
        for v in range(graph.node_count):
            if add(v, sym_c, v) and target is not None:
                return seen, symbols, True

    # adjacency indexed at pop time: every ordered join is formed exactly
    # once, when its later constituent is popped
    out_by: dict[tuple[int, int], list[int]] = {}
    in_by: dict[tuple[int, int], list[int]] = {}
    while work:
        u, x, v = work.popleft()
        out_by.setdefault((x, u), []).append(v)
        in_by.setdefault((x, v), []).append(u)
        for lhs in unit_by.get(x, ()):
            if add(u, lhs, v) and target is not None:
                return seen, symbols, True
        for y, lhs in left_pairs.get(x, ()):
            for w in out_by.get((y, v), ()):
                if add(u, lhs, w) and target is not None:
                    return seen, symbols, True
        for y, lhs in right_pairs.get(x, ()):
            for w in in_by.get((y, u), ()):
                if add(w, lhs, v) and target is not None:
                    return seen, symbols, True
    return seen, symbols, hit


def all_pairs(graph: LabeledDigraph, grammar: Grammar) -> SummarySet:
    """Every summary (u, X, v) over the grammar's own symbols; nullable
    symbols contribute (v, X, v) for every node."""
    _check_alphabet(graph, grammar)
    norm = normalize(grammar)
    seen, symbols, _ = _saturate(graph, norm)
    names = {c: sym for sym, c in symbols.items()}
    keep = grammar.terminals | grammar.nonterminals
    return SummarySet(
        frozenset(
            (u, names[x], v) for u, x, v in seen if names[x] in keep
        )
    )


def st_query(graph: LabeledDigraph, grammar: Grammar, s: int, t: int) -> bool:
    """True iff t is start-symbol-reachable from s; stops as soon as the
    target summary appears."""
    for node in (s, t):
        if not 0 <= node < graph.node_count:
            raise InvalidNodeError(f"node {node} out of range")
    _check_alphabet(graph, grammar)
    norm = normalize(grammar)
    if s == t and grammar.start in norm.nullable:
        return True
    _, _, hit = _saturate(graph, norm, target=(s, grammar.start, t))
    return hit


# ---------------------------------------------------------------------------
# terminal Follow sets

def _first_sets(grammar: Grammar, nullable: set[str]) -> dict[str, set[str]]:
    first: dict[str, set[str]] = {t: {t} for t in grammar.terminals}
    for nt in grammar.nonterminals:
        first[nt] = set()
    changed = True
    while changed:
        changed = False
        for lhs, rhs in grammar.productions:
            acc = first[lhs]
            before = len(acc)
            for sym in rhs:
                acc |= first[sym]
                if sym not in nullable:
                    break
            if len(acc) != before:
                changed = True
    return first


def follow_sets(grammar: Grammar) -> dict[str, frozenset[str]]:
    """Follow(t) for each terminal t: the terminals that can appear
    immediately to the right of t in a sentential form derivable from any
    nonterminal of the grammar."""
    nullable = _nullable_closure(grammar.productions)
    first = _first_sets(grammar, nullable)

    # Follow over nonterminals without end markers, every nonterminal a root.
    follow_nt: dict[str, set[str]] = {nt: set() for nt in grammar.nonterminals}
    changed = True
    while changed:
        changed = False
        for lhs, rhs in grammar.productions:
            for i, sym in enumerate(rhs):
                if sym not in grammar.nonterminals:
                    continue
                acc = follow_nt[sym]
                before = len(acc)
                tail_nullable = True
                for nxt in rhs[i + 1 :]:
                    acc |= first[nxt]
                    if nxt not in nullable:
                        tail_nullable = False
                        break
                if tail_nullable:
                    acc |= follow_nt[lhs]
                if len(acc) != before:
                    changed = True

    result: dict[str, set[str]] = {t: set() for t in grammar.terminals}
    for lhs, rhs in grammar.productions:
        for i, sym in enumerate(rhs):
            if sym not in grammar.terminals:
                continue
            acc = result[sym]
            tail_nullable = True
            for nxt in rhs[i + 1 :]:
                acc |= first[nxt]
                if nxt not in nullable:
                    tail_nullable = False
                    break
            if tail_nullable:
                acc |= follow_nt[lhs]
    return {t: frozenset(ws) for t, ws in result.items()}


# ---------------------------------------------------------------------------
# membership oracle (independent of the saturation path)

def derives(grammar: Grammar, symbol: str, word: Sequence[str]) -> bool:
    """Earley chart check: does `symbol` derive the given terminal string?

    Works directly on the declared productions, so it shares no code with
    the normalization/saturation pipeline.
    """
    if symbol in grammar.terminals:
        return len(word) == 1 and word[0] == symbol
    if symbol not in grammar.nonterminals:
        raise InvalidParamsError(f"unknown symbol {symbol!r}")
    for tok in word:
        if tok not in grammar.terminals:
            return False

    nullable = _nullable_closure(grammar.productions)
    prods = list(grammar.productions)
    by_lhs: dict[str, list[int]] = {}
    for idx, (lhs, _) in enumerate(prods):
        by_lhs.setdefault(lhs, []).append(idx)
    if symbol not in by_lhs:
        return False

    n = len(word)
    # chart[k]: set of (prod_index, dot, origin)
    chart: list[set[tuple[int, int, int]]] = [set() for _ in range(n + 1)]
    for idx in by_lhs[symbol]:
        chart[0].add((idx, 0, 0))

    for k in range(n + 1):
        queue = deque(chart[k])

        def put(item: tuple[int, int, int]):
            if item not in chart[k]:
                chart[k].add(item)
                queue.append(item)

        while queue:
            idx, dot, origin = queue.popleft()
            lhs, rhs = prods[idx]
            if dot == len(rhs):
                # complete: advance every item waiting on lhs at `origin`;
                # same-position completions are covered by the nullable
                # pre-advance below
                for pidx, pdot, porigin in list(chart[origin]):
                    prhs = prods[pidx][1]
                    if pdot < len(prhs) and prhs[pdot] == lhs:
                        put((pidx, pdot + 1, porigin))
                continue
            nxt = rhs[dot]
            if nxt in grammar.terminals:
                if k < n and word[k] == nxt:
                    chart[k + 1].add((idx, dot + 1, origin))
            else:
                for nidx in by_lhs.get(nxt, ()):
                    put((nidx, 0, k))
                if nxt in nullable:
                    put((idx, dot + 1, origin))

    for idx, dot, origin in chart[n]:
        lhs, rhs = prods[idx]
        if lhs == symbol and origin == 0 and dot == len(rhs):
            return True
    return False
