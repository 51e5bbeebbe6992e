import pytest

from palab.model import (
    BooleanMatrix,
    DimensionMismatchError,
    InvalidNodeError,
    InvalidParamsError,
    GrammarError,
    Grammar,
    LabeledDigraph,
    ParseError,
    Program,
    Statement,
    StatementKind,
    StatementProfile,
    Variable,
)
from palab.andersen import solve
from palab.textio import parse_program, serialize_program

import helpers


def test_variable_interning_by_value():
    assert Variable("a") == Variable("a")
    assert Variable("v'") == Variable("v'")
    assert Variable("a") != Variable("a'")
    assert len({Variable("x"), Variable("x"), Variable("y")}) == 2


@pytest.mark.parametrize("bad", ["", "1a", "a-b", "a'b", "*a", "&a"])
def test_variable_rejects_non_identifiers(bad):
    with pytest.raises(ParseError):
        Variable(bad)


def test_statement_surface_forms():
    a, b = Variable("a"), Variable("b")
    assert str(Statement(StatementKind.ADDRESS_OF, a, b)) == "a = &b"
    assert str(Statement(StatementKind.ASSIGN, a, b)) == "a = b"
    assert str(Statement(StatementKind.ASSIGN_STAR, a, b)) == "a = *b"
    assert str(Statement(StatementKind.STAR_ASSIGN, a, b)) == "*a = b"


def test_program_variables_first_appearance_order():
    prog = parse_program("a = &b\nb = &d\nc = *a")
    assert [v.name for v in prog.variables] == ["a", "b", "d", "c"]


def test_program_round_trips_through_text():
    prog = parse_program(helpers.EXAMPLE_PROGRAM_TEXT)
    assert parse_program(serialize_program(prog)) == prog


def test_duplicate_statement_changes_no_analysis_result():
    prog = parse_program(helpers.EXAMPLE_PROGRAM_TEXT)
    doubled = Program(prog.statements + (prog.statements[0],))
    assert solve(prog) == solve(doubled)


def test_labeled_digraph_validation():
    with pytest.raises(InvalidNodeError):
        LabeledDigraph(2, {"e"}, {(0, "e", 2)})
    with pytest.raises(InvalidParamsError):
        LabeledDigraph(2, {"e"}, set(), ("a",))
    with pytest.raises(InvalidParamsError):
        LabeledDigraph(2, {"e"}, set(), ("a", "a"))
    g = LabeledDigraph(2, {"e"}, {(0, "e", 1)}, ("p", "q"))
    assert g.resolve("q") == 1 and g.resolve("0") == 0
    with pytest.raises(InvalidNodeError):
        g.resolve("nope")


def test_boolean_matrix_validation():
    with pytest.raises(DimensionMismatchError):
        BooleanMatrix([[0, 1], [0]])
    with pytest.raises(InvalidParamsError):
        BooleanMatrix([[2]])
    assert BooleanMatrix.identity(3).nnz() == 3
    assert BooleanMatrix.zero(2).nnz() == 0


def test_grammar_validation():
    with pytest.raises(GrammarError):
        Grammar({"a"}, {"a", "S"}, [], "S")  # symbol in both
    with pytest.raises(GrammarError):
        Grammar({"a"}, {"S"}, [], "T")  # start undeclared
    with pytest.raises(GrammarError):
        Grammar({"a"}, {"S"}, [("S", ("b",))], "S")  # undeclared rhs


def test_profiles_cover_the_statement_kind_lattice():
    allowed = {p: p.allowed_kinds for p in StatementProfile}
    assert all(StatementKind.ADDRESS_OF in kinds for kinds in allowed.values())
    assert allowed[StatementProfile.CASE1] == frozenset(StatementKind)
    assert StatementKind.ASSIGN_STAR not in allowed[StatementProfile.CASE2]
    assert StatementKind.ASSIGN not in allowed[StatementProfile.CASE3]
    assert StatementKind.STAR_ASSIGN not in allowed[StatementProfile.CASE4]
    assert allowed[StatementProfile.CASE5] == frozenset(
        {StatementKind.ADDRESS_OF, StatementKind.STAR_ASSIGN}
    )
    assert allowed[StatementProfile.CASE6] == frozenset(
        {StatementKind.ADDRESS_OF, StatementKind.ASSIGN_STAR}
    )
    assert StatementProfile.from_name("CASE3") is StatementProfile.CASE3
    with pytest.raises(InvalidParamsError):
        StatementProfile.from_name("case9")
