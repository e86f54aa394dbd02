from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mgtc.parser import ParseError, parse_input, parse_program, parse_rules, parse_term
from mgtc.printer import format_input, format_io_program, format_program, format_term
from mgtc.randgen import random_program
from mgtc.syntax import (
    Abs,
    Atom,
    BinOp,
    Comparison,
    Input,
    IoProgram,
    Literal,
    Num,
    Program,
    Rule,
    Sym,
    SyntaxValidationError,
    Var,
    apply_valuation,
    constants,
    io_program_to_json,
    predicate_symbols,
    public_projection,
    rule_variables,
    validate_input,
)


def test_precomputed_order():
    terms = [Sym("b"), Num(3), Sym("a"), Num(-1), Sym("B")]
    assert sorted(terms) == [Num(-1), Num(3), Sym("B"), Sym("a"), Sym("b")]


def test_ast_invariants():
    with pytest.raises(SyntaxValidationError):
        Literal(3, Atom("p"))
    with pytest.raises(SyntaxValidationError):
        Comparison(Num(1), "~", Num(2))
    with pytest.raises(SyntaxValidationError):
        BinOp("%", Num(1), Num(2))
    with pytest.raises(SyntaxValidationError):
        Rule(None, (), choice=True)
    with pytest.raises(SyntaxValidationError):
        Atom("P")


def test_rooms_declarations(rooms):
    assert rooms.placeholders == {"h"}
    assert rooms.inputs == {("person", 1), ("in0", 2), ("goto", 3)}
    assert rooms.outputs == {("in", 3)}
    assert rooms.private == {("in_building", 2)}
    assert len(rooms.program) == 6


def test_io_program_rejects_input_in_head():
    with pytest.raises(SyntaxValidationError):
        IoProgram(Program((Rule(Atom("p", (Num(1),))),)), inputs={("p", 1)})
    with pytest.raises(ParseError) as err:
        parse_program("#input p/1.\nq.\np(1) :- q.\n", "x.mg")
    assert err.value.span.line == 3 and err.value.span.col == 1


def test_io_program_rejects_placeholder_predicates():
    with pytest.raises(SyntaxValidationError):
        IoProgram(Program((Rule(Atom("h")),)), placeholders={"h"})


def test_input_validation(rooms):
    with pytest.raises(SyntaxValidationError):
        validate_input(rooms, Input({}, frozenset()))
    with pytest.raises(SyntaxValidationError):
        validate_input(rooms, Input({"h": Num(1)}, frozenset({Atom("in", (Sym("a"), Sym("b"), Num(0)))})))
    with pytest.raises(SyntaxValidationError):
        Input({"h": Sym("k"), "k": Num(1)})
    with pytest.raises(SyntaxValidationError):
        Input({"h": Num(1)}, frozenset({Atom("person", (Sym("h"),))}))
    with pytest.raises(ParseError):
        parse_input("#let h = 2. in(a,b,0).", rooms)
    with pytest.raises(ParseError):
        parse_input("#let k = 2.", rooms)
    validate_input(rooms, parse_input("#let h = -1. person(a).", rooms))


def test_rooms_input_file(rooms_input):
    assert rooms_input.valuation == {"h": Num(2)}
    assert len(rooms_input.atoms) == 6


def test_apply_valuation(rooms):
    prog = apply_valuation(rooms.program, {"h": Num(2)})
    assert Sym("h") not in constants(prog)
    assert Num(2) in constants(prog)
    # unlisted constants stay put
    assert apply_valuation(Atom("p", (Sym("a"),)), {"h": Num(2)}) == Atom("p", (Sym("a"),))


def test_rule_variables_and_symbols(rooms):
    rule = rooms.program.rules[2]
    assert rule_variables(rule) == ["P", "R", "T"]
    assert ("in_building", 2) in predicate_symbols(rooms.program)


def test_public_projection(rooms):
    atoms = {Atom("in", (Sym("a"), Sym("b"), Num(0))), Atom("in_building", (Sym("a"), Num(0)))}
    assert public_projection(atoms, rooms) == {Atom("in", (Sym("a"), Sym("b"), Num(0)))}


# -- parser ---------------------------------------------------------------------


def test_parse_rule_shapes():
    prog = parse_rules("{p(X)} :- q(X), not r, not not s(X+1), X != 2..3.\n:- p(1).\nt.")
    choice, constraint, fact = prog.rules
    assert choice.choice and choice.head == Atom("p", (Var("X"),))
    assert [e.neg for e in choice.body[:3]] == [0, 1, 2]
    assert isinstance(choice.body[3], Comparison)
    assert constraint.head is None
    assert fact.is_fact


def test_unary_minus():
    assert parse_term("-3") == Num(-3)
    assert parse_term("-X") == BinOp("-", Num(0), Var("X"))
    assert parse_term("2--3") == BinOp("-", Num(2), Num(-3))


def test_precedence():
    assert parse_term("1+2*3") == BinOp("+", Num(1), BinOp("*", Num(2), Num(3)))
    assert parse_term("1-2-3") == BinOp("-", BinOp("-", Num(1), Num(2)), Num(3))
    assert parse_term("1..2+3") == BinOp("..", Num(1), BinOp("+", Num(2), Num(3)))
    assert parse_term("|X-1|") == Abs(BinOp("-", Var("X"), Num(1)))


@pytest.mark.parametrize(
    "text, line, col",
    [
        ("p(X :- q.", 1, 5),
        ("p.\nq(1,) .", 2, 5),
        ("p :- 1.", 1, 7),
        ("p :- q, .", 1, 9),
        ("p :- q\n", 2, 1),
        ("#frob p/1.", 1, 1),
        ("p(@).", 1, 3),
    ],
)
def test_parse_error_spans(text, line, col):
    with pytest.raises(ParseError) as err:
        parse_program(text, "f.mg")
    assert (err.value.span.line, err.value.span.col) == (line, col)
    assert str(err.value).startswith(f"f.mg:{line}:{col}:")


def test_comments_and_whitespace():
    prog = parse_rules("% a comment\np(1). % trailing\n\n  q :- p(1).")
    assert len(prog) == 2


@given(st.integers(0, 10**6))
def test_program_round_trip(seed):
    prog = random_program(random.Random(seed))
    text = format_program(prog)
    assert parse_rules(text) == prog
    assert format_program(parse_rules(text)) == text


def test_io_program_round_trip(rooms):
    text = format_io_program(rooms)
    assert parse_program(text) == rooms


def test_input_round_trip(rooms, rooms_input):
    assert parse_input(format_input(rooms_input), rooms) == rooms_input


leaves = st.one_of(
    st.integers(-5, 5).map(Num), st.sampled_from([Sym("a"), Sym("c"), Var("X"), Var("Y")])
)
terms = st.recursive(
    leaves,
    lambda c: st.one_of(st.builds(Abs, c), st.builds(BinOp, st.sampled_from(["+", "-", "*", "/", "\\", ".."]), c, c)),
    max_leaves=8,
)


@given(terms)
def test_term_round_trip(t):
    assert parse_term(format_term(t)) == t


def test_program_json(pairs):
    data = io_program_to_json(pairs)
    assert data["outputs"] == [["q", 2]]
    q = data["rules"][-1]
    assert q["head"] == {"pred": "q", "args": [["var", "X"], ["var", "Y"]]}
    assert q["body"][0] == {"literal": {"neg": 0, "atom": {"pred": "p", "args": [["var", "X"]]}}}
