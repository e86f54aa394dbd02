from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mgtc.parser import parse_term
from mgtc.syntax import Abs, BinOp, Num, Sym, Var
from mgtc.values import eval_term, eval_tuple, format_values, holds, round_div


def vals(text):
    return eval_term(parse_term(text))


def nums(*ns):
    return frozenset(Num(n) for n in ns)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("7/2", nums(3)),
        ("0..2", nums(0, 1, 2)),
        ("2/0", frozenset()),
        ("2..0", frozenset()),
        ("2+c", frozenset()),
        ("-7/2", nums(-3)),
        ("(-7)\\2", nums(-1)),
        ("7\\(-2)", nums(1)),
        ("|0-5|", nums(5)),
        ("|c|", frozenset()),
        ("(0..1)*(2..3)", nums(0, 2, 3)),
        ("1..2+1", nums(1, 2, 3)),
        ("c", frozenset({Sym("c")})),
        ("5\\0", frozenset()),
    ],
)
def test_value_sets(text, expected):
    assert vals(text) == expected


def test_variables_are_not_ground():
    with pytest.raises(ValueError):
        eval_term(Var("X"))


def _trunc(i, j):
    return int(Fraction(i, j))  # int() truncates toward zero


def test_division_identity_exhaustive():
    failures = []
    for i in range(-25, 26):
        for j in range(-25, 26):
            if j == 0:
                if eval_term(BinOp("/", Num(i), Num(j))) or eval_term(BinOp("\\", Num(i), Num(j))):
                    failures.append((i, j))
                continue
            (q,) = eval_term(BinOp("/", Num(i), Num(j)))
            (r,) = eval_term(BinOp("\\", Num(i), Num(j)))
            if q.value != _trunc(i, j) or q.value * j + r.value != i or abs(r.value) >= abs(j):
                failures.append((i, j))
            if r.value != 0 and (r.value > 0) != (i > 0):
                failures.append((i, j))
    assert failures == []


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6).filter(bool))
def test_round_div_matches_fraction(i, j):
    assert round_div(i, j) == _trunc(i, j)


# -- monotonicity ---------------------------------------------------------------

leaves = st.one_of(st.integers(-4, 4).map(Num), st.sampled_from([Sym("a"), Sym("b")]))


def _terms(children):
    ops = st.sampled_from(["+", "-", "*", "/", "\\", ".."])
    return st.one_of(
        st.builds(Abs, children),
        st.builds(BinOp, ops, children, children),
    )


ground_terms = st.recursive(leaves, _terms, max_leaves=6)


def _replace_first_numeral(t, replacement):
    """Replace the leftmost numeral occurrence; returns (new term, replaced?)."""
    if isinstance(t, Num):
        return replacement(t), True
    if isinstance(t, Abs):
        a, done = _replace_first_numeral(t.arg, replacement)
        return Abs(a), done
    if isinstance(t, BinOp):
        left, done = _replace_first_numeral(t.left, replacement)
        if done:
            return BinOp(t.op, left, t.right), True
        right, done = _replace_first_numeral(t.right, replacement)
        return BinOp(t.op, t.left, right), done
    return t, False


@settings(max_examples=300)
@given(ground_terms, st.integers(0, 2))
def test_monotone_under_superset_replacement(t, width):
    widened, done = _replace_first_numeral(t, lambda n: BinOp("..", Num(n.value - width), Num(n.value + width)))
    assert eval_term(t) <= eval_term(widened)


@settings(max_examples=300)
@given(ground_terms)
def test_clipping_only_removes_values(t):
    inside = {Num(i) for i in range(-2, 3)} | {Sym("a")}
    clipped = eval_term(t, inside)
    assert clipped <= inside
    # operations are monotone, so shrinking intermediate sets shrinks the result
    assert clipped <= eval_term(t)


def test_eval_tuple_is_product():
    got = eval_tuple([parse_term("0..1"), parse_term("c")])
    assert got == {(Num(0), Sym("c")), (Num(1), Sym("c"))}
    assert eval_tuple([parse_term("1/0"), parse_term("c")]) == set()


def test_total_order():
    assert holds("<", Num(100), Sym("a"))
    assert holds("<", Sym("a"), Sym("b"))
    assert holds("<", Num(-3), Num(2))
    assert holds("!=", Num(1), Sym("a"))
    assert not holds(">=", Num(1), Sym("a"))


def test_format_values_sorted():
    assert format_values(vals("2..0")) == "{}"
    assert format_values({Sym("b"), Num(2), Sym("a"), Num(-1)}) == "{-1, 2, a, b}"
