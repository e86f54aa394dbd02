from __future__ import annotations

import json
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mgtc import fol
from mgtc.check import (
    Domain,
    Report,
    StandardInterp,
    check_equivalence,
    fo_sat,
    io_models,
    naive_fo_sat,
    so_sat,
    verify_main_lemma,
    verify_theorem1,
    verify_theorem2,
)
from mgtc.ground import Universe
from mgtc.parser import parse_input, parse_program, parse_rules, parse_theory
from mgtc.stable import EnumerationLimitError, sat
from mgtc.syntax import Atom, Input, Num, Sym

SCHEMAS = Path(__file__).resolve().parents[1] / "docs" / "schemas"

U = Universe(frozenset({"a", "b"}), 0, 2)
X, Y = fol.ObjVar("X"), fol.ObjVar("Y")
N = fol.ObjVar("N", fol.INTEGER)
VARS = [X, Y, N]
CONSTS = [fol.ObjConst(Num(1)), fol.ObjConst(Sym("a")), fol.ObjConst(Sym("h"))]


def _term():
    general = st.sampled_from([X, Y] + CONSTS)
    integer = st.one_of(
        st.just(N),
        st.builds(fol.ArithTerm, st.sampled_from(["+", "-", "*"]), st.just(N), st.sampled_from([N, CONSTS[0]])),
    )
    return st.one_of(general, integer)


_leaf = st.one_of(
    st.builds(lambda t: fol.PredAtom("p", (t,)), _term()),
    st.builds(lambda s, t: fol.PredAtom("q", (s, t)), _term(), _term()),
    st.builds(fol.Compare, _term(), st.sampled_from(["=", "!=", "<", "<="]), _term()),
    st.just(fol.BOTTOM),
)

_open = st.recursive(
    _leaf,
    lambda c: st.one_of(
        st.builds(lambda f, g: fol.And((f, g)), c, c),
        st.builds(lambda f, g: fol.Or((f, g)), c, c),
        st.builds(fol.Implies, c, c),
        st.builds(lambda v, f: fol.Exists((v,), f), st.sampled_from(VARS), c),
        st.builds(lambda v, f: fol.Forall((v,), f), st.sampled_from(VARS), c),
    ),
    max_leaves=6,
)


@st.composite
def sentences(draw):
    f = draw(_open)
    for v in fol.free_vars(f):
        f = (fol.Forall if draw(st.booleans()) else fol.Exists)((v,), f)
    return f


ATOMS = [Atom("p", (t,)) for t in U.terms()] + [
    Atom("q", (s, t)) for s in (Num(0), Num(1), Sym("a")) for t in (Num(1), Sym("b"))
]
interps = st.frozensets(st.sampled_from(ATOMS))


@settings(max_examples=300, deadline=None)
@given(sentences(), interps, st.sampled_from([Num(1), Sym("b")]))
def test_fo_sat_agrees_with_naive_and_propositional(f, j, hval):
    f = fol.substitute_constants(f, {"h": hval})
    expected = naive_fo_sat(StandardInterp(j), f, U)
    assert fo_sat(StandardInterp(j), f, U) == expected
    assert sat(j, fol.fprop(f, U)) == expected


@settings(max_examples=200, deadline=None)
@given(sentences(), interps, st.sampled_from([Num(1), Num(2), Sym("b")]))
def test_valuation_kernel(f, j, hval):
    # truth under J^v equals truth of the valuated sentence under J↑
    v = {"h": hval}
    assert fo_sat(StandardInterp(j, v), f, U) == fo_sat(StandardInterp(j), fol.substitute_constants(f, v), U)


@given(interps)
def test_up_then_down(j):
    symbols = {("p", 1), ("q", 2)}
    assert StandardInterp(j).down(symbols, U) == j


def test_fo_sat_rejects_open_formulas():
    with pytest.raises(ValueError):
        fo_sat(StandardInterp(), fol.PredAtom("p", (X,)), U)


# -- second order ------------------------------------------------------------------


def test_so_sat_pairs(pairs):
    comp = fol.complete_io(pairs)
    q = {Atom("q", (Sym(s), Sym(t))) for s in "ab" for t in "ab"}
    u = Universe(frozenset({"a", "b"}), 0, 1)
    res = so_sat(StandardInterp(q), comp, u)
    assert res.sat and res.witness == {"P": frozenset({(Sym("a"),), (Sym("b"),)})}
    assert not so_sat(StandardInterp(q - {Atom("q", (Sym("a"), Sym("b")))}), comp, u).sat
    w = so_sat(StandardInterp(q), comp, u, mode="witness", witness={"P": [(Sym("a"),), (Sym("b"),)]})
    assert w.sat
    assert not so_sat(StandardInterp(q), comp, u, mode="witness", witness={"P": [(Sym("a"),)]}).sat


def test_so_sat_enumeration_limit():
    matrix = fol.Forall((X,), fol.Implies(fol.PredAtom("P", (X,), variable=True), fol.PredAtom("p", (X,))))
    s = fol.SoSentence((("P", 1),), matrix)
    u = Universe(frozenset(), 0, 20)
    with pytest.raises(EnumerationLimitError):
        so_sat(StandardInterp(), s, u)
    assert so_sat(StandardInterp(), s, Universe(frozenset(), 0, 2)).sat


# -- reports --------------------------------------------------------------------------


def test_negative_report_needs_witness():
    with pytest.raises(ValueError):
        Report("theorem1", "refuted", False, {}, {}, U)


def test_exit_codes():
    assert Report("x", "holds", True, {}, {}, U).exit_code == 0
    assert Report("x", "refuted", False, {}, {"w": 1}, U).exit_code == 1
    assert Report("x", "inapplicable", False, {}, {}, U, inapplicable=True).exit_code == 2


def test_report_schema(pairs):
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads((SCHEMAS / "report.schema.json").read_text())
    r = verify_theorem1(pairs.program, Universe(frozenset({"a", "b"}), 0, 0))
    jsonschema.validate(r.to_json(), schema)
    jsonschema.validate(r.to_json(timings=True), schema)
    assert "timings" not in r.to_json()


# -- theorem instances ------------------------------------------------------------------


def test_theorem1_small():
    prog = parse_rules("{p(1..2)}.\nq(X+1) :- p(X), not r.\nr :- q(3).")
    r = verify_theorem1(prog, Universe(frozenset(), 0, 3))
    assert r.ok and r.verdict == "holds"
    # choosing p(2) makes q(3) and r defeat each other
    assert r.conditions["stable_via_tau"] == [[], ["p(1)", "q(2)"]]


def test_theorem2_small():
    io = parse_program("#input e/1.\n#output p/1.\np(X) :- e(X), not q(X).\nq(1).\n")
    inp = parse_input("e(0). e(1).", io)
    u = Universe(frozenset(), 0, 1)
    (model,) = io_models(io, inp, u)
    assert model == {Atom("e", (Num(0),)), Atom("e", (Num(1),)), Atom("p", (Num(0),))}
    r = verify_theorem2(io, inp, model, u)
    assert r.verdict == "holds" and r.conditions["a_io_model"]
    r = verify_theorem2(io, inp, model | {Atom("p", (Num(1),))}, u)
    assert r.verdict == "holds" and not r.conditions["a_io_model"] and not r.conditions["b_comp_valuated"]


def test_theorem2_inapplicable():
    io = parse_program("#input e/1.\n#output p/1.\np(X) :- p(X), e(X).\n")
    inp = parse_input("e(0).", io)
    r = verify_theorem2(io, inp, inp.atoms, Universe(frozenset(), 0, 0))
    assert r.verdict == "inapplicable" and r.exit_code == 2


def test_theorem2_rejects_private_atoms(rooms, rooms_input):
    with pytest.raises(ValueError):
        verify_theorem2(rooms, rooms_input, {Atom("in_building", (Sym("alice"), Num(0)))})


def test_main_lemma_with_extensional_atoms():
    theory = parse_theory("forall V (e(V) -> p(V)). forall V (p(V) and V = 1 -> q(V)).")
    gamma = fol.CompletableSet(tuple(theory), {("p", 1), ("q", 1)})
    u = Universe(frozenset(), 0, 1)
    ext = {Atom("e", (Num(1),))}
    good = {Atom("p", (Num(1),)), Atom("q", (Num(1),))}
    r = verify_main_lemma(gamma, good, u, extensional_atoms=ext)
    assert r.verdict == "holds" and r.conditions["stable"] and r.conditions["satisfies_completion"]
    r = verify_main_lemma(gamma, {Atom("p", (Num(0),))}, u, extensional_atoms=ext)
    assert r.verdict == "holds" and not r.conditions["stable"] and not r.conditions["satisfies_completion"]


# -- equivalence -----------------------------------------------------------------------


A = "#input e/1.\n#output p/1.\np(X) :- e(X).\n"
B = "#input e/1.\n#output p/1.\np(X) :- e(X), X != 2.\n"


def test_equivalence_under_assumption():
    io1, io2 = parse_program(A), parse_program(B)
    dom = Domain.from_json({"base": ["e(1)", "e(2)"]}, io1)
    assert dom.size() == 4
    r = check_equivalence(io1, io2, fol.TOP, dom)
    assert r.verdict == "not-equivalent"
    assert r.witnesses["counterexample"]["input"]["atoms"] == ["e(2)"]
    assumption = parse_theory("not e(2)")
    r = check_equivalence(io1, io2, assumption, dom)
    assert r.verdict == "equivalent-on-domain" and r.exit_code == 0
    assert r.conditions["inputs_checked"] == 2


def test_equivalence_guardrails():
    io1, io2 = parse_program(A), parse_program(B)
    other = parse_program("#input e/1.\n#output r/1.\nr(X) :- e(X).\n")
    dom = Domain.from_json({"base": ["e(1)", "e(2)"]}, io1)
    with pytest.raises(ValueError):
        check_equivalence(io1, other, fol.TOP, dom)
    with pytest.raises(ValueError):
        check_equivalence(io1, io2, parse_theory("exists X p(X)"), dom)
    with pytest.raises(EnumerationLimitError):
        check_equivalence(io1, io2, fol.TOP, dom, max_inputs=3)


def test_domain_from_json_with_valuations(rooms):
    dom = Domain.from_json({"valuations": [{"h": 0}, {"h": "c"}], "base": ["person(c)"]}, rooms)
    inputs = list(dom.inputs())
    assert len(inputs) == 4
    assert inputs[0] == Input({"h": Num(0)}, frozenset())
    assert inputs[-1].valuation == {"h": Sym("c")}
