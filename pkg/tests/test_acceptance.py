"""Acceptance criteria 1 to 9, each with its runtime budget.

Every criterion prints one `PASS`/`FAIL` line; the lines are also repeated in
the terminal summary (see conftest.py).
"""

from __future__ import annotations

import contextlib
import dataclasses
import itertools
import json
import time
from fractions import Fraction

import pytest

from conftest import read
from mgtc import fol
from mgtc.check import (
    Domain,
    StandardInterp,
    check_equivalence,
    io_models,
    io_universe,
    so_sat,
    stable_models_for_input,
    verify_main_lemma,
    verify_theorem2,
)
from mgtc.graphs import LocallyTight, atom_graph, find_cycle, gsp_graph, is_locally_tight, is_tight, pred_graph
from mgtc.ground import Universe
from mgtc.parser import parse_formula, parse_input, parse_program, parse_term, parse_theory
from mgtc.suites import main_lemma_suite, proposition1_suite, tau_star_rule_suite, theorem1_suite
from mgtc.syntax import Atom, BinOp, Input, Num, Program, Sym
from mgtc.values import eval_term

RESULTS: list = []


@contextlib.contextmanager
def criterion(label: str, budget: float):
    t0 = time.perf_counter()
    status = "FAIL"
    try:
        yield
        elapsed = time.perf_counter() - t0
        status = "PASS" if elapsed < budget else "FAIL"
        assert elapsed < budget, f"{label}: {elapsed:.1f} s exceeds the {budget:g} s budget"
    finally:
        elapsed = time.perf_counter() - t0
        line = f"{status} criterion {label} ({elapsed:.2f} s, budget {budget:g} s)"
        RESULTS.append(line)
        print(line)


def A(name, *args):
    return Atom(name, tuple(Num(x) if isinstance(x, int) else Sym(x) for x in args))


@pytest.fixture(scope="module")
def running_example():
    io = parse_program(read("rooms.mg"), "rooms.mg")
    inp = parse_input(read("rooms.in"), io, "rooms.in")
    return io, inp, io_universe(io, inp)


OUT = {
    A("in", "alice", "hall", 0),
    A("in", "bob", "hall", 0),
    A("in", "alice", "classroom", 1),
    A("in", "bob", "hall", 1),
    A("in", "alice", "classroom", 2),
    A("in", "bob", "classroom", 2),
}


def test_criterion_1_term_semantics():
    with criterion("1 term semantics", 1):
        shown = {"7/2": {Num(3)}, "0..2": {Num(0), Num(1), Num(2)}, "2/0": set(), "2..0": set(), "2+c": set()}
        for text, expected in shown.items():
            assert eval_term(parse_term(text)) == expected, text
        failures = []
        for i, j in itertools.product(range(-25, 26), repeat=2):
            q = eval_term(BinOp("/", Num(i), Num(j)))
            r = eval_term(BinOp("\\", Num(i), Num(j)))
            if j == 0:
                if q or r:
                    failures.append((i, j))
                continue
            (q,), (r,) = q, r
            if q.value != int(Fraction(i, j)) or q.value * j + r.value != i:
                failures.append((i, j))
        assert failures == []


def test_criterion_2_running_example(running_example):
    io, inp, u = running_example
    with criterion("2 running example io-model", 30):
        assert io_models(io, inp, u) == [frozenset(inp.atoms | OUT)]
        (model,) = stable_models_for_input(io, inp, u)
        buildings = {a for a in model if a.symbol == ("in_building", 2)}
        assert buildings == {A("in_building", p, t) for p in ("alice", "bob") for t in range(3)}
        assert model == inp.atoms | OUT | buildings


def test_criterion_3_tightness(running_example):
    io = running_example[0]
    pairs = parse_program(read("pairs.mg"))
    with criterion("3 tightness", 1):
        assert is_tight(pairs.program)
        assert set(pred_graph(pairs.program).edges) == {(("q", 2), ("p", 1))}
        assert not is_tight(io.program)
        assert find_cycle(pred_graph(io.program)) == [(("in", 3), ("in", 3))]


def test_criterion_4_local_tightness(running_example):
    io, inp, u = running_example
    with criterion("4 local tightness", 10):
        assert inp.valuation == {"h": Num(2)}
        terms = u.terms()
        expected = {
            (Atom("in_building", (p, t)), Atom("in", (p, r, t))) for p, r, t in itertools.product(terms, repeat=3)
        }
        expected |= {
            (Atom("in", (p, r, Num(i + 1))), Atom("in", (p, r, Num(i))))
            for p, r in itertools.product(terms, repeat=2)
            for i in range(2)
        }
        assert set(atom_graph(io, inp, u).edges) == expected
        assert isinstance(is_locally_tight(io, inp, u), LocallyTight)


PAIRS_COMPLETION = (
    "forall V1 (pp(V1) <-> V1 = a or V1 = b) and "
    "forall V1 V2 (q(V1,V2) <-> exists X Y (V1 = X and V2 = Y and exists V (V = X and pp(V)) and exists V (V = Y and pp(V))))"
)


def test_criterion_5_completion():
    pairs = parse_program(read("pairs.mg"))
    with criterion("5 completion", 1):
        comp = fol.complete_io(pairs)
        assert comp.prefix == (("P", 1),)
        assert comp.matrix == fol.replace_predicates(parse_formula(PAIRS_COMPLETION), {("pp", 1): "P"})
        public = {A("q", s, t) for s in "ab" for t in "ab"}
        u = io_universe(pairs, parse_input("", pairs))
        res = so_sat(StandardInterp(public), comp, u)
        assert res.sat and res.witness == {"P": frozenset({(Sym("a"),), (Sym("b"),)})}


def test_criterion_6_main_lemma_example():
    gamma = fol.CompletableSet(tuple(parse_theory(read("toy.fo"))), {("p", 1)})
    with criterion("6 main lemma worked example", 1):
        facts = {}
        for name in ("toy_i.in", "toy_j.in"):
            interp = parse_input(read(name), None, name)
            valued = fol.substitute_constants(gamma, interp.valuation)
            u = Universe(frozenset(), 0, 1)
            edges = set(gsp_graph(interp.atoms, valued, u).edges)
            r = verify_main_lemma(gamma, interp.atoms, u, interp.valuation)
            facts[name] = (interp.atoms, edges, r.conditions["stable"], r.conditions["satisfies_completion"])
        assert facts["toy_i.in"] == ({A("p", 0)}, set(), True, True)
        assert facts["toy_j.in"] == ({A("p", 0), A("p", 1)}, {(A("p", 1), A("p", 1))}, False, True)


def test_criterion_7_theorem2_end_to_end(running_example):
    io, inp, u = running_example
    with criterion("7 theorem 2 end to end", 120):
        p = frozenset(inp.atoms | OUT)
        r = verify_theorem2(io, inp, p, u)
        c = r.conditions
        assert r.verdict == "holds" and c["a_io_model"] and c["b_comp_valuated"] and c["c_comp_placeholder_interp"]
        not_flipped = []
        for args in itertools.product(u.terms(), repeat=3):
            c = verify_theorem2(io, inp, p ^ {Atom("in", args)}, u).conditions
            if c["a_io_model"] or c["b_comp_valuated"] or c["c_comp_placeholder_interp"]:
                not_flipped.append(args)
        assert not_flipped == []


SUITE_BUDGETS = [
    ("8 theorem 1 suite", theorem1_suite, 300),
    ("8 tau-star versus tau suite", tau_star_rule_suite, 120),
    ("8 main lemma suite", main_lemma_suite, 120),
    ("8 proposition 1 suite", proposition1_suite, 60),
]


@pytest.mark.parametrize("label, suite, budget", SUITE_BUDGETS, ids=[s[0] for s in SUITE_BUDGETS])
def test_criterion_8_property_suites(label, suite, budget):
    with criterion(label, budget):
        report = suite()
        assert report.ok and report.conditions["failures"] == 0, report.witnesses


def test_criterion_9_equivalence(running_example):
    io1 = running_example[0]
    io2 = parse_program(read("rooms2.mg"), "rooms2.mg")
    assumption = parse_theory(read("as.fo"))
    dom = Domain.from_json(json.loads(read("dom.json")), io1)
    with criterion("9 equivalence on a finite domain", 600):
        assert dom.size() == 3 * 2**6
        r = check_equivalence(io1, io2, assumption, dom)
        assert r.verdict == "equivalent-on-domain", r.witnesses
        without_inertia = dataclasses.replace(io1, program=Program(io1.program.rules[:2] + io1.program.rules[3:]))
        assert without_inertia.program == parse_program(read("rooms_noinertia.mg")).program
        r = check_equivalence(io1, without_inertia, assumption, dom)
        assert r.verdict == "not-equivalent"
        # recompute the reported counterexample from scratch
        cex = r.witnesses["counterexample"]["input"]
        facts = "".join(f"{a}.\n" for a in cex["atoms"])
        inp = Input({k: parse_term(v) for k, v in cex["valuation"].items()}, parse_input(facts, io1).atoms)
        u = io_universe(io1, inp)
        assert io_models(io1, inp, u) != io_models(without_inertia, inp, u)
