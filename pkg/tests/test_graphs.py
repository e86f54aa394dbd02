from __future__ import annotations

from mgtc import fol
from mgtc.graphs import (
    CycleFound,
    LocallyTight,
    TightShortcut,
    atom_graph,
    find_cycle,
    gsp_graph,
    is_locally_tight,
    is_tight,
    pos_atoms,
    pred_graph,
    to_dot,
)
from mgtc.ground import PAtom, PImp, pand, pneg, por
from mgtc.ground import Universe
from mgtc.parser import parse_input, parse_program, parse_theory
from mgtc.syntax import Atom, Num, Sym


def a(name, *args):
    return Atom(name, tuple(Num(x) if isinstance(x, int) else Sym(x) for x in args))


def test_pairs_is_tight(pairs):
    g = pred_graph(pairs.program)
    assert set(g.edges) == {(("q", 2), ("p", 1))}
    assert is_tight(pairs.program)


def test_rooms_has_self_loop(rooms):
    g = pred_graph(rooms.program)
    assert (("in", 3), ("in", 3)) in g.edges
    assert find_cycle(g) == [(("in", 3), ("in", 3))]
    assert not is_tight(rooms.program)


def test_negative_dependencies_do_not_count():
    prog = parse_program("p :- not q.\nq :- not p.").program
    assert is_tight(prog)


LOOP = "#input e/1.\n#output p/1.\np(X) :- p(X), e(X).\n"
NEG_LOOP = "#input e/1.\n#output p/1.\np(X) :- p(X), not e(X).\n"


def test_input_literal_blocks_edges():
    io = parse_program(LOOP)
    u = Universe(frozenset(), 0, 1)
    assert set(atom_graph(io, parse_input("", io), u).edges) == set()
    assert isinstance(is_locally_tight(io, parse_input("", io), u), LocallyTight)
    verdict = is_locally_tight(io, parse_input("e(0).", io), u)
    assert isinstance(verdict, CycleFound)
    assert verdict.cycle == ((a("p", 0), a("p", 0)),)
    assert str(verdict.provenance[0]) == "p(0) :- p(0), e(0)."


def test_negated_input_literal_blocks_edges():
    io = parse_program(NEG_LOOP)
    u = Universe(frozenset(), 0, 1)
    assert isinstance(is_locally_tight(io, parse_input("e(0). e(1).", io), u), LocallyTight)
    g = atom_graph(io, parse_input("e(0).", io), u)
    assert set(g.edges) == {(a("p", 1), a("p", 1))}


def test_comparisons_block_edges():
    io = parse_program("#output p/1.\np(X) :- p(Y), X = Y+1, X < 2.\n")
    u = Universe(frozenset(), 0, 3)
    g = atom_graph(io, parse_input("", io), u)
    assert set(g.edges) == {(a("p", 1), a("p", 0))}


def test_tight_programs_shortcut(pairs):
    assert isinstance(is_locally_tight(pairs, parse_input("", pairs), Universe()), TightShortcut)


def test_rooms_locally_tight(rooms, rooms_input):
    u = Universe(frozenset({"alice", "bob", "classroom", "hall"}), -1, 3)
    assert isinstance(is_locally_tight(rooms, rooms_input, u), LocallyTight)


def test_backward_rule_closes_a_cycle():
    # inertia from T to T+1 stays acyclic; a backward rule closes a loop
    io = parse_program("#output in/3.\nin(P,R,T+1) :- in(P,R,T).\nin(P,R,T) :- in(P,R,T+1).\n")
    verdict = is_locally_tight(io, parse_input("", io), Universe(frozenset({"x"}), 0, 1))
    assert isinstance(verdict, CycleFound)


P, Q = PAtom(a("p")), PAtom(a("q"))


def test_pos():
    j = {a("p"), a("q")}
    assert pos_atoms(j, pand([P, pneg(Q)])) == set()
    assert pos_atoms(j, por([P, Q])) == {a("p"), a("q")}
    assert pos_atoms(j, PImp(Q, P)) == {a("p")}
    assert pos_atoms(j, pneg(pneg(P))) == set()
    assert pos_atoms({a("p")}, por([P, Q])) == {a("p")}


def test_gsp_toy():
    theory = parse_theory("forall V (V = 0 -> p(V)). forall V (V = 1 and p(V) -> p(V)).")
    gamma = fol.CompletableSet(tuple(theory), {("p", 1)})
    u = Universe(frozenset(), 0, 1)
    assert set(gsp_graph({a("p", 0)}, gamma, u).edges) == set()
    assert set(gsp_graph({a("p", 0), a("p", 1)}, gamma, u).edges) == {(a("p", 1), a("p", 1))}


def test_dot_is_deterministic(rooms, rooms_input):
    u = Universe(frozenset({"alice"}), 0, 1)
    io = parse_program(LOOP)
    g = atom_graph(io, parse_input("e(0). e(1).", io), u)
    text = to_dot(g, "atoms")
    assert text == to_dot(atom_graph(io, parse_input("e(1). e(0).", io), u), "atoms")
    assert text.splitlines()[0] == "digraph atoms {"
    assert '"p(0)" -> "p(0)" [label="p(0) :- p(0), e(0)."];' in text
