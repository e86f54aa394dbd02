"""Seeded random generators for programs, inputs and ground completable sets.

Used by the property suites and by `mgtc verify ... --random`.  Everything is
driven by a `random.Random`, so a seed reproduces the whole corpus.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from . import fol
from .ground import Universe
from .syntax import (
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
    Var,
)


@dataclass(frozen=True)
class Shape:
    """Size bounds for random programs."""

    max_rules: int = 3
    max_vars: int = 2
    max_body: int = 3
    term_depth: int = 2
    preds: tuple = (("p", 1), ("q", 1), ("s", 0))
    ints: tuple = (0, 1, 2)
    syms: tuple = ("a",)


SMALL = Shape()


def small_universe(shape: Shape = SMALL) -> Universe:
    """At most four terms: the shape's numerals and symbols."""
    return Universe(frozenset(shape.syms), min(shape.ints), max(shape.ints))


def random_term(rng: random.Random, names: list, depth: int, shape: Shape = SMALL):
    roll = rng.random()
    if depth <= 0 or roll < 0.55:
        choices = [Num(i) for i in shape.ints] + [Sym(s) for s in shape.syms]
        choices += [Var(n) for n in names] * 2
        return rng.choice(choices)
    if roll < 0.62:
        return Abs(random_term(rng, names, depth - 1, shape))
    op = rng.choice(["+", "-", "*", "/", "\\", ".."])
    return BinOp(op, random_term(rng, names, depth - 1, shape), random_term(rng, names, depth - 1, shape))


def random_atom(rng: random.Random, names: list, shape: Shape = SMALL, preds=None) -> Atom:
    name, arity = rng.choice(list(preds or shape.preds))
    return Atom(name, tuple(random_term(rng, names, shape.term_depth, shape) for _ in range(arity)))


def random_element(rng: random.Random, names: list, shape: Shape = SMALL, preds=None):
    if rng.random() < 0.3:
        rel = rng.choice(["=", "!=", "<", ">", "<=", ">="])
        return Comparison(
            random_term(rng, names, shape.term_depth, shape),
            rel,
            random_term(rng, names, shape.term_depth, shape),
        )
    neg = rng.choices([0, 1, 2], weights=[6, 3, 1])[0]
    return Literal(neg, random_atom(rng, names, shape, preds))


def random_rule(rng: random.Random, shape: Shape = SMALL, heads=None, body_preds=None) -> Rule:
    names = ["X", "Y", "Z"][: rng.randint(0, shape.max_vars)]
    body = tuple(random_element(rng, names, shape, body_preds) for _ in range(rng.randint(0, shape.max_body)))
    kind = rng.choices(["basic", "choice", "constraint"], weights=[7, 2, 1])[0]
    if kind == "constraint":
        return Rule(None, body)
    return Rule(random_atom(rng, names, shape, heads), body, kind == "choice")


def random_program(rng: random.Random, shape: Shape = SMALL) -> Program:
    return Program(tuple(random_rule(rng, shape) for _ in range(rng.randint(1, shape.max_rules))))


# -- io-programs ---------------------------------------------------------------


IO_SHAPE = Shape(preds=(("e", 1), ("p", 1), ("q", 1), ("r", 0)))


def random_tight_io_program(rng: random.Random, shape: Shape = IO_SHAPE) -> IoProgram:
    """A tight io-program: e/1 is input, positive dependencies follow a fixed order.

    A head predicate only depends positively on predicates earlier in the list
    e, p, q, r, so the predicate dependency graph is acyclic.
    """
    order = [s for s in shape.preds]
    rules = []
    for _ in range(rng.randint(1, shape.max_rules)):
        head = rng.choice(order[1:])
        earlier = order[: order.index(head)]
        names = ["X", "Y"][: rng.randint(0, shape.max_vars)]
        body = []
        for _ in range(rng.randint(0, shape.max_body)):
            roll = rng.random()
            if roll < 0.25:
                rel = rng.choice(["=", "!=", "<", "<="])
                d = min(1, shape.term_depth)
                body.append(
                    Comparison(random_term(rng, names, d, shape), rel, random_term(rng, names, d, shape))
                )
            elif roll < 0.7:
                body.append(Literal(0, random_atom(rng, names, shape, earlier)))
            else:
                body.append(Literal(rng.choice([1, 2]), random_atom(rng, names, shape, order)))
        kind = rng.choices(["basic", "choice", "constraint"], weights=[6, 3, 1])[0]
        if kind == "constraint":
            rules.append(Rule(None, tuple(body)))
        else:
            rules.append(Rule(random_atom(rng, names, shape, [head]), tuple(body), kind == "choice"))
    outputs = rng.sample([("p", 1), ("q", 1), ("r", 0)], rng.randint(1, 2))
    return IoProgram(Program(tuple(rules)), frozenset(), frozenset({("e", 1)}), frozenset(outputs))


def random_input(rng: random.Random, u: Universe, io: Optional[IoProgram] = None) -> Input:
    """Random input atoms over the input symbols of `io` (default e/1)."""
    symbols = sorted(io.inputs) if io is not None else [("e", 1)]
    atoms = set()
    terms = u.terms()
    for name, arity in symbols:
        if arity == 0:
            if rng.random() < 0.5:
                atoms.add(Atom(name))
            continue
        for t in terms:
            if arity == 1 and rng.random() < 0.5:
                atoms.add(Atom(name, (t,)))
    return Input({}, frozenset(atoms))


# -- ground completable sets --------------------------------------------------------


def random_ground_completable(rng: random.Random, n_atoms: int = 6) -> tuple:
    """A ground completable set over p(0)..p(n-1) and a random interpretation.

    Each sentence is ∀V(V = i ∧ body → p(V)) or body → ⊥, with bodies built from
    atoms, negations and double negations, conjunctions and disjunctions.
    Returns (gamma, interpretation, universe).
    """
    atoms = [fol.PredAtom("p", (fol.ObjConst(Num(i)),)) for i in range(n_atoms)]

    def body(depth: int):
        roll = rng.random()
        if depth <= 0 or roll < 0.45:
            a = rng.choice(atoms)
            k = rng.choices([0, 1, 2], weights=[5, 3, 2])[0]
            for _ in range(k):
                a = fol.neg(a)
            return a
        if roll < 0.55:
            return fol.TOP
        items = tuple(body(depth - 1) for _ in range(rng.randint(2, 3)))
        return fol.And(items) if roll < 0.8 else fol.Or(items)

    v = fol.ObjVar("V")
    head = fol.PredAtom("p", (v,))
    sentences = []
    for _ in range(rng.randint(1, n_atoms + 1)):
        if rng.random() < 0.15:
            sentences.append(fol.Implies(body(2), fol.BOTTOM))
            continue
        i = fol.ObjConst(Num(rng.randrange(n_atoms)))
        ante = fol.conj([fol.Compare(v, "=", i), body(2)])
        sentences.append(fol.Forall((v,), fol.Implies(ante, head)))
    gamma = fol.CompletableSet(tuple(sentences), frozenset({("p", 1)}))
    j = frozenset(Atom("p", (Num(i),)) for i in range(n_atoms) if rng.random() < 0.5)
    return gamma, j, Universe(frozenset(), 0, max(n_atoms - 1, 0))
