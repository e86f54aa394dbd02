"""Grounding over a finite universe and the propositional translation of rules."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional

from .syntax import (
    Abs,
    Atom,
    BinOp,
    Comparison,
    Input,
    Literal,
    Num,
    Program,
    Rule,
    Sym,
    Var,
    constants,
    rule_variables,
)
from .values import eval_term, eval_tuple, holds


# -- universe ---------------------------------------------------------------


@dataclass(frozen=True)
class Universe:
    """Finite stand-in for the set of all precomputed terms."""

    symbols: frozenset = frozenset()
    lo: int = 0
    hi: int = 1

    def __post_init__(self):
        object.__setattr__(self, "symbols", frozenset(self.symbols))
        if self.lo > self.hi:
            raise ValueError(f"empty integer range [{self.lo}, {self.hi}]")

    def numerals(self) -> list:
        return [Num(i) for i in range(self.lo, self.hi + 1)]

    def terms(self) -> list:
        return self.numerals() + [Sym(s) for s in sorted(self.symbols, key=str.encode)]

    def __contains__(self, t) -> bool:
        if isinstance(t, Num):
            return self.lo <= t.value <= self.hi
        if isinstance(t, Sym):
            return t.name in self.symbols
        return False

    def __len__(self) -> int:
        return self.hi - self.lo + 1 + len(self.symbols)

    def to_json(self) -> dict:
        return {"symbols": sorted(self.symbols, key=str.encode), "int_min": self.lo, "int_max": self.hi}

    def __str__(self) -> str:
        syms = ", ".join(sorted(self.symbols, key=str.encode))
        return f"{{{syms}}} ∪ [{self.lo}, {self.hi}]"


def default_universe(
    prog: Optional[Program] = None,
    inp: Optional[Input] = None,
    margin: int = 1,
    placeholders: Iterable[str] = (),
) -> Universe:
    if margin < 0:
        raise ValueError("margin must be nonnegative")
    consts: set = set()
    if prog is not None:
        consts |= constants(prog)
    excluded = set(placeholders)
    if inp is not None:
        consts |= constants(inp.atoms)
        consts |= set(inp.valuation.values())
        excluded |= set(inp.valuation)
    ints = [c.value for c in consts if isinstance(c, Num)]
    syms = {c.name for c in consts if isinstance(c, Sym)} - excluded
    if ints:
        lo, hi = min(ints) - margin, max(ints) + margin
    else:
        lo, hi = 0, 1
    return Universe(frozenset(syms), lo, hi)


# -- propositional formulas -------------------------------------------------


class PropFormula:
    __slots__ = ()


@dataclass(frozen=True)
class PAtom(PropFormula):
    atom: Atom

    def __str__(self):
        return str(self.atom)


@dataclass(frozen=True)
class PTop(PropFormula):
    def __str__(self):
        return "⊤"


@dataclass(frozen=True)
class PBot(PropFormula):
    def __str__(self):
        return "⊥"


@dataclass(frozen=True)
class PAnd(PropFormula):
    items: tuple

    def __str__(self):
        if not self.items:
            return "⊤"
        return "(" + " ∧ ".join(str(f) for f in self.items) + ")"


@dataclass(frozen=True)
class POr(PropFormula):
    items: tuple

    def __str__(self):
        if not self.items:
            return "⊥"
        return "(" + " ∨ ".join(str(f) for f in self.items) + ")"


@dataclass(frozen=True)
class PImp(PropFormula):
    ante: PropFormula
    cons: PropFormula

    def __str__(self):
        if isinstance(self.cons, PBot):
            return f"¬{self.ante}"
        return f"({self.ante} → {self.cons})"


TOP = PTop()
BOT = PBot()


def pneg(f: PropFormula) -> PropFormula:
    return PImp(f, BOT)


def pand(items) -> PropFormula:
    items = tuple(items)
    return items[0] if len(items) == 1 else PAnd(items)


def por(items) -> PropFormula:
    items = tuple(items)
    return items[0] if len(items) == 1 else POr(items)


def prop_atoms(f: PropFormula) -> set:
    out: set = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, PAtom):
            out.add(g.atom)
        elif isinstance(g, (PAnd, POr)):
            stack.extend(g.items)
        elif isinstance(g, PImp):
            stack.append(g.ante)
            stack.append(g.cons)
    return out


def simplify(f: PropFormula, false_atoms: Optional[set] = None) -> PropFormula:
    """⊤/⊥ absorption; atoms in `false_atoms` are replaced by ⊥ first.

    Every rewrite used here preserves here-and-there models.
    """
    if isinstance(f, PAtom):
        if false_atoms is not None and f.atom in false_atoms:
            return BOT
        return f
    if isinstance(f, (PTop, PBot)):
        return f
    if isinstance(f, PAnd):
        out = []
        for g in f.items:
            g = simplify(g, false_atoms)
            if isinstance(g, PBot):
                return BOT
            if isinstance(g, PTop):
                continue
            out.append(g)
        return TOP if not out else pand(out)
    if isinstance(f, POr):
        out = []
        for g in f.items:
            g = simplify(g, false_atoms)
            if isinstance(g, PTop):
                return TOP
            if isinstance(g, PBot):
                continue
            out.append(g)
        return BOT if not out else por(out)
    if isinstance(f, PImp):
        a = simplify(f.ante, false_atoms)
        c = simplify(f.cons, false_atoms)
        if isinstance(a, PBot) or isinstance(c, PTop):
            return TOP
        if isinstance(a, PTop):
            return c
        return PImp(a, c)
    raise TypeError(f)


# -- instantiation ----------------------------------------------------------


def _subst(t, env: Mapping):
    if isinstance(t, Var):
        return env[t.name]
    if isinstance(t, Abs):
        return Abs(_subst(t.arg, env))
    if isinstance(t, BinOp):
        return BinOp(t.op, _subst(t.left, env), _subst(t.right, env))
    return t


def substitute_rule(rule: Rule, env: Mapping) -> Rule:
    def atom(a):
        return Atom(a.pred, tuple(_subst(t, env) for t in a.args))

    body = []
    for e in rule.body:
        if isinstance(e, Literal):
            body.append(Literal(e.neg, atom(e.atom)))
        else:
            body.append(Comparison(_subst(e.left, env), e.rel, _subst(e.right, env)))
    head = atom(rule.head) if rule.head is not None else None
    return Rule(head, tuple(body), rule.choice)


def assignments(names: list, u: Universe) -> Iterator[dict]:
    terms = u.terms()
    for combo in itertools.product(terms, repeat=len(names)):
        yield dict(zip(names, combo))


def instances(rule: Rule, u: Universe) -> list:
    names = rule_variables(rule)
    if not names:
        return [rule]
    seen: dict = {}
    for env in assignments(names, u):
        seen.setdefault(substitute_rule(rule, env), None)
    return list(seen)


# -- tau --------------------------------------------------------------------


def _tau_element(e, within) -> PropFormula:
    if isinstance(e, Comparison):
        left = eval_term(e.left, within)
        right = eval_term(e.right, within)
        ok = any(holds(e.rel, r1, r2) for r1 in left for r2 in right)
        return TOP if ok else BOT
    tuples = sorted(eval_tuple(e.atom.args, within))
    disjuncts = []
    for r in tuples:
        f: PropFormula = PAtom(Atom(e.atom.pred, r))
        for _ in range(e.neg):
            f = pneg(f)
        disjuncts.append(f)
    return por(disjuncts) if disjuncts else BOT


def tau_body(body, within=None) -> PropFormula:
    return pand(_tau_element(e, within) for e in body) if body else TOP


def tau_rule(rule: Rule, within=None) -> PropFormula:
    """Propositional image of a ground rule.

    With `within` (usually a Universe) value sets are clipped to it.
    """
    body = tau_body(rule.body, within)
    if rule.head is None:
        return pneg(body)
    tuples = sorted(eval_tuple(rule.head.args, within))
    heads = []
    for r in tuples:
        a = PAtom(Atom(rule.head.pred, r))
        heads.append(POr((a, pneg(a))) if rule.choice else a)
    return PImp(body, pand(heads) if heads else TOP)


def tau_program(prog: Program, u: Universe, clip: bool = False) -> list:
    within = u if clip else None
    seen: dict = {}
    for rule in prog:
        for inst in instances(rule, u):
            seen.setdefault(tau_rule(inst, within), None)
    return list(seen)


def facts_program(atoms: Iterable[Atom]) -> Program:
    return Program(tuple(Rule(a) for a in sorted(atoms, key=Atom.sort_key)))
