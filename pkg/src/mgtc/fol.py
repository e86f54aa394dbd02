"""Two-sorted first-order formulas, the translation τ*, and completion."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from .ground import BOT as PBOT
from .ground import TOP as PTOP
from .ground import PAtom, PBot, PImp, PropFormula, PTop, Universe, pand, por, simplify
from .stable import EnumerationLimitError, HtPair, ht_sat_all
from .syntax import (
    Abs,
    Atom,
    BinOp,
    Comparison,
    Literal,
    Num,
    Program,
    Rule,
    Sym,
    Var,
    predicate_symbols,
    program_variables,
    rule_variables,
)
from .values import holds

GENERAL = "general"
INTEGER = "integer"


# -- terms ------------------------------------------------------------------


@dataclass(frozen=True)
class ObjConst:
    value: object  # Num or Sym

    def __str__(self):
        return str(self.value)


@dataclass(frozen=True)
class ObjVar:
    name: str
    sort: str = GENERAL

    def __post_init__(self):
        if self.sort not in (GENERAL, INTEGER):
            raise ValueError(f"unknown sort {self.sort!r}")

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class AbsTerm:
    arg: object

    def __str__(self):
        return format_fo_term(self)


@dataclass(frozen=True)
class ArithTerm:
    op: str
    left: object
    right: object

    def __post_init__(self):
        if self.op not in ("+", "-", "*"):
            raise ValueError(f"operation {self.op!r} is not a function of the signature")

    def __str__(self):
        return format_fo_term(self)


def term_sort(t) -> str:
    if isinstance(t, ObjConst):
        return INTEGER if isinstance(t.value, Num) else GENERAL
    if isinstance(t, ObjVar):
        return t.sort
    return INTEGER


# -- formulas ---------------------------------------------------------------


class FoFormula:
    __slots__ = ()

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class PredAtom(FoFormula):
    pred: str
    args: tuple = ()
    variable: bool = False

    @property
    def symbol(self):
        return (self.pred, len(self.args))


@dataclass(frozen=True)
class Compare(FoFormula):
    left: object
    rel: str
    right: object


@dataclass(frozen=True)
class Bot(FoFormula):
    pass


@dataclass(frozen=True)
class And(FoFormula):
    items: tuple


@dataclass(frozen=True)
class Or(FoFormula):
    items: tuple


@dataclass(frozen=True)
class Implies(FoFormula):
    ante: FoFormula
    cons: FoFormula


@dataclass(frozen=True)
class Forall(FoFormula):
    vars: tuple
    body: FoFormula


@dataclass(frozen=True)
class Exists(FoFormula):
    vars: tuple
    body: FoFormula


BOTTOM = Bot()
TOP = Implies(BOTTOM, BOTTOM)


def neg(f: FoFormula) -> FoFormula:
    return Implies(f, BOTTOM)


def iff(f: FoFormula, g: FoFormula) -> FoFormula:
    return And((Implies(f, g), Implies(g, f)))


def conj(items) -> FoFormula:
    items = tuple(items)
    if not items:
        return TOP
    return items[0] if len(items) == 1 else And(items)


def disj(items) -> FoFormula:
    items = tuple(items)
    if not items:
        return BOTTOM
    return items[0] if len(items) == 1 else Or(items)


def forall(vs, body) -> FoFormula:
    return Forall(tuple(vs), body) if vs else body


def exists(vs, body) -> FoFormula:
    return Exists(tuple(vs), body) if vs else body


def is_top(f) -> bool:
    return isinstance(f, Implies) and isinstance(f.ante, Bot) and isinstance(f.cons, Bot)


def is_neg(f) -> bool:
    return isinstance(f, Implies) and isinstance(f.cons, Bot) and not isinstance(f.ante, Bot)


def as_iff(f):
    if (
        isinstance(f, And)
        and len(f.items) == 2
        and all(isinstance(g, Implies) for g in f.items)
        and f.items[0].ante == f.items[1].cons
        and f.items[0].cons == f.items[1].ante
    ):
        return f.items[0].ante, f.items[0].cons
    return None


@dataclass(frozen=True)
class SoSentence:
    """∃P₁…Pₗ matrix, where each Pᵢ is a predicate variable (name, arity)."""

    prefix: tuple
    matrix: FoFormula

    def __post_init__(self):
        declared = {name: n for name, n in self.prefix}
        for a in atoms_of(self.matrix):
            if a.variable and declared.get(a.pred) != len(a.args):
                raise ValueError(f"predicate variable {a.pred}/{len(a.args)} is not bound")

    def __str__(self):
        return format_so(self)


# -- traversal --------------------------------------------------------------


def term_vars(t) -> list:
    if isinstance(t, ObjVar):
        return [t]
    if isinstance(t, AbsTerm):
        return term_vars(t.arg)
    if isinstance(t, ArithTerm):
        return term_vars(t.left) + term_vars(t.right)
    return []


def free_vars(f: FoFormula) -> list:
    """Free variables in order of first occurrence."""
    out: dict = {}

    def rec(g, bound):
        if isinstance(g, PredAtom):
            for t in g.args:
                for v in term_vars(t):
                    if v.name not in bound:
                        out.setdefault(v, None)
        elif isinstance(g, Compare):
            for v in term_vars(g.left) + term_vars(g.right):
                if v.name not in bound:
                    out.setdefault(v, None)
        elif isinstance(g, (And, Or)):
            for h in g.items:
                rec(h, bound)
        elif isinstance(g, Implies):
            rec(g.ante, bound)
            rec(g.cons, bound)
        elif isinstance(g, (Forall, Exists)):
            rec(g.body, bound | {v.name for v in g.vars})

    rec(f, frozenset())
    return list(out)


def all_var_names(f) -> set:
    out: set = set()

    def rec(g):
        if isinstance(g, PredAtom):
            for t in g.args:
                out.update(v.name for v in term_vars(t))
        elif isinstance(g, Compare):
            out.update(v.name for v in term_vars(g.left) + term_vars(g.right))
        elif isinstance(g, (And, Or)):
            for h in g.items:
                rec(h)
        elif isinstance(g, Implies):
            rec(g.ante)
            rec(g.cons)
        elif isinstance(g, (Forall, Exists)):
            out.update(v.name for v in g.vars)
            rec(g.body)

    rec(f)
    return out


def atoms_of(f: FoFormula) -> list:
    out: list = []
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, PredAtom):
            out.append(g)
        elif isinstance(g, (And, Or)):
            stack.extend(reversed(g.items))
        elif isinstance(g, Implies):
            stack.append(g.cons)
            stack.append(g.ante)
        elif isinstance(g, (Forall, Exists)):
            stack.append(g.body)
    return out


def predicate_constants(f: FoFormula) -> set:
    return {a.symbol for a in atoms_of(f) if not a.variable}


def formula_constants(f: FoFormula) -> set:
    out: set = set()

    def term(t):
        if isinstance(t, ObjConst):
            out.add(t.value)
        elif isinstance(t, AbsTerm):
            term(t.arg)
        elif isinstance(t, ArithTerm):
            term(t.left)
            term(t.right)

    def rec(g):
        if isinstance(g, PredAtom):
            for t in g.args:
                term(t)
        elif isinstance(g, Compare):
            term(g.left)
            term(g.right)
        elif isinstance(g, (And, Or)):
            for h in g.items:
                rec(h)
        elif isinstance(g, Implies):
            rec(g.ante)
            rec(g.cons)
        elif isinstance(g, (Forall, Exists)):
            rec(g.body)

    rec(f)
    return out


def check_sorts(f: FoFormula) -> None:
    """Raise ValueError if arithmetic is applied to general-sorted terms."""

    def term(t):
        if isinstance(t, AbsTerm):
            term(t.arg)
            if term_sort(t.arg) != INTEGER:
                raise ValueError(f"|·| applied to general term {format_fo_term(t.arg)}")
        elif isinstance(t, ArithTerm):
            for s in (t.left, t.right):
                term(s)
                if term_sort(s) != INTEGER:
                    raise ValueError(f"arithmetic on general term {format_fo_term(s)}")

    for g in _subformulas(f):
        if isinstance(g, PredAtom):
            for t in g.args:
                term(t)
        elif isinstance(g, Compare):
            term(g.left)
            term(g.right)


def _subformulas(f):
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        if isinstance(g, (And, Or)):
            stack.extend(g.items)
        elif isinstance(g, Implies):
            stack.extend((g.ante, g.cons))
        elif isinstance(g, (Forall, Exists)):
            stack.append(g.body)


# -- substitution -----------------------------------------------------------


def subst_term(t, env: Mapping):
    if isinstance(t, ObjVar):
        return env.get(t.name, t)
    if isinstance(t, AbsTerm):
        return AbsTerm(subst_term(t.arg, env))
    if isinstance(t, ArithTerm):
        return ArithTerm(t.op, subst_term(t.left, env), subst_term(t.right, env))
    return t


def substitute(f: FoFormula, env: Mapping) -> FoFormula:
    """Replace free variables by terms (names → FO terms).

    The replacement terms must not contain variables that are bound at the
    substitution point; ground terms and globally fresh names are safe.
    """
    if not env:
        return f
    if isinstance(f, PredAtom):
        return PredAtom(f.pred, tuple(subst_term(t, env) for t in f.args), f.variable)
    if isinstance(f, Compare):
        return Compare(subst_term(f.left, env), f.rel, subst_term(f.right, env))
    if isinstance(f, Bot):
        return f
    if isinstance(f, And):
        return And(tuple(substitute(g, env) for g in f.items))
    if isinstance(f, Or):
        return Or(tuple(substitute(g, env) for g in f.items))
    if isinstance(f, Implies):
        return Implies(substitute(f.ante, env), substitute(f.cons, env))
    if isinstance(f, (Forall, Exists)):
        inner = {k: v for k, v in env.items() if all(k != x.name for x in f.vars)}
        return type(f)(f.vars, substitute(f.body, inner))
    raise TypeError(f)


def _subst_consts_term(t, v: Mapping):
    if isinstance(t, ObjConst) and isinstance(t.value, Sym) and t.value.name in v:
        return ObjConst(v[t.value.name])
    if isinstance(t, AbsTerm):
        return AbsTerm(_subst_consts_term(t.arg, v))
    if isinstance(t, ArithTerm):
        return ArithTerm(t.op, _subst_consts_term(t.left, v), _subst_consts_term(t.right, v))
    return t


def substitute_constants(x, v: Mapping):
    """Replace each constant c in dom(v) by v(c) throughout a formula, sentence or set."""
    if isinstance(x, SoSentence):
        return SoSentence(x.prefix, substitute_constants(x.matrix, v))
    if isinstance(x, CompletableSet):
        return CompletableSet(
            tuple(substitute_constants(s, v) for s in x.sentences), x.intensional
        )
    f = x
    if isinstance(f, PredAtom):
        return PredAtom(f.pred, tuple(_subst_consts_term(t, v) for t in f.args), f.variable)
    if isinstance(f, Compare):
        return Compare(_subst_consts_term(f.left, v), f.rel, _subst_consts_term(f.right, v))
    if isinstance(f, Bot):
        return f
    if isinstance(f, And):
        return And(tuple(substitute_constants(g, v) for g in f.items))
    if isinstance(f, Or):
        return Or(tuple(substitute_constants(g, v) for g in f.items))
    if isinstance(f, Implies):
        return Implies(substitute_constants(f.ante, v), substitute_constants(f.cons, v))
    if isinstance(f, (Forall, Exists)):
        return type(f)(f.vars, substitute_constants(f.body, v))
    raise TypeError(f"cannot apply a valuation to {type(x).__name__}")


def replace_predicates(f: FoFormula, mapping: Mapping) -> FoFormula:
    """Replace predicate constants (name, arity) by predicate variables named mapping[...]."""
    if isinstance(f, PredAtom):
        if not f.variable and f.symbol in mapping:
            return PredAtom(mapping[f.symbol], f.args, True)
        return f
    if isinstance(f, (Compare, Bot)):
        return f
    if isinstance(f, And):
        return And(tuple(replace_predicates(g, mapping) for g in f.items))
    if isinstance(f, Or):
        return Or(tuple(replace_predicates(g, mapping) for g in f.items))
    if isinstance(f, Implies):
        return Implies(replace_predicates(f.ante, mapping), replace_predicates(f.cons, mapping))
    return type(f)(f.vars, replace_predicates(f.body, mapping))


# -- alpha equivalence ------------------------------------------------------


def alpha_equal(f, g) -> bool:
    """Structural equality up to renaming of bound object and predicate variables."""
    if isinstance(f, SoSentence) or isinstance(g, SoSentence):
        if not (isinstance(f, SoSentence) and isinstance(g, SoSentence)):
            return False
        if [n for _, n in f.prefix] != [n for _, n in g.prefix]:
            return False
        pf = {name: i for i, (name, _) in enumerate(f.prefix)}
        pg = {name: i for i, (name, _) in enumerate(g.prefix)}
        return _alpha(f.matrix, g.matrix, {}, {}, pf, pg, 0)
    return _alpha(f, g, {}, {}, {}, {}, 0)


def _alpha_term(s, t, ef, eg) -> bool:
    if isinstance(s, ObjVar) and isinstance(t, ObjVar):
        if s.sort != t.sort:
            return False
        if s.name in ef or t.name in eg:
            return ef.get(s.name) == eg.get(t.name)
        return s.name == t.name
    if type(s) is not type(t):
        return False
    if isinstance(s, ObjConst):
        return s == t
    if isinstance(s, AbsTerm):
        return _alpha_term(s.arg, t.arg, ef, eg)
    return s.op == t.op and _alpha_term(s.left, t.left, ef, eg) and _alpha_term(s.right, t.right, ef, eg)


def _alpha(f, g, ef, eg, pf, pg, level) -> bool:
    if type(f) is not type(g):
        return False
    if isinstance(f, PredAtom):
        if f.variable != g.variable or len(f.args) != len(g.args):
            return False
        if f.variable:
            if pf.get(f.pred) != pg.get(g.pred) or (f.pred not in pf and f.pred != g.pred):
                return False
        elif f.pred != g.pred:
            return False
        return all(_alpha_term(s, t, ef, eg) for s, t in zip(f.args, g.args))
    if isinstance(f, Compare):
        return f.rel == g.rel and _alpha_term(f.left, g.left, ef, eg) and _alpha_term(
            f.right, g.right, ef, eg
        )
    if isinstance(f, Bot):
        return True
    if isinstance(f, (And, Or)):
        return len(f.items) == len(g.items) and all(
            _alpha(a, b, ef, eg, pf, pg, level) for a, b in zip(f.items, g.items)
        )
    if isinstance(f, Implies):
        return _alpha(f.ante, g.ante, ef, eg, pf, pg, level) and _alpha(f.cons, g.cons, ef, eg, pf, pg, level)
    if len(f.vars) != len(g.vars):
        return False
    if any(a.sort != b.sort for a, b in zip(f.vars, g.vars)):
        return False
    ef2, eg2 = dict(ef), dict(eg)
    for i, (a, b) in enumerate(zip(f.vars, g.vars)):
        ef2[a.name] = (level, i)
        eg2[b.name] = (level, i)
    return _alpha(f.body, g.body, ef2, eg2, pf, pg, level + 1)


# -- fresh names ------------------------------------------------------------


class Fresh:
    """Deterministic fresh-variable supply avoiding a set of names."""

    def __init__(self, used: Iterable[str] = ()):
        self.used = set(used)

    def _take(self, candidates) -> str:
        for name in candidates:
            if name not in self.used:
                self.used.add(name)
                return name
        raise AssertionError("unreachable")

    def general(self) -> ObjVar:
        return ObjVar(self._take(itertools.chain(["V"], (f"V{k}" for k in itertools.count(1)))))

    def integer(self, letter: str) -> ObjVar:
        names = itertools.chain([letter], (f"{letter}{k}" for k in itertools.count(1)))
        return ObjVar(self._take(names), INTEGER)


def head_variable_names(prog: Program, n: int) -> list:
    """The first n names V1, V2, ... that do not occur in `prog`."""
    used = program_variables(prog)
    out = []
    k = 1
    while len(out) < n:
        if f"V{k}" not in used:
            out.append(f"V{k}")
        k += 1
    return out


# -- val, τ^B, τ* -----------------------------------------------------------


def fo_term(t):
    """A mini-gringo term without / \\ .. as a term of the signature."""
    if isinstance(t, (Num, Sym)):
        return ObjConst(t)
    if isinstance(t, Var):
        return ObjVar(t.name)
    raise ValueError(f"{t} is not a simple term")


def val_formula(t, v: ObjVar, fresh: Optional[Fresh] = None) -> FoFormula:
    """The formula expressing that v is one of the values of t."""
    if fresh is None:
        fresh = Fresh(_mg_var_names(t) | {v.name})
    if isinstance(t, (Num, Sym, Var)):
        return Compare(v, "=", fo_term(t))
    if isinstance(t, Abs):
        i = fresh.integer("I")
        return Exists((i,), And((val_formula(t.arg, i, fresh), Compare(v, "=", AbsTerm(i)))))
    assert isinstance(t, BinOp)
    i = fresh.integer("I")
    j = fresh.integer("J")
    if t.op in ("+", "-", "*"):
        return Exists(
            (i, j),
            And((val_formula(t.left, i, fresh), val_formula(t.right, j, fresh), Compare(v, "=", ArithTerm(t.op, i, j)))),
        )
    k = fresh.integer("K")
    first = val_formula(t.left, i, fresh)
    second = val_formula(t.right, j, fresh)
    if t.op == "..":
        body = (first, second, Compare(i, "<=", k), Compare(k, "<=", j), Compare(v, "=", k))
        return Exists((i, j, k), And(body))
    zero, one = ObjConst(Num(0)), ObjConst(Num(1))
    bounds = (
        Compare(ArithTerm("*", k, AbsTerm(j)), "<=", AbsTerm(i)),
        Compare(AbsTerm(i), "<", ArithTerm("*", ArithTerm("+", k, one), AbsTerm(j))),
    )
    prod = ArithTerm("*", i, j)
    if t.op == "/":
        pos, negv = k, ArithTerm("-", zero, k)
    else:
        pos, negv = ArithTerm("-", i, ArithTerm("*", k, j)), ArithTerm("+", i, ArithTerm("*", k, j))
    cases = Or(
        (
            And((Compare(prod, ">=", zero), Compare(v, "=", pos))),
            And((Compare(prod, "<", zero), Compare(v, "=", negv))),
        )
    )
    return Exists((i, j, k), And((first, second) + bounds + (cases,)))


def _mg_var_names(t) -> set:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, Abs):
        return _mg_var_names(t.arg)
    if isinstance(t, BinOp):
        return _mg_var_names(t.left) | _mg_var_names(t.right)
    return set()


def tau_b(e, used: Iterable[str] = ()) -> FoFormula:
    """Body translation of a literal or comparison; `used` names are avoided."""
    fresh = Fresh(set(used) | _element_var_names(e))
    if isinstance(e, Comparison):
        v1, v2 = fresh.general(), fresh.general()
        body = And((val_formula(e.left, v1, fresh), val_formula(e.right, v2, fresh), Compare(v1, e.rel, v2)))
        return Exists((v1, v2), body)
    assert isinstance(e, Literal)
    vs = [fresh.general() for _ in e.atom.args]
    lit: FoFormula = PredAtom(e.atom.pred, tuple(vs))
    for _ in range(e.neg):
        lit = neg(lit)
    vals = [val_formula(t, v, fresh) for t, v in zip(e.atom.args, vs)]
    return exists(vs, conj(vals + [lit]))


def _element_var_names(e) -> set:
    if isinstance(e, Comparison):
        return _mg_var_names(e.left) | _mg_var_names(e.right)
    out: set = set()
    for t in e.atom.args:
        out |= _mg_var_names(t)
    return out


def tau_star_rule(rule: Rule, head_vars: list) -> FoFormula:
    rule_vars = rule_variables(rule)
    used = set(rule_vars) | set(head_vars)
    parts = []
    cons: FoFormula
    vs: list = []
    if rule.head is not None:
        vs = [ObjVar(n) for n in head_vars[: len(rule.head.args)]]
        for t, v in zip(rule.head.args, vs):
            parts.append(val_formula(t, v, Fresh(used | _mg_var_names(t))))
    parts.extend(tau_b(e, used) for e in rule.body)
    if rule.head is None:
        cons = BOTTOM
    else:
        cons = PredAtom(rule.head.pred, tuple(vs))
        if rule.choice:
            parts.append(neg(neg(cons)))
    closure = [ObjVar(n) for n in rule_vars] + vs
    return forall(closure, Implies(conj(parts), cons))


def tau_star(prog: Program, intensional: Optional[Iterable] = None) -> "CompletableSet":
    """τ* of a program as a completable set.

    By default every predicate symbol of the program is intensional.
    """
    arity = max((len(r.head.args) for r in prog if r.head is not None), default=0)
    head_vars = head_variable_names(prog, arity)
    if intensional is None:
        intensional = predicate_symbols(prog)
    return CompletableSet(tuple(tau_star_rule(r, head_vars) for r in prog), frozenset(intensional))


# -- completion -------------------------------------------------------------


def split_completable(s: FoFormula) -> tuple:
    """(closure variables, antecedent, consequent) of ∀̃(F → G)."""
    vs: tuple = ()
    body = s
    if isinstance(body, Forall):
        vs, body = body.vars, body.body
    if not isinstance(body, Implies):
        raise ValueError(f"not an implication: {format_formula(s)}")
    return vs, body.ante, body.cons


@dataclass(frozen=True)
class CompletableSet:
    sentences: tuple
    intensional: frozenset

    def __post_init__(self):
        object.__setattr__(self, "sentences", tuple(self.sentences))
        object.__setattr__(self, "intensional", frozenset(tuple(s) for s in self.intensional))
        heads: dict = {}
        for s in self.sentences:
            if free_vars(s):
                raise ValueError(f"not a sentence: {format_formula(s)}")
            _, _, g = split_completable(s)
            syms = predicate_constants(g) & self.intensional
            if not syms:
                continue
            if not (
                isinstance(g, PredAtom)
                and not g.variable
                and all(isinstance(t, ObjVar) for t in g.args)
                and len(set(g.args)) == len(g.args)
            ):
                raise ValueError(f"consequent is neither p(V) nor intensional-free: {format_formula(g)}")
            prev = heads.setdefault(g.symbol, g)
            if prev != g:
                raise ValueError(
                    f"different consequents for {g.pred}/{len(g.args)}: "
                    f"{format_formula(prev)} and {format_formula(g)}"
                )

    def definition(self, symbol) -> list:
        out = []
        for s in self.sentences:
            _, _, g = split_completable(s)
            if isinstance(g, PredAtom) and not g.variable and g.symbol == tuple(symbol):
                out.append(s)
        return out

    def constraints(self) -> list:
        out = []
        for s in self.sentences:
            _, _, g = split_completable(s)
            if not (predicate_constants(g) & self.intensional):
                out.append(s)
        return out

    def defined_symbols(self) -> list:
        seen: dict = {}
        for s in self.sentences:
            _, _, g = split_completable(s)
            if isinstance(g, PredAtom) and g.symbol in self.intensional:
                seen.setdefault(g.symbol, None)
        return list(seen)

    def __iter__(self):
        return iter(self.sentences)

    def __len__(self):
        return len(self.sentences)


def completed_definition(symbol, gamma: CompletableSet) -> FoFormula:
    symbol = tuple(symbol)
    defs = gamma.definition(symbol)
    if defs:
        _, _, head = split_completable(defs[0])
        vs = list(head.args)
    else:
        used = set()
        for s in gamma.sentences:
            used |= all_var_names(s)
        fresh = Fresh(used | {"V"})
        vs = [fresh.general() for _ in range(symbol[1])]
        head = PredAtom(symbol[0], tuple(vs))
    disjuncts = []
    for s in defs:
        closure, ante, _ = split_completable(s)
        free = set(free_vars(ante))
        us = [x for x in closure if x in free and x not in vs]
        disjuncts.append(exists(us, ante))
    return forall(vs, iff(head, disj(disjuncts)))


def complete(gamma: CompletableSet) -> FoFormula:
    """COMP: completed definitions of all intensional symbols, then the constraints."""
    order = gamma.defined_symbols()
    order += sorted(gamma.intensional - set(order))
    parts = [completed_definition(p, gamma) for p in order]
    parts += gamma.constraints()
    return conj(parts)


def predicate_variable_names(n: int) -> list:
    return ["P"] if n == 1 else [f"P{i}" for i in range(1, n + 1)]


def complete_io(io) -> SoSentence:
    """Second-order completion of an io-program."""
    private = sorted(io.private)
    intensional = set(io.outputs) | set(private)
    gamma = tau_star(io.program, intensional)
    names = predicate_variable_names(len(private))
    mapping = dict(zip(private, names))
    matrix = replace_predicates(complete(gamma), mapping)
    return SoSentence(tuple((mapping[p], p[1]) for p in private), matrix)


# -- F^prop ------------------------------------------------------------------


def eval_fo_term(t, env: Mapping):
    """Value of a ground term under `env` (variable name -> precomputed term)."""
    if isinstance(t, ObjConst):
        return t.value
    if isinstance(t, ObjVar):
        return env[t.name]
    if isinstance(t, AbsTerm):
        x = eval_fo_term(t.arg, env)
        if not isinstance(x, Num):
            raise ValueError(f"|·| of non-integer {x}")
        return Num(abs(x.value))
    a, b = eval_fo_term(t.left, env), eval_fo_term(t.right, env)
    if not (isinstance(a, Num) and isinstance(b, Num)):
        raise ValueError(f"arithmetic on non-integers {a}, {b}")
    if t.op == "+":
        return Num(a.value + b.value)
    if t.op == "-":
        return Num(a.value - b.value)
    return Num(a.value * b.value)


def domain(var: ObjVar, u: Universe) -> list:
    return u.numerals() if var.sort == INTEGER else u.terms()


def fprop(
    f: FoFormula,
    u: Universe,
    extensional: Optional[tuple] = None,
    simp: bool = False,
    env: Optional[Mapping] = None,
    placeholders: Iterable[str] = (),
) -> PropFormula:
    """Propositional image of a sentence with quantifiers bounded by `u`.

    `extensional` is an optional pair (symbols, true atoms): atoms of those
    symbols become ⊤/⊥ according to membership.
    """
    ph = set(placeholders)
    if ph:
        bad = {c.name for c in formula_constants(f) if isinstance(c, Sym)} & ph
        if bad:
            raise ValueError(f"formula contains placeholders {sorted(bad)}; apply a valuation first")
    if simp:
        return _SimpProp(u, extensional).run(f, dict(env or {}))
    return _fprop(f, u, extensional, simp, dict(env or {}))


class _SimpProp:
    """fprop followed by ⊤/⊥ absorption, computed bottom-up with short-circuiting.

    The result equals `simplify(fprop(f))`; subformula images are memoized on
    the values of their free variables.
    """

    def __init__(self, u, ext):
        self.u = u
        self.ext = ext
        self.memo: dict = {}
        self.fv: dict = {}

    def free(self, f) -> tuple:
        key = id(f)
        if key not in self.fv:
            self.fv[key] = (f, tuple(v.name for v in free_vars(f)))
        return self.fv[key][1]

    def run(self, f, env) -> PropFormula:
        key = (id(f), tuple(env[n] for n in self.free(f)))
        if key in self.memo:
            return self.memo[key]
        out = self._run(f, env)
        self.memo[key] = out
        return out

    def _run(self, f, env) -> PropFormula:
        if isinstance(f, (PredAtom, Compare, Bot)):
            return _fprop(f, self.u, self.ext, False, env)
        if isinstance(f, Implies):
            a = self.run(f.ante, env)
            if isinstance(a, PBot):
                return PTOP
            c = self.run(f.cons, env)
            if isinstance(c, PTop):
                return PTOP
            return c if isinstance(a, PTop) else PImp(a, c)
        if isinstance(f, (And, Or)):
            envs = (env for _ in f.items)
            parts = zip(f.items, envs)
        else:
            parts = self._instances(f, env)
        unit, zero = (PTop, PBot) if isinstance(f, (And, Forall)) else (PBot, PTop)
        out = []
        for g, e in parts:
            x = self.run(g, e)
            if isinstance(x, zero):
                return x
            if not isinstance(x, unit):
                out.append(x)
        if not out:
            return PTOP if unit is PTop else PBOT
        return pand(out) if unit is PTop else por(out)

    def _instances(self, f, env):
        for combo in itertools.product(*(domain(v, self.u) for v in f.vars)):
            env2 = dict(env)
            env2.update({v.name: c for v, c in zip(f.vars, combo)})
            yield f.body, env2


def _fprop(f, u, ext, simp, env) -> PropFormula:
    if isinstance(f, PredAtom):
        if f.variable:
            raise ValueError("predicate variables have no propositional image")
        atom = Atom(f.pred, tuple(eval_fo_term(t, env) for t in f.args))
        if ext is not None and f.symbol in ext[0]:
            return PTOP if atom in ext[1] else PBOT
        return PAtom(atom)
    if isinstance(f, Compare):
        ok = holds(f.rel, eval_fo_term(f.left, env), eval_fo_term(f.right, env))
        return PTOP if ok else PBOT
    if isinstance(f, Bot):
        return PBOT
    if isinstance(f, (And, Or)):
        items = tuple(_fprop(g, u, ext, simp, env) for g in f.items)
        out = pand(items) if isinstance(f, And) else por(items)
        if not items:
            out = PTOP if isinstance(f, And) else PBOT
        return simplify(out) if simp else out
    if isinstance(f, Implies):
        out = PImp(_fprop(f.ante, u, ext, simp, env), _fprop(f.cons, u, ext, simp, env))
        return simplify(out) if simp else out
    items = []
    for combo in itertools.product(*(domain(v, u) for v in f.vars)):
        env2 = dict(env)
        env2.update({v.name: c for v, c in zip(f.vars, combo)})
        items.append(_fprop(f.body, u, ext, simp, env2))
    if isinstance(f, Forall):
        out = pand(items) if items else PTOP
    else:
        out = por(items) if items else PBOT
    return simplify(out) if simp else out


def ht_counterexample(f: PropFormula, g: PropFormula, base: Iterable[Atom], limit: int = 12):
    """An HT pair over `base` distinguishing f from g, or None."""
    base = sorted(set(base), key=Atom.sort_key)
    if len(base) > limit:
        raise EnumerationLimitError(f"base of {len(base)} atoms exceeds limit {limit}")
    for labels in itertools.product((0, 1, 2), repeat=len(base)):
        here = frozenset(a for a, x in zip(base, labels) if x == 2)
        there = frozenset(a for a, x in zip(base, labels) if x >= 1)
        pair = HtPair(here, there)
        if ht_sat_all(pair, [f]) != ht_sat_all(pair, [g]):
            return pair
    return None


def ht_equivalent(f: PropFormula, g: PropFormula, base: Iterable[Atom], limit: int = 12) -> bool:
    return ht_counterexample(f, g, base, limit) is None


# -- printing ---------------------------------------------------------------

_UREL = {"=": "=", "!=": "≠", "<": "<", ">": ">", "<=": "≤", ">=": "≥"}
_PREC = {"+": 1, "-": 1, "*": 2}


def format_fo_term(t, parent: int = 0, right: bool = False) -> str:
    if isinstance(t, (ObjConst, ObjVar)):
        return str(t)
    if isinstance(t, AbsTerm):
        return f"|{format_fo_term(t.arg)}|"
    p = _PREC[t.op]
    s = f"{format_fo_term(t.left, p)}{t.op}{format_fo_term(t.right, p, True)}"
    return f"({s})" if p < parent or (p == parent and right) else s


def _fmt_atom(a: PredAtom) -> str:
    if not a.args:
        return a.pred
    return f"{a.pred}({','.join(format_fo_term(t) for t in a.args)})"


def format_formula(f: FoFormula, ascii: bool = False) -> str:
    return _fmt(f, ascii, top=True)


def _fmt(f, ascii, top=False) -> str:
    A = ascii

    def wrap(s):
        return s if top else f"({s})"

    if isinstance(f, PredAtom):
        return _fmt_atom(f)
    if isinstance(f, Compare):
        rel = f.rel if A else _UREL[f.rel]
        return f"{format_fo_term(f.left)} {rel} {format_fo_term(f.right)}"
    if isinstance(f, Bot):
        return "#bot" if A else "⊥"
    if is_top(f):
        return "#top" if A else "⊤"
    if is_neg(f):
        return ("not " if A else "¬") + _fmt(f.ante, A)
    pair = as_iff(f)
    if pair is not None:
        op = " <-> " if A else " ↔ "
        return wrap(_fmt(pair[0], A) + op + _fmt(pair[1], A))
    if isinstance(f, And):
        if not f.items:
            return "#top" if A else "⊤"
        return wrap((" and " if A else " ∧ ").join(_fmt(g, A) for g in f.items))
    if isinstance(f, Or):
        if not f.items:
            return "#bot" if A else "⊥"
        return wrap((" or " if A else " ∨ ").join(_fmt(g, A) for g in f.items))
    if isinstance(f, Implies):
        return wrap(_fmt(f.ante, A) + (" -> " if A else " → ") + _fmt(f.cons, A))
    names = " ".join(v.name for v in f.vars)
    if A:
        q = "forall" if isinstance(f, Forall) else "exists"
        return f"{q} {names} ({_fmt(f.body, A, top=True)})"
    q = "∀" if isinstance(f, Forall) else "∃"
    return f"{q}{names} ({_fmt(f.body, A, top=True)})"


def format_ascii(f: FoFormula) -> str:
    """ASCII form accepted by the formula parser, with a `#int` declaration when needed."""
    sorts: dict = {}
    for g in _subformulas(f):
        if isinstance(g, (Forall, Exists)):
            for v in g.vars:
                if sorts.setdefault(v.name, v.sort) != v.sort:
                    raise ValueError(f"variable name {v.name} is used with two sorts")
    for v in free_vars(f):
        if sorts.setdefault(v.name, v.sort) != v.sort:
            raise ValueError(f"variable name {v.name} is used with two sorts")
    ints = sorted(n for n, s in sorts.items() if s == INTEGER)
    body = format_formula(f, ascii=True)
    return (f"#int {', '.join(ints)}.\n" if ints else "") + body


def format_so(s: SoSentence, ascii: bool = False) -> str:
    body = format_formula(s.matrix, ascii)
    if not s.prefix:
        return body
    names = " ".join(name for name, _ in s.prefix)
    return (f"exists2 {names} ({body})" if ascii else f"∃{names} ({body})")


# -- JSON ---------------------------------------------------------------------


def term_to_json(t):
    if isinstance(t, ObjConst):
        if isinstance(t.value, Num):
            return ["num", t.value.value]
        return ["sym", t.value.name]
    if isinstance(t, ObjVar):
        return ["var", t.name, t.sort]
    if isinstance(t, AbsTerm):
        return ["abs", term_to_json(t.arg)]
    return [t.op, term_to_json(t.left), term_to_json(t.right)]


def to_json(f):
    """S-expression rendering of formulas and second-order sentences."""
    if isinstance(f, SoSentence):
        return ["exists2", [[name, n] for name, n in f.prefix], to_json(f.matrix)]
    if isinstance(f, CompletableSet):
        return {
            "intensional": [[p, n] for p, n in sorted(f.intensional)],
            "sentences": [to_json(s) for s in f.sentences],
        }
    if isinstance(f, PredAtom):
        return ["atom", f.pred, [term_to_json(t) for t in f.args], f.variable]
    if isinstance(f, Compare):
        return ["cmp", f.rel, term_to_json(f.left), term_to_json(f.right)]
    if isinstance(f, Bot):
        return ["bot"]
    if isinstance(f, And):
        return ["and", [to_json(g) for g in f.items]]
    if isinstance(f, Or):
        return ["or", [to_json(g) for g in f.items]]
    if isinstance(f, Implies):
        return ["imp", to_json(f.ante), to_json(f.cons)]
    tag = "forall" if isinstance(f, Forall) else "exists"
    return [tag, [[v.name, v.sort] for v in f.vars], to_json(f.body)]


def term_from_json(x):
    tag = x[0]
    if tag == "num":
        return ObjConst(Num(x[1]))
    if tag == "sym":
        return ObjConst(Sym(x[1]))
    if tag == "var":
        return ObjVar(x[1], x[2])
    if tag == "abs":
        return AbsTerm(term_from_json(x[1]))
    return ArithTerm(tag, term_from_json(x[1]), term_from_json(x[2]))


def from_json(x):
    if isinstance(x, dict):
        return CompletableSet(
            tuple(from_json(s) for s in x["sentences"]), frozenset(tuple(p) for p in x["intensional"])
        )
    tag = x[0]
    if tag == "exists2":
        return SoSentence(tuple((name, n) for name, n in x[1]), from_json(x[2]))
    if tag == "atom":
        return PredAtom(x[1], tuple(term_from_json(t) for t in x[2]), x[3])
    if tag == "cmp":
        return Compare(term_from_json(x[2]), x[1], term_from_json(x[3]))
    if tag == "bot":
        return BOTTOM
    if tag == "and":
        return And(tuple(from_json(g) for g in x[1]))
    if tag == "or":
        return Or(tuple(from_json(g) for g in x[1]))
    if tag == "imp":
        return Implies(from_json(x[1]), from_json(x[2]))
    vs = tuple(ObjVar(n, s) for n, s in x[1])
    return (Forall if tag == "forall" else Exists)(vs, from_json(x[2]))
