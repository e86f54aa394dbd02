"""Abstract syntax of mini-gringo programs and io-programs.

Precomputed terms (numerals and symbolic constants) carry a fixed total
order: numerals compare as integers, every numeral precedes every symbolic
constant, and symbolic constants compare by the bytes of their names.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Union

RELATIONS = ("=", "!=", "<", ">", "<=", ">=")
OPERATORS = ("+", "-", "*", "/", "\\", "..")


class SyntaxValidationError(ValueError):
    """An AST value violates a structural invariant."""


class _Precomputed:
    __slots__ = ()

    def sort_key(self) -> tuple:
        raise NotImplementedError

    def __lt__(self, other):
        if not isinstance(other, _Precomputed):
            return NotImplemented
        return self.sort_key() < other.sort_key()

    def __le__(self, other):
        if not isinstance(other, _Precomputed):
            return NotImplemented
        return self.sort_key() <= other.sort_key()

    def __gt__(self, other):
        if not isinstance(other, _Precomputed):
            return NotImplemented
        return self.sort_key() > other.sort_key()

    def __ge__(self, other):
        if not isinstance(other, _Precomputed):
            return NotImplemented
        return self.sort_key() >= other.sort_key()


@dataclass(frozen=True, eq=True, order=False)
class Num(_Precomputed):
    value: int

    def sort_key(self) -> tuple:
        return (0, self.value, b"")

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True, eq=True, order=False)
class Sym(_Precomputed):
    name: str

    def __post_init__(self):
        if not self.name:
            raise SyntaxValidationError("symbolic constant needs a nonempty name")

    def sort_key(self) -> tuple:
        return (1, 0, self.name.encode("utf-8"))

    def __str__(self) -> str:
        return self.name


PrecomputedTerm = Union[Num, Sym]


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Abs:
    arg: "Term"

    def __str__(self) -> str:
        return f"|{self.arg}|"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Term"
    right: "Term"

    def __post_init__(self):
        if self.op not in OPERATORS:
            raise SyntaxValidationError(f"unknown operation {self.op!r}")

    def __str__(self) -> str:
        from .printer import format_term

        return format_term(self)


Term = Union[Num, Sym, Var, Abs, BinOp]
PredicateSymbol = tuple  # (name, arity)


def is_precomputed(t) -> bool:
    return isinstance(t, (Num, Sym))


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple = ()

    def __post_init__(self):
        if not self.pred or not (self.pred[0].islower() or self.pred[0] == "_"):
            raise SyntaxValidationError(f"bad predicate name {self.pred!r}")
        object.__setattr__(self, "args", tuple(self.args))

    @property
    def symbol(self) -> PredicateSymbol:
        return (self.pred, len(self.args))

    @property
    def is_precomputed(self) -> bool:
        return all(is_precomputed(a) for a in self.args)

    def sort_key(self) -> tuple:
        return (self.pred, len(self.args), tuple(a.sort_key() for a in self.args))

    def __lt__(self, other: "Atom") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        if not self.args:
            return self.pred
        return f"{self.pred}({','.join(str(a) for a in self.args)})"


@dataclass(frozen=True)
class Literal:
    neg: int
    atom: Atom

    def __post_init__(self):
        if self.neg not in (0, 1, 2):
            raise SyntaxValidationError("a literal has at most two negations")

    def __str__(self) -> str:
        return "not " * self.neg + str(self.atom)


@dataclass(frozen=True)
class Comparison:
    left: Term
    rel: str
    right: Term

    def __post_init__(self):
        if self.rel not in RELATIONS:
            raise SyntaxValidationError(f"unknown relation {self.rel!r}")

    def __str__(self) -> str:
        from .printer import format_term

        return f"{format_term(self.left)} {self.rel} {format_term(self.right)}"


BodyElement = Union[Literal, Comparison]


@dataclass(frozen=True)
class Rule:
    """`head` is None for constraints; `choice` marks `{head} :- body`."""

    head: Atom | None
    body: tuple = ()
    choice: bool = False

    def __post_init__(self):
        object.__setattr__(self, "body", tuple(self.body))
        if self.choice and self.head is None:
            raise SyntaxValidationError("a choice rule needs a head atom")

    @property
    def is_constraint(self) -> bool:
        return self.head is None

    @property
    def is_fact(self) -> bool:
        return (
            self.head is not None
            and not self.choice
            and not self.body
            and self.head.is_precomputed
        )

    def __str__(self) -> str:
        from .printer import format_rule

        return format_rule(self)


@dataclass(frozen=True)
class Program:
    rules: tuple = ()

    def __post_init__(self):
        seen: dict = {}
        for r in self.rules:
            seen.setdefault(r, None)
        object.__setattr__(self, "rules", tuple(seen))

    def __iter__(self) -> Iterator[Rule]:
        return iter(self.rules)

    def __len__(self) -> int:
        return len(self.rules)

    def __or__(self, other: "Program") -> "Program":
        return Program(self.rules + tuple(other.rules))


@dataclass(frozen=True)
class IoProgram:
    program: Program
    placeholders: frozenset = frozenset()
    inputs: frozenset = frozenset()
    outputs: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "placeholders", frozenset(self.placeholders))
        object.__setattr__(self, "inputs", frozenset(tuple(s) for s in self.inputs))
        object.__setattr__(self, "outputs", frozenset(tuple(s) for s in self.outputs))
        clash = self.inputs & self.outputs
        if clash:
            raise SyntaxValidationError(
                f"symbols declared both input and output: {_fmt_symbols(clash)}"
            )
        for rule in self.program:
            if rule.head is not None and rule.head.symbol in self.inputs:
                raise SyntaxValidationError(
                    f"input symbol {_fmt_symbol(rule.head.symbol)} occurs in a rule head"
                )
        used_preds = {name for name, _ in predicate_symbols(self.program)}
        bad = used_preds & self.placeholders
        if bad:
            raise SyntaxValidationError(
                f"placeholders cannot be predicate names: {', '.join(sorted(bad))}"
            )

    @property
    def public(self) -> frozenset:
        return self.inputs | self.outputs

    @property
    def private(self) -> frozenset:
        return frozenset(predicate_symbols(self.program)) - self.public

    def with_program(self, program: Program) -> "IoProgram":
        return IoProgram(program, self.placeholders, self.inputs, self.outputs)


@dataclass(frozen=True)
class Input:
    valuation: Mapping = field(default_factory=dict)
    atoms: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "valuation", _FrozenDict(self.valuation))
        object.__setattr__(self, "atoms", frozenset(self.atoms))
        for c, value in self.valuation.items():
            if not is_precomputed(value):
                raise SyntaxValidationError(f"value of placeholder {c} is not precomputed")
            if isinstance(value, Sym) and value.name in self.valuation:
                raise SyntaxValidationError(
                    f"placeholder {c} is mapped to placeholder {value.name}"
                )
        for a in self.atoms:
            if not a.is_precomputed:
                raise SyntaxValidationError(f"input atom {a} is not precomputed")
            for arg in a.args:
                if isinstance(arg, Sym) and arg.name in self.valuation:
                    raise SyntaxValidationError(f"input atom {a} contains a placeholder")

    def key(self) -> tuple:
        return (
            tuple(sorted((k, v.sort_key()) for k, v in self.valuation.items())),
            tuple(sorted(a.sort_key() for a in self.atoms)),
        )


class _FrozenDict(dict):
    """Hashable read-only dict used for valuations."""

    def __hash__(self):
        return hash(tuple(sorted(self.items(), key=lambda kv: kv[0])))

    def _readonly(self, *a, **k):
        raise TypeError("valuation is immutable")

    __setitem__ = __delitem__ = clear = pop = popitem = setdefault = update = _readonly


def validate_input(io: IoProgram, inp: Input) -> None:
    """Raise SyntaxValidationError unless `inp` is an input for `io`."""
    extra = set(inp.valuation) - io.placeholders
    if extra:
        raise SyntaxValidationError(f"valuation defines non-placeholders: {sorted(extra)}")
    missing = io.placeholders - set(inp.valuation)
    if missing:
        raise SyntaxValidationError(f"placeholders without a value: {sorted(missing)}")
    for c, value in inp.valuation.items():
        if isinstance(value, Sym) and value.name in io.placeholders:
            raise SyntaxValidationError(f"placeholder {c} is mapped into PH")
    for a in inp.atoms:
        if a.symbol not in io.inputs:
            raise SyntaxValidationError(f"{_fmt_symbol(a.symbol)} is not an input symbol")
        for arg in a.args:
            if isinstance(arg, Sym) and arg.name in io.placeholders:
                raise SyntaxValidationError(f"input atom {a} contains a placeholder")


# -- traversal helpers ------------------------------------------------------


def term_variables(t: Term) -> list:
    if isinstance(t, Var):
        return [t.name]
    if isinstance(t, Abs):
        return term_variables(t.arg)
    if isinstance(t, BinOp):
        return term_variables(t.left) + term_variables(t.right)
    return []


def term_constants(t: Term) -> Iterator:
    if isinstance(t, (Num, Sym)):
        yield t
    elif isinstance(t, Abs):
        yield from term_constants(t.arg)
    elif isinstance(t, BinOp):
        yield from term_constants(t.left)
        yield from term_constants(t.right)


def element_terms(e) -> tuple:
    if isinstance(e, Literal):
        return e.atom.args
    if isinstance(e, Comparison):
        return (e.left, e.right)
    if isinstance(e, Atom):
        return e.args
    raise TypeError(e)


def rule_terms(rule: Rule) -> list:
    out = list(rule.head.args) if rule.head is not None else []
    for e in rule.body:
        out.extend(element_terms(e))
    return out


def rule_variables(rule: Rule) -> list:
    """Variables of a rule in order of first occurrence."""
    seen: dict = {}
    for t in rule_terms(rule):
        for v in term_variables(t):
            seen.setdefault(v, None)
    return list(seen)


def program_variables(prog: Program) -> set:
    return {v for r in prog for v in rule_variables(r)}


def rule_atoms(rule: Rule) -> list:
    atoms = [rule.head] if rule.head is not None else []
    atoms.extend(e.atom for e in rule.body if isinstance(e, Literal))
    return atoms


def predicate_symbols(prog: Program) -> list:
    seen: dict = {}
    for r in prog:
        for a in rule_atoms(r):
            seen.setdefault(a.symbol, None)
    return list(seen)


def constants(x) -> set:
    """Precomputed terms occurring as object constants in a program, rule or atom set."""
    out: set = set()
    if isinstance(x, Program):
        for r in x:
            out |= constants(r)
    elif isinstance(x, Rule):
        for t in rule_terms(x):
            out.update(term_constants(t))
    elif isinstance(x, Atom):
        for t in x.args:
            out.update(term_constants(t))
    else:
        for item in x:
            out |= constants(item)
    return out


# -- valuations -------------------------------------------------------------


def _subst_term(t: Term, v: Mapping) -> Term:
    if isinstance(t, Sym):
        return v.get(t.name, t)
    if isinstance(t, Abs):
        return Abs(_subst_term(t.arg, v))
    if isinstance(t, BinOp):
        return BinOp(t.op, _subst_term(t.left, v), _subst_term(t.right, v))
    return t


def _subst_atom(a: Atom, v: Mapping) -> Atom:
    return Atom(a.pred, tuple(_subst_term(t, v) for t in a.args))


def _subst_element(e, v: Mapping):
    if isinstance(e, Literal):
        return Literal(e.neg, _subst_atom(e.atom, v))
    return Comparison(_subst_term(e.left, v), e.rel, _subst_term(e.right, v))


def _subst_rule(r: Rule, v: Mapping) -> Rule:
    head = _subst_atom(r.head, v) if r.head is not None else None
    return Rule(head, tuple(_subst_element(e, v) for e in r.body), r.choice)


def apply_valuation(x, v: Mapping):
    """Replace every occurrence of each constant in dom(v) by its value.

    Works on terms, atoms, literals, comparisons, rules, programs, and on
    first-order formulas or second-order sentences.
    """
    if not v:
        return x
    if isinstance(x, (Num, Sym, Var, Abs, BinOp)):
        return _subst_term(x, v)
    if isinstance(x, Atom):
        return _subst_atom(x, v)
    if isinstance(x, (Literal, Comparison)):
        return _subst_element(x, v)
    if isinstance(x, Rule):
        return _subst_rule(x, v)
    if isinstance(x, Program):
        return Program(tuple(_subst_rule(r, v) for r in x))
    from . import fol

    return fol.substitute_constants(x, v)


# -- projections ------------------------------------------------------------


def public_projection(atoms: Iterable[Atom], io: IoProgram) -> frozenset:
    public = io.public
    return frozenset(a for a in atoms if a.symbol in public)


def input_projection(atoms: Iterable[Atom], io: IoProgram) -> frozenset:
    return frozenset(a for a in atoms if a.symbol in io.inputs)


def sorted_atoms(atoms: Iterable[Atom]) -> list:
    return sorted(atoms, key=Atom.sort_key)


def _fmt_symbol(s) -> str:
    return f"{s[0]}/{s[1]}"


def _fmt_symbols(syms) -> str:
    return ", ".join(_fmt_symbol(s) for s in sorted(syms))


def format_symbol(s) -> str:
    return _fmt_symbol(s)


# -- JSON ----------------------------------------------------------------------


def term_to_json(t: Term):
    if isinstance(t, Num):
        return ["num", t.value]
    if isinstance(t, Sym):
        return ["sym", t.name]
    if isinstance(t, Var):
        return ["var", t.name]
    if isinstance(t, Abs):
        return ["abs", term_to_json(t.arg)]
    return [t.op, term_to_json(t.left), term_to_json(t.right)]


def atom_to_json(a: Atom) -> dict:
    return {"pred": a.pred, "args": [term_to_json(t) for t in a.args]}


def element_to_json(e) -> dict:
    if isinstance(e, Literal):
        return {"literal": {"neg": e.neg, "atom": atom_to_json(e.atom)}}
    return {"comparison": {"rel": e.rel, "left": term_to_json(e.left), "right": term_to_json(e.right)}}


def rule_to_json(r: Rule) -> dict:
    return {
        "head": None if r.head is None else atom_to_json(r.head),
        "choice": r.choice,
        "body": [element_to_json(e) for e in r.body],
    }


def io_program_to_json(io: IoProgram) -> dict:
    def syms(ss):
        return [[n, k] for n, k in sorted(ss, key=lambda s: (s[0].encode(), s[1]))]

    return {
        "placeholders": sorted(io.placeholders, key=str.encode),
        "inputs": syms(io.inputs),
        "outputs": syms(io.outputs),
        "rules": [rule_to_json(r) for r in io.program],
    }
