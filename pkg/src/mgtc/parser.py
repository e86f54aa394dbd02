"""Recursive-descent parser for programs (.mg), inputs (.in) and formulas (.fo)."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from . import fol
from .syntax import (
    RELATIONS,
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
)


@dataclass(frozen=True)
class SourceSpan:
    file: str
    start: int
    end: int
    line: int
    col: int

    def __post_init__(self):
        if self.start > self.end:
            raise ValueError("span start after end")

    def __str__(self):
        return f"{self.file}:{self.line}:{self.col}"


class ParseError(ValueError):
    def __init__(self, span: SourceSpan, message: str, expected=frozenset()):
        if not message:
            raise ValueError("parse error message must be nonempty")
        self.span = span
        self.message = message
        self.expected = frozenset(expected)
        text = f"{span}: {message}"
        if self.expected:
            text += " (expected " + ", ".join(sorted(self.expected)) + ")"
        super().__init__(text)


# -- lexer --------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+|%[^\n]*)
  | (?P<directive>\#[a-z]+)
  | (?P<num>[0-9]+)
  | (?P<ident>[a-z_][A-Za-z0-9_']*)
  | (?P<var>[A-Z][A-Za-z0-9_']*)
  | (?P<op><->|->|:-|\.\.|!=|<=|>=|[.,(){}|+\-*/\\=<>])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # num, ident, var, directive, op, eof
    text: str
    start: int
    end: int


def tokenize(text: str, file: str = "<input>") -> list:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(_span(text, file, pos, pos + 1), f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        if kind != "ws":
            out.append(Token(kind, m.group(), pos, m.end()))
        pos = m.end()
    out.append(Token("eof", "", len(text), len(text)))
    return out


def _span(text: str, file: str, start: int, end: int) -> SourceSpan:
    line = text.count("\n", 0, start) + 1
    col = start - (text.rfind("\n", 0, start) + 1) + 1
    return SourceSpan(file, start, end, line, col)


def _describe(tok: Token) -> str:
    return "end of input" if tok.kind == "eof" else repr(tok.text)


class _Parser:
    def __init__(self, text: str, file: str):
        self.text = text
        self.file = file
        self.toks = tokenize(text, file)
        self.i = 0

    # token helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, text: str) -> bool:
        t = self.tok
        return t.kind in ("op", "directive") and t.text == text or (t.kind == "ident" and t.text == text)

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def span(self, tok: Optional[Token] = None) -> SourceSpan:
        tok = tok or self.tok
        return _span(self.text, self.file, tok.start, tok.end)

    def error(self, message: str, expected=(), tok: Optional[Token] = None) -> ParseError:
        return ParseError(self.span(tok), message, expected)

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.error(f"unexpected {_describe(self.tok)}", {repr(text)})
        return self.advance()

    def expect_kind(self, kind: str, what: str) -> Token:
        if self.tok.kind != kind:
            raise self.error(f"unexpected {_describe(self.tok)}", {what})
        return self.advance()

    # terms (shared by programs and formulas through the builder callbacks)
    def term(self, mk) -> object:
        left = self.sum(mk)
        if self.at(".."):
            op = self.advance()
            right = self.sum(mk)
            if self.at(".."):
                raise self.error("'..' is not associative; use parentheses")
            return mk.binop("..", left, right, op)
        return left

    def sum(self, mk):
        left = self.prod(mk)
        while self.tok.kind == "op" and self.tok.text in ("+", "-"):
            op = self.advance()
            left = mk.binop(op.text, left, self.prod(mk), op)
        return left

    def prod(self, mk):
        left = self.term_unary(mk)
        while self.tok.kind == "op" and self.tok.text in ("*", "/", "\\"):
            op = self.advance()
            left = mk.binop(op.text, left, self.term_unary(mk), op)
        return left

    def term_unary(self, mk):
        if self.at("-"):
            op = self.advance()
            if self.tok.kind == "num":
                return mk.num(-int(self.advance().text))
            return mk.binop("-", mk.num(0), self.term_unary(mk), op)
        return self.primary(mk)

    def primary(self, mk):
        t = self.tok
        if t.kind == "num":
            self.advance()
            return mk.num(int(t.text))
        if t.kind == "ident":
            if t.text == "not":
                raise self.error("unexpected keyword 'not'", {"term"})
            self.advance()
            return mk.sym(t.text)
        if t.kind == "var":
            self.advance()
            return mk.var(t.text, t)
        if self.at("("):
            self.advance()
            inner = self.term(mk)
            self.expect(")")
            return inner
        if self.at("|"):
            self.advance()
            inner = self.term(mk)
            self.expect("|")
            return mk.abs(inner)
        raise self.error(f"unexpected {_describe(t)}", {"term"})


class _MgTerms:
    def num(self, n):
        return Num(n)

    def sym(self, name):
        return Sym(name)

    def var(self, name, tok):
        return Var(name)

    def abs(self, t):
        return Abs(t)

    def binop(self, op, left, right, tok):
        return BinOp(op, left, right)


_MG = _MgTerms()


# -- programs -----------------------------------------------------------------


class _ProgramParser(_Parser):
    def atom(self) -> Atom:
        name = self.expect_kind("ident", "predicate name")
        if name.text == "not":
            raise self.error("unexpected keyword 'not'", {"atom"}, name)
        args = []
        if self.at("("):
            self.advance()
            args.append(self.term(_MG))
            while self.at(","):
                self.advance()
                args.append(self.term(_MG))
            self.expect(")")
        return Atom(name.text, tuple(args))

    def element(self):
        if self.at("not"):
            self.advance()
            neg = 1
            if self.at("not"):
                self.advance()
                neg = 2
            return Literal(neg, self.atom())
        t = self.tok
        if t.kind == "ident":
            nxt = self.peek()
            if nxt.text == "(" or nxt.text in (",", ".") or nxt.kind == "eof":
                return Literal(0, self.atom())
        left = self.term(_MG)
        if not (self.tok.kind == "op" and self.tok.text in RELATIONS):
            raise self.error(f"unexpected {_describe(self.tok)}", {"comparison operator"})
        rel = self.advance().text
        right = self.term(_MG)
        return Comparison(left, rel, right)

    def body(self) -> tuple:
        if self.at("."):
            return ()
        items = [self.element()]
        while self.at(","):
            self.advance()
            items.append(self.element())
        return tuple(items)

    def symbol(self) -> tuple:
        name = self.expect_kind("ident", "predicate name")
        self.expect("/")
        n = self.expect_kind("num", "arity")
        return (name.text, int(n.text))

    def directive(self, decl):
        d = self.advance()
        if d.text == "#placeholder":
            decl["placeholders"].add(self.expect_kind("ident", "constant").text)
            while self.at(","):
                self.advance()
                decl["placeholders"].add(self.expect_kind("ident", "constant").text)
        elif d.text in ("#input", "#output"):
            key = "inputs" if d.text == "#input" else "outputs"
            decl[key].add(self.symbol())
            while self.at(","):
                self.advance()
                decl[key].add(self.symbol())
        else:
            raise self.error(f"unknown directive {d.text}", {"#placeholder", "#input", "#output"}, d)
        self.expect(".")

    def program(self) -> IoProgram:
        decl = {"placeholders": set(), "inputs": set(), "outputs": set()}
        rules = []
        heads = []
        while self.tok.kind != "eof":
            if self.tok.kind == "directive":
                self.directive(decl)
                continue
            if self.at(":-"):
                self.advance()
                rules.append(Rule(None, self.body()))
                self.expect(".")
                continue
            start = self.tok
            choice = False
            if self.at("{"):
                self.advance()
                choice = True
                head = self.atom()
                self.expect("}")
            else:
                head = self.atom()
            body: tuple = ()
            if self.at(":-"):
                self.advance()
                body = self.body()
            self.expect(".")
            rules.append(Rule(head, body, choice))
            heads.append((head, start))
        for head, tok in heads:
            if head.symbol in decl["inputs"]:
                raise self.error(
                    f"input symbol {head.pred}/{len(head.args)} occurs in a rule head", (), tok
                )
        try:
            return IoProgram(Program(tuple(rules)), **decl)
        except SyntaxValidationError as exc:
            raise self.error(str(exc), (), self.toks[0]) from None


def parse_program(text: str, file: str = "<program>") -> IoProgram:
    """Parse a program with optional #placeholder/#input/#output directives."""
    return _ProgramParser(text, file).program()


def parse_rules(text: str, file: str = "<program>") -> Program:
    return parse_program(text, file).program


def parse_term(text: str, file: str = "<term>"):
    p = _Parser(text, file)
    t = p.term(_MG)
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {_describe(p.tok)}", {"end of input"})
    return t


# -- inputs -------------------------------------------------------------------


class _InputParser(_ProgramParser):
    def precomputed(self):
        if self.at("-"):
            self.advance()
            return Num(-int(self.expect_kind("num", "numeral").text))
        t = self.tok
        if t.kind == "num":
            self.advance()
            return Num(int(t.text))
        if t.kind == "ident":
            self.advance()
            return Sym(t.text)
        raise self.error(f"unexpected {_describe(t)}", {"numeral", "symbolic constant"})

    def parse(self, io: Optional[IoProgram]) -> Input:
        valuation = {}
        atoms = []
        while self.tok.kind != "eof":
            if self.at("#let"):
                self.advance()
                c = self.expect_kind("ident", "placeholder")
                self.expect("=")
                vtok = self.tok
                value = self.precomputed()
                self.expect(".")
                if io is not None and c.text not in io.placeholders:
                    raise self.error(f"{c.text} is not a placeholder", (), c)
                if io is not None and isinstance(value, Sym) and value.name in io.placeholders:
                    raise self.error(f"placeholder {c.text} is mapped to placeholder {value}", (), vtok)
                valuation[c.text] = value
                continue
            start = self.tok
            a = self.atom()
            self.expect(".")
            if not a.is_precomputed:
                raise self.error(f"input fact {a} is not precomputed", (), start)
            if io is not None:
                if a.symbol not in io.inputs:
                    raise self.error(f"{a.pred}/{len(a.args)} is not an input symbol", (), start)
                if any(isinstance(t, Sym) and t.name in io.placeholders for t in a.args):
                    raise self.error(f"input fact {a} contains a placeholder", (), start)
            atoms.append((a, start))
        try:
            return Input(valuation, frozenset(a for a, _ in atoms))
        except SyntaxValidationError as exc:
            raise self.error(str(exc), (), self.toks[0]) from None


def parse_input(text: str, io: Optional[IoProgram] = None, file: str = "<input>") -> Input:
    """Parse `#let c = t.` lines and precomputed facts; validated against `io` if given."""
    return _InputParser(text, file).parse(io)


# -- formulas -----------------------------------------------------------------

_QUANT = ("forall", "exists")


class _FoTerms:
    def __init__(self, parser):
        self.p = parser

    def num(self, n):
        return fol.ObjConst(Num(n))

    def sym(self, name):
        return fol.ObjConst(Sym(name))

    def var(self, name, tok):
        sort = fol.INTEGER if name in self.p.int_names else fol.GENERAL
        return fol.ObjVar(name, sort)

    def abs(self, t):
        self._integer(t, None)
        return fol.AbsTerm(t)

    def binop(self, op, left, right, tok):
        if op not in ("+", "-", "*"):
            raise self.p.error(f"operation {op!r} is not available in formulas", (), tok)
        self._integer(left, tok)
        self._integer(right, tok)
        return fol.ArithTerm(op, left, right)

    def _integer(self, t, tok):
        if fol.term_sort(t) != fol.INTEGER:
            raise self.p.error(
                f"arithmetic on general term {fol.format_fo_term(t)}; declare integer variables with #int",
                (),
                tok,
            )


class _FormulaParser(_Parser):
    def __init__(self, text, file):
        super().__init__(text, file)
        self.int_names: set = set()
        self.mk = _FoTerms(self)

    def formula(self):
        left = self.implication()
        if self.at("<->"):
            self.advance()
            return fol.iff(left, self.implication())
        return left

    def implication(self):
        left = self.disjunction()
        if self.at("->"):
            self.advance()
            return fol.Implies(left, self.implication())
        return left

    def disjunction(self):
        items = [self.conjunction()]
        while self.at("or"):
            self.advance()
            items.append(self.conjunction())
        return fol.disj(items)

    def conjunction(self):
        items = [self.unary()]
        while self.at("and"):
            self.advance()
            items.append(self.unary())
        return fol.conj(items)

    def unary(self):
        if self.at("not"):
            self.advance()
            return fol.neg(self.unary())
        if self.tok.kind == "ident" and self.tok.text in _QUANT:
            q = self.advance().text
            vs = [self.expect_kind("var", "variable")]
            while self.tok.kind == "var":
                vs.append(self.advance())
            objs = tuple(self.mk.var(v.text, v) for v in vs)
            body = self.unary()
            return (fol.Forall if q == "forall" else fol.Exists)(objs, body)
        return self.primary_formula()

    def primary_formula(self):
        t = self.tok
        if self.at("#top"):
            self.advance()
            return fol.TOP
        if self.at("#bot"):
            self.advance()
            return fol.BOTTOM
        if self.at("("):
            saved = self.i
            try:
                return self.comparison()
            except ParseError:
                self.i = saved
            self.advance()
            inner = self.formula()
            self.expect(")")
            return inner
        if t.kind == "ident" and t.text not in ("and", "or", "not") + _QUANT:
            nxt = self.peek()
            if nxt.text == "(" or not (nxt.kind == "op" and nxt.text in RELATIONS + ("+", "-", "*", "/", "\\", "..")):
                return self.pred_atom()
        return self.comparison()

    def pred_atom(self):
        name = self.advance().text
        args = []
        if self.at("("):
            self.advance()
            args.append(self.term(self.mk))
            while self.at(","):
                self.advance()
                args.append(self.term(self.mk))
            self.expect(")")
        return fol.PredAtom(name, tuple(args))

    def comparison(self):
        left = self.term(self.mk)
        if not (self.tok.kind == "op" and self.tok.text in RELATIONS):
            raise self.error(f"unexpected {_describe(self.tok)}", {"comparison operator"})
        rel = self.advance().text
        return fol.Compare(left, rel, self.term(self.mk))

    def declarations(self):
        while self.at("#int"):
            self.advance()
            self.int_names.add(self.expect_kind("var", "variable").text)
            while self.at(","):
                self.advance()
                self.int_names.add(self.expect_kind("var", "variable").text)
            self.expect(".")

    def sentence(self, closed: bool):
        start = self.tok
        f = self.formula()
        if closed:
            free = fol.free_vars(f)
            if free:
                end = self.toks[self.i - 1]
                raise ParseError(
                    _span(self.text, self.file, start.start, end.end),
                    "unbound variables: " + ", ".join(v.name for v in free),
                )
        return f

    def parse(self, closed: bool):
        self.declarations()
        f = self.sentence(closed)
        if self.at("."):
            self.advance()
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {_describe(self.tok)}", {"end of input"})
        return f

    def parse_many(self, closed: bool) -> list:
        self.declarations()
        out = []
        while self.tok.kind != "eof":
            out.append(self.sentence(closed))
            if self.tok.kind == "eof":
                break
            self.expect(".")
        return out


def parse_formula(text: str, file: str = "<formula>", closed: bool = True):
    """Parse a formula over the two-sorted signature; sentences by default."""
    return _FormulaParser(text, file).parse(closed)


def parse_theory(text: str, file: str = "<theory>", closed: bool = True) -> list:
    """Parse a list of sentences, each terminated by '.' (the last one optionally)."""
    return _FormulaParser(text, file).parse_many(closed)
