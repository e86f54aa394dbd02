"""Concrete-syntax printing of mini-gringo ASTs (parseable by `parser`)."""

from __future__ import annotations

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
    format_symbol,
    sorted_atoms,
)

_PREC = {"..": 0, "+": 1, "-": 1, "*": 2, "/": 2, "\\": 2}


def format_term(t, parent: int = -1, right: bool = False) -> str:
    if isinstance(t, (Num, Sym, Var)):
        return str(t)
    if isinstance(t, Abs):
        return f"|{format_term(t.arg)}|"
    prec = _PREC[t.op]
    left = format_term(t.left, prec, False)
    rhs = format_term(t.right, prec, True)
    s = f"{left}{t.op}{rhs}"
    if prec < parent or (prec == parent and (right or t.op == "..")):
        return f"({s})"
    return s


def format_atom(a: Atom) -> str:
    if not a.args:
        return a.pred
    return f"{a.pred}({','.join(format_term(t) for t in a.args)})"


def format_element(e) -> str:
    if isinstance(e, Literal):
        return "not " * e.neg + format_atom(e.atom)
    assert isinstance(e, Comparison)
    return f"{format_term(e.left)} {e.rel} {format_term(e.right)}"


def format_rule(r: Rule) -> str:
    body = ", ".join(format_element(e) for e in r.body)
    if r.head is None:
        return f":- {body}."
    head = format_atom(r.head)
    if r.choice:
        head = "{" + head + "}"
    return f"{head} :- {body}." if body else f"{head}."


def format_program(prog: Program) -> str:
    return "".join(format_rule(r) + "\n" for r in prog)


def format_io_program(io: IoProgram) -> str:
    lines = []
    if io.placeholders:
        lines.append("#placeholder " + ", ".join(sorted(io.placeholders)) + ".")
    if io.inputs:
        lines.append("#input " + ", ".join(format_symbol(s) for s in sorted(io.inputs)) + ".")
    if io.outputs:
        lines.append("#output " + ", ".join(format_symbol(s) for s in sorted(io.outputs)) + ".")
    head = "".join(line + "\n" for line in lines)
    return head + format_program(io.program)


def format_input(inp: Input) -> str:
    lines = [f"#let {c} = {inp.valuation[c]}." for c in sorted(inp.valuation)]
    lines += [format_atom(a) + "." for a in sorted_atoms(inp.atoms)]
    return "".join(line + "\n" for line in lines)


def format_atoms(atoms) -> str:
    return "{" + ", ".join(format_atom(a) for a in sorted_atoms(atoms)) + "}"
