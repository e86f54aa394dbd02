"""Dependency graphs: predicate-level tightness, per-input local tightness, Pos and G^sp."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

import networkx as nx

from . import fol
from .ground import (
    PAnd,
    PAtom,
    PImp,
    POr,
    PropFormula,
    Universe,
    instances,
    prop_atoms,
)
from .stable import sat
from .syntax import (
    Atom,
    Comparison,
    Input,
    IoProgram,
    Literal,
    Program,
    apply_valuation,
    format_symbol,
    predicate_symbols,
    sorted_atoms,
)
from .values import eval_term, eval_tuple, holds


def _symbol_key(s):
    return (s[0].encode(), s[1])


# -- predicate dependency graph ----------------------------------------------


def pred_graph(prog: Program) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(sorted(predicate_symbols(prog), key=_symbol_key))
    edges = set()
    for rule in prog:
        if rule.head is None:
            continue
        for e in rule.body:
            if isinstance(e, Literal) and e.neg == 0:
                edges.add((rule.head.symbol, e.atom.symbol))
    g.add_edges_from(sorted(edges, key=lambda e: (_symbol_key(e[0]), _symbol_key(e[1]))))
    return g


def find_cycle(g: nx.DiGraph) -> Optional[list]:
    """A cycle as a list of edges, searched from vertices in insertion order."""
    try:
        return list(nx.find_cycle(g, source=list(g.nodes)))
    except nx.NetworkXNoCycle:
        return None


def is_tight(prog: Program) -> bool:
    return nx.is_directed_acyclic_graph(pred_graph(prog))


# -- atom dependency graph ---------------------------------------------------


@dataclass(frozen=True)
class LocallyTight:
    ok = True
    name = "LocallyTight"


@dataclass(frozen=True)
class TightShortcut:
    ok = True
    name = "TightShortcut"


@dataclass(frozen=True)
class CycleFound:
    cycle: tuple
    provenance: tuple = field(default=())
    ok = False
    name = "CycleFound"


def _element_ok(e, io: IoProgram, inp: Input) -> bool:
    """Conditions (c), (d), (e) for a single body element of a ground rule."""
    if isinstance(e, Comparison):
        left, right = eval_term(e.left), eval_term(e.right)
        return any(holds(e.rel, r1, r2) for r1 in left for r2 in right)
    if e.atom.symbol not in io.inputs:
        return True
    tuples = eval_tuple(e.atom.args)
    if e.neg == 1:
        return any(Atom(e.atom.pred, r) not in inp.atoms for r in tuples)
    return any(Atom(e.atom.pred, r) in inp.atoms for r in tuples)


def _in_universe(atom_args, u: Universe) -> bool:
    return all(t in u for t in atom_args)


def atom_graph(io: IoProgram, inp: Input, u: Universe) -> nx.DiGraph:
    """Positive dependency graph for an input, bounded by `u`.

    Each edge carries a `rule` attribute holding the first witnessing instance.
    """
    prog = apply_valuation(io.program, inp.valuation)
    local = set(io.outputs) | set(io.private)
    g = nx.DiGraph()
    for sym in sorted(local, key=_symbol_key):
        for args in itertools.product(u.terms(), repeat=sym[1]):
            g.add_node(Atom(sym[0], args))
    found: dict = {}
    for rule in prog:
        if rule.head is None or rule.head.symbol not in local:
            continue
        positives = [
            e for e in rule.body if isinstance(e, Literal) and e.neg == 0 and e.atom.symbol in local
        ]
        if not positives:
            continue
        for inst in instances(rule, u):
            if not all(_element_ok(e, io, inp) for e in inst.body):
                continue
            heads = [r for r in eval_tuple(inst.head.args) if _in_universe(r, u)]
            if not heads:
                continue
            for e in inst.body:
                if not (isinstance(e, Literal) and e.neg == 0 and e.atom.symbol in local):
                    continue
                for r2 in eval_tuple(e.atom.args):
                    if not _in_universe(r2, u):
                        continue
                    b = Atom(e.atom.pred, r2)
                    for r in heads:
                        found.setdefault((Atom(inst.head.pred, r), b), inst)
    for (a, b) in sorted(found, key=lambda e: (e[0].sort_key(), e[1].sort_key())):
        g.add_edge(a, b, rule=found[(a, b)])
    return g


def is_locally_tight(io: IoProgram, inp: Input, u: Universe):
    if is_tight(io.program):
        return TightShortcut()
    g = atom_graph(io, inp, u)
    cycle = find_cycle(g)
    if cycle is None:
        return LocallyTight()
    prov = tuple(g.edges[a, b]["rule"] for a, b in cycle)
    return CycleFound(tuple((a, b) for a, b in cycle), prov)


# -- Pos and G^sp ----------------------------------------------------------------


def _pos(j, f: PropFormula) -> set:
    if not prop_atoms(f) or not sat(j, f):
        return set()
    if isinstance(f, PAtom):
        return {f.atom}
    if isinstance(f, (PAnd, POr)):
        out: set = set()
        for g in f.items:
            out |= _pos(j, g)
        return out
    if isinstance(f, PImp):
        return _pos(j, f.cons)
    return set()


def pos_atoms(
    j: Iterable[Atom],
    f,
    u: Optional[Universe] = None,
    extensional: Optional[tuple] = None,
    env: Optional[Mapping] = None,
) -> set:
    """Strictly positive atoms of f that are true in j.

    First-order input is expanded over `u` first; atoms of `extensional`
    symbols are evaluated against the pair (symbols, true atoms).
    """
    j = frozenset(j)
    if isinstance(f, fol.FoFormula):
        if u is None:
            raise ValueError("a universe is needed for first-order formulas")
        f = fol.fprop(f, u, extensional, env=env)
    return _pos(j, f)


def gsp_graph(
    j: Iterable[Atom],
    gamma: "fol.CompletableSet",
    u: Universe,
    extensional: Optional[tuple] = None,
) -> nx.DiGraph:
    """Positive dependency graph of a completable set relative to j (semi-Herbrand form)."""
    j = frozenset(j)
    g = nx.DiGraph()
    g.add_nodes_from(a for a in sorted_atoms(j) if a.symbol in gamma.intensional)
    edges = set()
    for s in gamma.sentences:
        closure, ante, cons = fol.split_completable(s)
        for combo in itertools.product(*(fol.domain(v, u) for v in closure)):
            env = {v.name: c for v, c in zip(closure, combo)}
            heads = pos_atoms(j, cons, u, extensional, env)
            if not heads:
                continue
            for a in heads:
                for b in pos_atoms(j, ante, u, extensional, env):
                    edges.add((a, b))
    g.add_edges_from(sorted(edges, key=lambda e: (e[0].sort_key(), e[1].sort_key())))
    return g


# -- export --------------------------------------------------------------------


def _label(x) -> str:
    if isinstance(x, tuple):
        return format_symbol(x)
    return str(x)


def to_dot(g: nx.DiGraph, name: str = "G") -> str:
    """DOT text with vertices and edges in a deterministic order."""

    def key(x):
        return x.sort_key() if isinstance(x, Atom) else (1, _symbol_key(x))

    lines = [f"digraph {name} {{"]
    for v in sorted(g.nodes, key=key):
        lines.append(f'  "{_label(v)}";')
    for a, b in sorted(g.edges, key=lambda e: (key(e[0]), key(e[1]))):
        rule = g.edges[a, b].get("rule")
        attr = f' [label="{rule}"]' if rule is not None else ""
        lines.append(f'  "{_label(a)}" -> "{_label(b)}"{attr};')
    lines.append("}")
    return "\n".join(lines) + "\n"
