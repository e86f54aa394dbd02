"""Seeded randomized suites behind `mgtc verify ... --random` and the property tests."""

from __future__ import annotations

import itertools
import random
import time

from . import fol
from .check import Report, atoms_json, io_models, verify_main_lemma, verify_theorem1, verify_theorem2
from .fol import ht_counterexample
from .graphs import atom_graph, find_cycle, is_tight
from .ground import TOP, Universe, instances, pand, prop_atoms, tau_rule
from .printer import format_io_program, format_program, format_rule
from .randgen import (
    IO_SHAPE,
    Shape,
    random_ground_completable,
    random_input,
    random_program,
    random_rule,
    random_tight_io_program,
    small_universe,
)
from .stable import EnumerationLimitError
from .syntax import Atom, Program


def _summary(kind: str, n: int, seed: int, failures: list, u: Universe, t0: float, extra=None) -> Report:
    conditions = {"cases": n, "seed": seed, "failures": len(failures)}
    conditions.update(extra or {})
    witnesses = {"first_failures": failures[:3]} if failures else {}
    return Report(
        kind,
        "holds" if not failures else "refuted",
        not failures,
        conditions,
        witnesses,
        u,
        timings={"seconds": round(time.perf_counter() - t0, 3)},
    )


def theorem1_suite(n: int = 200, seed: int = 0) -> Report:
    """Stable models via τ versus via the propositional image of τ* on random programs."""
    rng = random.Random(seed)
    u = small_universe()
    t0 = time.perf_counter()
    failures = []
    for _ in range(n):
        prog = random_program(rng)
        r = verify_theorem1(prog, u)
        if not r.ok:
            failures.append({"program": format_program(prog), **r.witnesses})
    return _summary("theorem1-suite", n, seed, failures, u, t0)


def tau_star_rule_suite(n: int = 200, seed: int = 0) -> Report:
    """τ* of a rule is strongly equivalent to the set of its τ instances."""
    rng = random.Random(seed)
    u = small_universe()
    t0 = time.perf_counter()
    failures = []
    for _ in range(n):
        rule = random_rule(rng)
        star = fol.fprop(fol.tau_star(Program((rule,))).sentences[0], u, simp=True)
        insts = [tau_rule(i, u) for i in instances(rule, u)]
        ground = pand(insts) if insts else TOP
        base = prop_atoms(star) | prop_atoms(ground)
        pair = ht_counterexample(star, ground, base)
        if pair is not None:
            failures.append(
                {"rule": format_rule(rule), "here": atoms_json(pair.here), "there": atoms_json(pair.there)}
            )
    return _summary("tau-star-rule-suite", n, seed, failures, u, t0)


def main_lemma_suite(n: int = 500, seed: int = 0, n_atoms: int = 6) -> Report:
    """Acyclic G^sp gives stable ⇔ ⊨ COMP; supported ⇔ ⊨ COMP always."""
    rng = random.Random(seed)
    t0 = time.perf_counter()
    failures = []
    acyclic = 0
    u = Universe(frozenset(), 0, n_atoms - 1)  # replaced by each generated case
    for _ in range(n):
        gamma, j, u = random_ground_completable(rng, n_atoms)
        r = verify_main_lemma(gamma, j, u)
        acyclic += not r.inapplicable
        if not r.ok:
            failures.append(
                {
                    "sentences": [fol.format_formula(s) for s in gamma.sentences],
                    "interpretation": atoms_json(j),
                    "conditions": r.conditions,
                }
            )
    return _summary("main-lemma-suite", n, seed, failures, u, t0, {"acyclic_cases": acyclic})


def proposition1_suite(n: int = 100, seed: int = 0, inputs_per_program: int = 3) -> Report:
    """Tight io-programs are locally tight for every input (atom graph checked directly)."""
    rng = random.Random(seed)
    u = small_universe()
    t0 = time.perf_counter()
    failures = []
    for _ in range(n):
        io = random_tight_io_program(rng)
        if not is_tight(io.program):
            failures.append({"program": format_io_program(io), "reason": "generator produced a non-tight program"})
            continue
        for _ in range(inputs_per_program):
            inp = random_input(rng, u, io)
            cycle = find_cycle(atom_graph(io, inp, u))
            if cycle is not None:
                failures.append(
                    {
                        "program": format_io_program(io),
                        "input": atoms_json(inp.atoms),
                        "cycle": [[str(a), str(b)] for a, b in cycle],
                    }
                )
    return _summary("proposition1-suite", n, seed, failures, u, t0)


THM2_SHAPE = Shape(preds=IO_SHAPE.preds, term_depth=0)


def theorem2_suite(n: int = 20, seed: int = 0) -> Report:
    """(a), (b), (c) agree for every public set with the right input part.

    Terms are variables and constants only, and the universe holds every
    constant, so no intermediate value of an arithmetic term leaves it.
    """
    rng = random.Random(seed)
    u = small_universe(THM2_SHAPE)
    t0 = time.perf_counter()
    failures = []
    candidates_checked = 0
    for _ in range(n):
        io = random_tight_io_program(rng, THM2_SHAPE)
        inp = random_input(rng, u, io)
        out_atoms = []
        for name, arity in sorted(io.outputs):
            for args in itertools.product(u.terms(), repeat=arity):
                out_atoms.append(Atom(name, args))
        try:
            io_models(io, inp, u)
        except EnumerationLimitError:
            continue
        for bits in itertools.product((False, True), repeat=len(out_atoms)):
            p = inp.atoms | {a for a, b in zip(out_atoms, bits) if b}
            r = verify_theorem2(io, inp, p, u)
            candidates_checked += 1
            if not r.ok and not r.inapplicable:
                failures.append(
                    {"program": format_io_program(io), "public": atoms_json(p), "conditions": r.conditions}
                )
    return _summary("theorem2-suite", n, seed, failures, u, t0, {"candidates_checked": candidates_checked})


SUITES = {
    "thm1": theorem1_suite,
    "tau-star": tau_star_rule_suite,
    "main-lemma": main_lemma_suite,
    "prop1": proposition1_suite,
    "thm2": theorem2_suite,
}
