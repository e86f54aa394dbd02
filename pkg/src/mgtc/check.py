"""Bounded model checking over standard interpretations and the theorem verifiers."""

from __future__ import annotations

import functools
import itertools
import time
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from . import __version__, fol
from .fol import (
    And,
    Bot,
    Compare,
    CompletableSet,
    Exists,
    Forall,
    Implies,
    ObjConst,
    ObjVar,
    Or,
    PredAtom,
    SoSentence,
)
from .graphs import CycleFound, find_cycle, gsp_graph, is_locally_tight
from .ground import Universe, default_universe, facts_program, prop_atoms, tau_program
from .stable import (
    EnumerationLimitError,
    is_stable_model,
    is_supported,
    sat_all,
    stable_models,
)
from .syntax import (
    Atom,
    Input,
    IoProgram,
    Num,
    Program,
    Sym,
    apply_valuation,
    public_projection,
    sorted_atoms,
    validate_input,
)
from .values import holds

REPORT_SCHEMA = "mgtc-report/1"
SO_LIMIT = 16


# -- interpretations ----------------------------------------------------------


@dataclass(frozen=True)
class StandardInterp:
    """J↑ (empty valuation) or J^v: precomputed terms name themselves, placeholders go through v."""

    atoms: frozenset = frozenset()
    valuation: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "atoms", frozenset(self.atoms))
        object.__setattr__(self, "valuation", dict(self.valuation))

    def holds(self, atom: Atom) -> bool:
        return atom in self.atoms

    def constant(self, c):
        if isinstance(c, Sym) and c.name in self.valuation:
            return self.valuation[c.name]
        return c

    def down(self, symbols: Iterable, u: Universe) -> frozenset:
        """Precomputed atoms over `u` with the given symbols that are true here."""
        out = set()
        for name, n in symbols:
            for args in itertools.product(u.terms(), repeat=n):
                a = Atom(name, args)
                if self.holds(a):
                    out.add(a)
        return frozenset(out)


def _in_domain(value, var: ObjVar, u: Universe) -> bool:
    if var.sort == fol.INTEGER:
        return isinstance(value, Num) and value in u
    return value in u


class _Evaluator:
    def __init__(self, interp: StandardInterp, u: Universe, relations: Optional[Mapping] = None):
        self.interp = interp
        self.u = u
        self.index: dict = {}
        for a in interp.atoms:
            self.index.setdefault((a.pred, len(a.args), False), set()).add(a.args)
        self.relations = {name: {tuple(t) for t in ts} for name, ts in (relations or {}).items()}
        self._counter = itertools.count()

    # terms
    def term(self, t, env):
        if isinstance(t, ObjConst):
            return self.interp.constant(t.value)
        if isinstance(t, ObjVar):
            return env[t.name]
        if isinstance(t, fol.AbsTerm):
            x = self.term(t.arg, env)
            if not isinstance(x, Num):
                raise ValueError(f"|·| of non-integer {x}")
            return Num(abs(x.value))
        a, b = self.term(t.left, env), self.term(t.right, env)
        if not (isinstance(a, Num) and isinstance(b, Num)):
            raise ValueError(f"arithmetic on non-integers {a}, {b}")
        if t.op == "+":
            return Num(a.value + b.value)
        if t.op == "-":
            return Num(a.value - b.value)
        return Num(a.value * b.value)

    def tuples(self, a: PredAtom):
        if a.variable:
            return {t for t in self.relations.get(a.pred, ()) if len(t) == len(a.args)}
        return self.index.get((a.pred, len(a.args), False), set())

    def atom(self, a: PredAtom, env) -> bool:
        args = tuple(self.term(t, env) for t in a.args)
        if a.variable:
            if a.pred not in self.relations:
                raise ValueError(f"predicate variable {a.pred} has no interpretation")
            return args in self.relations[a.pred]
        return args in self.index.get((a.pred, len(args), False), ())

    # formulas
    def eval(self, f, env) -> bool:
        if isinstance(f, PredAtom):
            return self.atom(f, env)
        if isinstance(f, Compare):
            return holds(f.rel, self.term(f.left, env), self.term(f.right, env))
        if isinstance(f, Bot):
            return False
        if isinstance(f, And):
            return all(self.eval(g, env) for g in f.items)
        if isinstance(f, Or):
            return any(self.eval(g, env) for g in f.items)
        if isinstance(f, Implies):
            return not self.eval(f.ante, env) or self.eval(f.cons, env)
        if isinstance(f, Exists):
            return any(True for _ in self.solve([f.body], env, list(f.vars), complete=False))
        if isinstance(f, Forall):
            return self.forall(list(f.vars), f.body, env)
        raise TypeError(f)

    def forall(self, vs, body, env) -> bool:
        if isinstance(body, And):
            return all(self.forall(vs, g, env) for g in body.items)
        if isinstance(body, Forall):
            return self.forall(vs + list(body.vars), body.body, env)
        if isinstance(body, Implies):
            for sol in self.solve([body.ante], env, vs, complete=True):
                if not self.eval(body.cons, sol):
                    return False
            return True
        return all(self.eval(body, e) for e in self._enumerate(vs, env))

    def _enumerate(self, vs, env):
        for combo in itertools.product(*(fol.domain(v, self.u) for v in vs)):
            e = dict(env)
            e.update({v.name: c for v, c in zip(vs, combo)})
            yield e

    def _fresh(self, v: ObjVar) -> ObjVar:
        return ObjVar(f"{v.name}#{next(self._counter)}", v.sort)

    def _flatten(self, items, vs):
        """Split conjunctions and pull nested existentials out (with renaming).

        Returns a list of alternatives, each a (conjuncts, variables) pair.
        """
        alts = [([], list(vs))]
        for g in items:
            new = []
            for conj, bound in alts:
                for parts, extra in self._flatten_one(g):
                    new.append((conj + parts, bound + extra))
            alts = new
        return alts

    def _flatten_one(self, g):
        if isinstance(g, And):
            return [(c, b) for c, b in self._flatten(list(g.items), [])]
        if isinstance(g, Exists):
            ren = {v.name: self._fresh(v) for v in g.vars}
            body = fol.substitute(g.body, ren)
            return [(c, list(ren.values()) + b) for c, b in self._flatten_one(body)]
        if isinstance(g, Or) and len(g.items) <= 8:
            out = []
            for h in g.items:
                out.extend(self._flatten_one(h))
            return out
        return [([g], [])]

    def solve(self, items, env, vs, complete: bool):
        """Assignments to `vs` (extending env) that satisfy all formulas in `items`."""
        wanted = [v.name for v in vs]
        # the variables being solved shadow outer bindings of the same name
        outer = {k: x for k, x in env.items() if k not in wanted}
        for conj, bound in self._flatten(items, vs):
            seen = set()
            for sol in self._solve(conj, dict(outer), bound, complete, wanted):
                key = tuple(sol.get(n) for n in wanted)
                if key in seen:
                    continue
                seen.add(key)
                yield sol

    def _solve(self, conj, env, vs, complete, wanted):
        free = {v.name: v for v in vs if v.name not in env}
        pending = []
        for g in conj:
            names = {v.name for v in fol.free_vars(g)} & free.keys()
            if not names:
                if not self.eval(g, env):
                    return
            else:
                pending.append((g, names))
        if not pending:
            rest = [free[n] for n in wanted if n in free] if complete else []
            yield from self._enumerate(rest, env)
            return
        # equality generators
        for idx, (g, names) in enumerate(pending):
            if isinstance(g, Compare) and g.rel == "=":
                for var_side, other in ((g.left, g.right), (g.right, g.left)):
                    if isinstance(var_side, ObjVar) and var_side.name in free:
                        if not ({v.name for v in fol.term_vars(other)} & free.keys()):
                            value = self.term(other, env)
                            var = free[var_side.name]
                            if not _in_domain(value, var, self.u):
                                return
                            env2 = dict(env)
                            env2[var.name] = value
                            yield from self._solve(
                                [h for k, (h, _) in enumerate(pending) if k != idx], env2, vs, complete, wanted
                            )
                            return
        # positive atom generators
        for idx, (g, names) in enumerate(pending):
            if isinstance(g, PredAtom) and all(
                isinstance(t, ObjVar) or not ({v.name for v in fol.term_vars(t)} & free.keys())
                for t in g.args
            ):
                rest = [h for k, (h, _) in enumerate(pending) if k != idx]
                fixed = {}
                for i, t in enumerate(g.args):
                    if not (isinstance(t, ObjVar) and t.name in free):
                        fixed[i] = self.term(t, env)
                for tup in sorted(self.tuples(g), key=lambda t: [x.sort_key() for x in t]):
                    if any(tup[i] != val for i, val in fixed.items()):
                        continue
                    env2 = dict(env)
                    ok = True
                    for i, t in enumerate(g.args):
                        if isinstance(t, ObjVar) and t.name in free:
                            if t.name in env2 and env2[t.name] != tup[i]:
                                ok = False
                                break
                            if not _in_domain(tup[i], free[t.name], self.u):
                                ok = False
                                break
                            env2[t.name] = tup[i]
                    if ok:
                        yield from self._solve(rest, env2, vs, complete, wanted)
                return
        # fall back to enumerating one variable, integer-sorted first
        g, names = pending[0]
        candidates = sorted(names, key=lambda n: (free[n].sort != fol.INTEGER, n))
        var = free[candidates[0]]
        rest = [h for h, _ in pending]
        for value in fol.domain(var, self.u):
            env2 = dict(env)
            env2[var.name] = value
            yield from self._solve(rest, env2, vs, complete, wanted)


def fo_sat(
    interp: StandardInterp, f, u: Universe, relations: Optional[Mapping] = None
) -> bool:
    """Truth of a sentence under a standard interpretation, quantifiers bounded by u."""
    if fol.free_vars(f):
        raise ValueError("fo_sat expects a sentence")
    return _Evaluator(interp, u, relations).eval(f, {})


def naive_fo_sat(
    interp: StandardInterp, f, u: Universe, relations: Optional[Mapping] = None
) -> bool:
    """Direct recursive evaluation; serves as the reference for `fo_sat`."""
    ev = _Evaluator(interp, u, relations)

    def rec(g, env):
        if isinstance(g, (PredAtom, Compare, Bot)):
            return ev.eval(g, env)
        if isinstance(g, And):
            return all(rec(h, env) for h in g.items)
        if isinstance(g, Or):
            return any(rec(h, env) for h in g.items)
        if isinstance(g, Implies):
            return not rec(g.ante, env) or rec(g.cons, env)
        results = (rec(g.body, e) for e in ev._enumerate(list(g.vars), env))
        return all(results) if isinstance(g, Forall) else any(results)

    return rec(f, {})


# -- second-order sentences -----------------------------------------------------


@dataclass(frozen=True)
class SoResult:
    sat: bool
    witness: Optional[dict]


def _forced_definition(g, resolved):
    """(name, head vars, φ) if g is ∀V(P(V) ↔ φ) with φ using only resolved predicate variables."""
    vs: tuple = ()
    body = g
    if isinstance(body, Forall):
        vs, body = body.vars, body.body
    pair = fol.as_iff(body)
    if pair is None:
        return None
    head, phi = pair
    if not (isinstance(head, PredAtom) and head.variable):
        return None
    if list(head.args) != list(vs) or len(set(vs)) != len(vs):
        return None
    for a in fol.atoms_of(phi):
        if a.variable and a.pred not in resolved:
            return None
    return head.pred, vs, phi


def so_sat(
    interp: StandardInterp,
    s: SoSentence,
    u: Universe,
    mode: str = "enumerate",
    witness: Optional[Mapping] = None,
    limit: int = SO_LIMIT,
) -> SoResult:
    """Search for extensions of the predicate variables that make the matrix true."""
    if mode == "witness":
        if witness is None:
            raise ValueError("witness mode needs a witness")
        rel = {k: frozenset(tuple(t) for t in v) for k, v in witness.items()}
        ok = fo_sat(interp, s.matrix, u, rel)
        return SoResult(ok, rel if ok else None)
    if mode != "enumerate":
        raise ValueError(f"unknown mode {mode!r}")
    arity = dict(s.prefix)
    conjuncts = list(s.matrix.items) if isinstance(s.matrix, And) else [s.matrix]
    resolved: dict = {}
    progress = True
    while progress:
        progress = False
        for g in conjuncts:
            fd = _forced_definition(g, resolved)
            if fd is None or fd[0] in resolved or fd[0] not in arity:
                continue
            name, vs, phi = fd
            ev = _Evaluator(interp, u, resolved)
            ext = set()
            for sol in ev.solve([phi], {}, list(vs), complete=True):
                ext.add(tuple(sol[v.name] for v in vs))
            resolved[name] = frozenset(ext)
            progress = True
    open_vars = [(name, n) for name, n in s.prefix if name not in resolved]
    universe_terms = u.terms()
    slots = []
    for name, n in open_vars:
        for args in itertools.product(universe_terms, repeat=n):
            slots.append((name, args))
    if len(slots) > limit:
        raise EnumerationLimitError(
            f"{len(slots)} candidate atoms for predicate variables exceed the limit {limit}; "
            "supply a witness instead"
        )
    for bits in itertools.product((False, True), repeat=len(slots)):
        rel = dict(resolved)
        for name, _ in open_vars:
            rel[name] = set()
        for (name, args), b in zip(slots, bits):
            if b:
                rel[name].add(args)
        rel = {k: frozenset(v) for k, v in rel.items()}
        if fo_sat(interp, s.matrix, u, rel):
            return SoResult(True, rel)
    return SoResult(False, None)


# -- reports --------------------------------------------------------------------


@dataclass
class Report:
    kind: str
    verdict: str
    ok: bool
    conditions: dict
    witnesses: dict
    universe: Universe
    inapplicable: bool = False
    timings: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.ok and not self.inapplicable and not self.witnesses:
            raise ValueError("a negative report must carry a counterexample")

    @property
    def exit_code(self) -> int:
        if self.inapplicable:
            return 2
        return 0 if self.ok else 1

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "schema": REPORT_SCHEMA,
            "tool_version": __version__,
            "kind": self.kind,
            "verdict": self.verdict,
            "conditions": self.conditions,
            "witnesses": self.witnesses,
            "universe": self.universe.to_json(),
        }
        if timings:
            out["timings"] = self.timings
        return out


def atoms_json(atoms) -> list:
    return [str(a) for a in sorted_atoms(atoms)]


def input_json(inp: Input) -> dict:
    return {
        "valuation": {c: str(inp.valuation[c]) for c in sorted(inp.valuation)},
        "atoms": atoms_json(inp.atoms),
    }


# -- io-models -------------------------------------------------------------------


def io_universe(io: IoProgram, inp: Input, margin: int = 1) -> Universe:
    return default_universe(io.program, inp, margin, io.placeholders)


def program_for_input(io: IoProgram, inp: Input) -> Program:
    return apply_valuation(io.program, inp.valuation) | facts_program(inp.atoms)


def stable_models_for_input(io: IoProgram, inp: Input, u: Universe, limit: Optional[int] = None) -> list:
    validate_input(io, inp)
    fs = tau_program(program_for_input(io, inp), u)
    kwargs = {} if limit is None else {"limit": limit}
    return stable_models(fs, **kwargs)


def io_models(io: IoProgram, inp: Input, u: Optional[Universe] = None, limit: Optional[int] = None) -> list:
    """Public parts of the stable models of v(Π) ∪ I, deduplicated and sorted."""
    if u is None:
        u = io_universe(io, inp)
    models = {public_projection(m, io) for m in stable_models_for_input(io, inp, u, limit)}
    return sorted(models, key=lambda m: [a.sort_key() for a in sorted_atoms(m)])


# -- Theorem 1 -------------------------------------------------------------------


def verify_theorem1(prog: Program, u: Universe, clip: bool = True) -> Report:
    """Stable models of τΠ versus stable models of the propositional images of τ*Π."""
    t0 = time.perf_counter()
    via_tau = stable_models(tau_program(prog, u, clip=clip))
    gamma = fol.tau_star(prog)
    via_star = stable_models([fol.fprop(s, u, simp=True) for s in gamma])
    a = {frozenset(m) for m in via_tau}
    b = {frozenset(m) for m in via_star}
    ok = a == b
    witnesses = {}
    if not ok:
        witnesses = {
            "only_via_tau": [atoms_json(m) for m in sorted(a - b, key=len)],
            "only_via_tau_star": [atoms_json(m) for m in sorted(b - a, key=len)],
        }
    return Report(
        "theorem1",
        "holds" if ok else "refuted",
        ok,
        {
            "stable_via_tau": [atoms_json(m) for m in via_tau],
            "stable_via_tau_star": [atoms_json(m) for m in via_star],
        },
        witnesses,
        u,
        timings={"seconds": round(time.perf_counter() - t0, 3)},
    )


# -- Theorem 2 -------------------------------------------------------------------


@functools.lru_cache(maxsize=8)
def _theorem2_context(io: IoProgram, valuation: tuple, atoms: frozenset, u: Universe) -> tuple:
    # independent of the public set, so repeated checks on one input share it
    inp = Input(dict(valuation), atoms)
    return is_locally_tight(io, inp, u), tuple(io_models(io, inp, u))


def verify_theorem2(
    io: IoProgram,
    inp: Input,
    public: Iterable[Atom],
    u: Optional[Universe] = None,
    witness: Optional[Mapping] = None,
) -> Report:
    """Conditions (a) io-model, (b) P↑ ⊨ v(COMP), (c) P^v ⊨ COMP, checked independently."""
    t0 = time.perf_counter()
    validate_input(io, inp)
    if u is None:
        u = io_universe(io, inp)
    p = frozenset(public)
    stray = [a for a in p if a.symbol not in io.public]
    if stray:
        raise ValueError(f"not public atoms: {atoms_json(stray)}")
    lt, models = _theorem2_context(io, tuple(sorted(inp.valuation.items())), inp.atoms, u)
    cond_a = p in set(models)
    comp = fol.complete_io(io)
    in_part_ok = frozenset(a for a in p if a.symbol in io.inputs) == inp.atoms
    mode = "witness" if witness is not None else "enumerate"
    if in_part_ok:
        rb = so_sat(StandardInterp(p), fol.substitute_constants(comp, inp.valuation), u, mode, witness)
        rc = so_sat(StandardInterp(p, inp.valuation), comp, u, mode, witness)
        cond_b, cond_c = rb.sat, rc.sat
    else:
        rb = rc = SoResult(False, None)
        cond_b = cond_c = False
    agree = cond_a == cond_b == cond_c
    inapplicable = isinstance(lt, CycleFound)
    conditions = {
        "locally_tight": lt.name,
        "input_part_matches": in_part_ok,
        "a_io_model": cond_a,
        "b_comp_valuated": cond_b,
        "c_comp_placeholder_interp": cond_c,
        "pairwise_equivalent": agree,
    }
    witnesses: dict = {"public": atoms_json(p), "io_models": [atoms_json(m) for m in models]}
    if rb.witness is not None:
        witnesses["predicate_variables"] = {
            k: sorted(",".join(str(x) for x in t) for t in v) for k, v in sorted(rb.witness.items())
        }
    if inapplicable:
        witnesses["cycle"] = [[str(a), str(b)] for a, b in lt.cycle]
        verdict = "inapplicable"
    else:
        verdict = "holds" if agree else "refuted"
    return Report(
        "theorem2",
        verdict,
        agree and not inapplicable,
        conditions,
        witnesses,
        u,
        inapplicable=inapplicable,
        timings={"seconds": round(time.perf_counter() - t0, 3)},
    )


# -- Main Lemma -------------------------------------------------------------------


def verify_main_lemma(
    gamma: CompletableSet,
    j: Iterable[Atom],
    u: Universe,
    valuation: Optional[Mapping] = None,
    extensional_atoms: Iterable[Atom] = (),
) -> Report:
    """Stable ⇔ completion model when G^sp is acyclic; supported ⇔ completion model always."""
    if valuation:
        gamma = fol.substitute_constants(gamma, valuation)
    j = frozenset(j)
    ext_atoms = frozenset(extensional_atoms)
    ext_symbols = frozenset(
        s for s in fol.predicate_constants(fol.conj(gamma.sentences)) if s not in gamma.intensional
    )
    ext = (ext_symbols, ext_atoms)
    graph = gsp_graph(j | ext_atoms, gamma, u, ext)
    cycle = find_cycle(graph)
    fs = [fol.fprop(s, u, ext) for s in gamma.sentences]
    intensional_j = frozenset(a for a in j if a.symbol in gamma.intensional)
    model = sat_all(intensional_j, fs)
    stable = model and is_stable_model(intensional_j, fs)
    supported = model and is_supported(intensional_j, fs)
    comp_sat = fo_sat(StandardInterp(j | ext_atoms), fol.complete(gamma), u)
    conditions = {
        "gsp_acyclic": cycle is None,
        "gsp_edges": [[str(a), str(b)] for a, b in sorted(graph.edges, key=lambda e: (e[0].sort_key(), e[1].sort_key()))],
        "stable": stable,
        "satisfies_completion": comp_sat,
        "supported": supported,
        "supported_iff_completion": supported == comp_sat,
    }
    witnesses: dict = {"interpretation": atoms_json(j)}
    if cycle is not None:
        witnesses["cycle"] = [[str(a), str(b)] for a, b in cycle]
        return Report(
            "main-lemma",
            "hypothesis-violated",
            supported == comp_sat,
            conditions,
            witnesses,
            u,
            inapplicable=True,
        )
    ok = stable == comp_sat and supported == comp_sat
    return Report("main-lemma", "holds" if ok else "refuted", ok, conditions, witnesses, u)


# -- equivalence -------------------------------------------------------------------


@dataclass(frozen=True)
class Domain:
    """Valuation candidates × subsets of an input-atom base."""

    valuations: tuple
    base: tuple

    def inputs(self) -> Iterable[Input]:
        base = sorted_atoms(set(self.base))
        for v in self.valuations:
            for r in range(len(base) + 1):
                for combo in itertools.combinations(base, r):
                    yield Input(v, frozenset(combo))

    def size(self) -> int:
        return len(self.valuations) * 2 ** len(set(self.base))

    @classmethod
    def from_json(cls, data: Mapping, io: Optional[IoProgram] = None) -> "Domain":
        """Read {"valuations": [{name: value}], "base": ["p(a)", ...]}."""
        from .parser import parse_input, parse_term

        vals = []
        for v in data.get("valuations", [{}]):
            vals.append({k: parse_term(str(x)) for k, x in v.items()})
        base = parse_input("".join(f"{a}." for a in data.get("base", [])), io).atoms
        return cls(tuple(vals), tuple(sorted_atoms(base)))


def comparable(io1: IoProgram, io2: IoProgram) -> bool:
    return (io1.placeholders, io1.inputs, io1.outputs) == (io2.placeholders, io2.inputs, io2.outputs)


def check_equivalence(
    io1: IoProgram,
    io2: IoProgram,
    assumption,
    dom: Domain,
    u: Optional[Universe] = None,
    max_inputs: int = 4096,
    stop_at_first: bool = True,
) -> Report:
    """Compare io-models on every domain input that satisfies the assumption."""
    if isinstance(assumption, (list, tuple)):
        assumption = fol.conj(assumption)
    if not comparable(io1, io2):
        raise ValueError("io-programs are not comparable (placeholders, inputs and outputs must agree)")
    bad = {s for s in fol.predicate_constants(assumption) if s not in io1.inputs}
    if bad:
        raise ValueError(f"assumption uses non-input symbols: {sorted(bad)}")
    if dom.size() > max_inputs:
        raise EnumerationLimitError(f"domain of {dom.size()} inputs exceeds the cap {max_inputs}")
    t0 = time.perf_counter()
    both = io1.program | io2.program
    checked = skipped = 0
    inapplicable_inputs = []
    counterexample = None
    universes = []
    for inp in dom.inputs():
        uu = u or default_universe(both, inp, 1, io1.placeholders)
        if not fo_sat(StandardInterp(inp.atoms, inp.valuation), assumption, uu):
            skipped += 1
            continue
        checked += 1
        universes.append(uu)
        for io in (io1, io2):
            if isinstance(is_locally_tight(io, inp, uu), CycleFound):
                inapplicable_inputs.append(input_json(inp))
                break
        m1, m2 = io_models(io1, inp, uu), io_models(io2, inp, uu)
        if m1 != m2 and counterexample is None:
            counterexample = {
                "input": input_json(inp),
                "io_models_1": [atoms_json(m) for m in m1],
                "io_models_2": [atoms_json(m) for m in m2],
            }
            if stop_at_first:
                break
    shown = u or _hull(universes) or Universe()
    conditions = {
        "inputs_in_domain": dom.size(),
        "inputs_checked": checked,
        "inputs_excluded_by_assumption": skipped,
        "locally_tight_on_checked": not inapplicable_inputs,
    }
    witnesses = {}
    if counterexample is not None:
        witnesses["counterexample"] = counterexample
        verdict, ok, inapp = "not-equivalent", False, False
    elif inapplicable_inputs:
        witnesses["not_locally_tight"] = inapplicable_inputs[:5]
        verdict, ok, inapp = "inapplicable", False, True
    else:
        verdict, ok, inapp = "equivalent-on-domain", True, False
    return Report(
        "equivalence",
        verdict,
        ok,
        conditions,
        witnesses,
        shown,
        inapplicable=inapp,
        timings={"seconds": round(time.perf_counter() - t0, 3)},
    )


def _hull(universes) -> Optional[Universe]:
    if not universes:
        return None
    syms = frozenset().union(*(x.symbols for x in universes))
    return Universe(syms, min(x.lo for x in universes), max(x.hi for x in universes))
