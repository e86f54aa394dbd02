"""Propositional here-and-there semantics over a finite atom base."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from .ground import (
    BOT,
    PAnd,
    PAtom,
    PBot,
    PImp,
    POr,
    PropFormula,
    PTop,
    prop_atoms,
    simplify,
)
from .syntax import Atom, sorted_atoms

DEFAULT_LIMIT = 22


class EnumerationLimitError(RuntimeError):
    """Raised when a search space exceeds a configured guardrail."""


@dataclass(frozen=True)
class HtPair:
    here: frozenset
    there: frozenset

    def __post_init__(self):
        object.__setattr__(self, "here", frozenset(self.here))
        object.__setattr__(self, "there", frozenset(self.there))
        if not self.here <= self.there:
            raise ValueError("here world must be a subset of the there world")


# -- classical and HT satisfaction ------------------------------------------


def sat(m, f: PropFormula) -> bool:
    if isinstance(f, PAtom):
        return f.atom in m
    if isinstance(f, PTop):
        return True
    if isinstance(f, PBot):
        return False
    if isinstance(f, PAnd):
        return all(sat(m, g) for g in f.items)
    if isinstance(f, POr):
        return any(sat(m, g) for g in f.items)
    if isinstance(f, PImp):
        return not sat(m, f.ante) or sat(m, f.cons)
    raise TypeError(f)


def sat_all(m, fs: Iterable[PropFormula]) -> bool:
    return all(sat(m, f) for f in fs)


def _ht(h, t, f) -> bool:
    if isinstance(f, PAtom):
        return f.atom in h
    if isinstance(f, PTop):
        return True
    if isinstance(f, PBot):
        return False
    if isinstance(f, PAnd):
        return all(_ht(h, t, g) for g in f.items)
    if isinstance(f, POr):
        return any(_ht(h, t, g) for g in f.items)
    if isinstance(f, PImp):
        return (not _ht(h, t, f.ante) or _ht(h, t, f.cons)) and sat(t, f)
    raise TypeError(f)


def ht_sat(pair: HtPair, f: PropFormula) -> bool:
    return _ht(pair.here, pair.there, f)


def ht_sat_all(pair: HtPair, fs: Iterable[PropFormula]) -> bool:
    return all(_ht(pair.here, pair.there, f) for f in fs)


# -- three-valued evaluation used by the searches ----------------------------


def _kleene(f, val) -> Optional[bool]:
    """Classical value of f under a partial assignment `val` (dict atom -> bool)."""
    if isinstance(f, PAtom):
        return val.get(f.atom)
    if isinstance(f, PTop):
        return True
    if isinstance(f, PBot):
        return False
    if isinstance(f, PAnd):
        out: Optional[bool] = True
        for g in f.items:
            v = _kleene(g, val)
            if v is False:
                return False
            if v is None:
                out = None
        return out
    if isinstance(f, POr):
        out = False
        for g in f.items:
            v = _kleene(g, val)
            if v is True:
                return True
            if v is None:
                out = None
        return out
    if isinstance(f, PImp):
        a = _kleene(f.ante, val)
        if a is False:
            return True
        c = _kleene(f.cons, val)
        if c is True:
            return True
        if a is True and c is False:
            return False
        return None
    raise TypeError(f)


def _here(f, val, there) -> Optional[bool]:
    """Value at the here world for a partial here assignment; `there` is total."""
    if isinstance(f, PAtom):
        if f.atom not in there:
            return False
        return val.get(f.atom)
    if isinstance(f, PTop):
        return True
    if isinstance(f, PBot):
        return False
    if isinstance(f, PAnd):
        out: Optional[bool] = True
        for g in f.items:
            v = _here(g, val, there)
            if v is False:
                return False
            if v is None:
                out = None
        return out
    if isinstance(f, POr):
        out = False
        for g in f.items:
            v = _here(g, val, there)
            if v is True:
                return True
            if v is None:
                out = None
        return out
    if isinstance(f, PImp):
        if not sat(there, f):
            return False
        a = _here(f.ante, val, there)
        if a is False:
            return True
        c = _here(f.cons, val, there)
        if c is True:
            return True
        if a is True and c is False:
            return False
        return None
    raise TypeError(f)


# -- preprocessing -----------------------------------------------------------


def _positive_heads(f) -> set:
    """Atoms that a rule-shaped consequent can make true."""
    if isinstance(f, PAtom):
        return {f.atom}
    if isinstance(f, (PAnd, POr)):
        out: set = set()
        for g in f.items:
            out |= _positive_heads(g)
        return out
    return set()


def _is_headlike(f) -> bool:
    if isinstance(f, (PAtom, PTop, PBot)):
        return True
    if isinstance(f, PAnd):
        return all(_is_headlike(g) for g in f.items)
    if isinstance(f, POr):
        return all(
            _is_headlike(g) or (isinstance(g, PImp) and isinstance(g.cons, PBot)) for g in f.items
        )
    return False


def _possible(f, s) -> bool:
    if isinstance(f, PAtom):
        return f.atom in s
    if isinstance(f, PBot):
        return False
    if isinstance(f, PAnd):
        return all(_possible(g, s) for g in f.items)
    if isinstance(f, POr):
        return any(_possible(g, s) for g in f.items)
    return True


def upper_bound(fs: list) -> set:
    """Atoms that may belong to some stable model of `fs`."""
    rules = []
    s: set = set()
    for f in fs:
        if isinstance(f, PImp) and _is_headlike(f.cons):
            rules.append((f.ante, _positive_heads(f.cons)))
        elif _is_headlike(f):
            s |= _positive_heads(f)
        else:
            s |= prop_atoms(f)
    changed = True
    while changed:
        changed = False
        for ante, heads in rules:
            if not heads <= s and _possible(ante, s):
                s |= heads
                changed = True
    return s


def prepare(fs: Iterable[PropFormula]) -> tuple:
    """Simplify a theory relative to its upper bound; returns (formulas, bound)."""
    fs = [simplify(f) for f in fs]
    bound = upper_bound(fs)
    everything = set()
    for f in fs:
        everything |= prop_atoms(f)
    out = []
    seen = set()
    for f in fs:
        g = simplify(f, everything - bound)
        if isinstance(g, PTop) or g in seen:
            continue
        seen.add(g)
        out.append(g)
    return out, bound


def _forced(fs, bound) -> set:
    """Atoms true in every classical model (forward chaining)."""
    val: dict = {}
    changed = True
    while changed:
        changed = False
        for f in fs:
            if isinstance(f, PImp):
                if _kleene(f.ante, val) is True:
                    for a in _definite(f.cons):
                        if a not in val:
                            val[a] = True
                            changed = True
            else:
                for a in _definite(f):
                    if a not in val:
                        val[a] = True
                        changed = True
    return {a for a, v in val.items() if v}


def _definite(f) -> set:
    if isinstance(f, PAtom):
        return {f.atom}
    if isinstance(f, PAnd):
        out: set = set()
        for g in f.items:
            out |= _definite(g)
        return out
    return set()


# -- searches ----------------------------------------------------------------


def _classical_models(fs, atoms, fixed) -> Iterable[frozenset]:
    val = dict(fixed)
    order = list(atoms)

    def rec(i):
        for f in fs:
            if _kleene(f, val) is False:
                return
        if i == len(order):
            yield frozenset(a for a, v in val.items() if v)
            return
        a = order[i]
        for choice in (False, True):
            val[a] = choice
            yield from rec(i + 1)
        del val[a]

    yield from rec(0)


def has_smaller_here(fs, m) -> bool:
    """Whether some H ⊊ m has ⟨H, m⟩ ⊨ fs."""
    order = sorted_atoms(m)
    val: dict = {}

    def rec(i, proper):
        for f in fs:
            if _here(f, val, m) is False:
                return False
        if i == len(order):
            return proper
        a = order[i]
        for choice in (False, True):
            val[a] = choice
            if rec(i + 1, proper or not choice):
                del val[a]
                return True
        del val[a]
        return False

    return rec(0, False)


def _rule_shaped(fs) -> bool:
    return all(
        (isinstance(f, PImp) and (_is_headlike(f.cons) or isinstance(f.cons, PBot))) or _is_headlike(f)
        for f in fs
    )


def _supported(fs, m) -> bool:
    need = set(m)
    for f in fs:
        if isinstance(f, PImp):
            if sat(m, f.ante):
                need -= _positive_heads(f.cons)
        else:
            need -= _positive_heads(f)
        if not need:
            return True
    return not need


def stable_models(
    fs: Iterable[PropFormula], base: Optional[Iterable[Atom]] = None, limit: int = DEFAULT_LIMIT
) -> list:
    """All stable models of a finite propositional theory, in canonical order.

    `base` only serves as a sanity check: atoms of fs must belong to it.
    """
    fs = list(fs)
    if base is not None:
        stray = set().union(*(prop_atoms(f) for f in fs)) - set(base) if fs else set()
        if stray:
            raise ValueError(f"atoms outside the base: {sorted_atoms(stray)[:5]}")
    pruned, bound = prepare(fs)
    forced = _forced(pruned, bound)
    free = sorted_atoms(bound - forced)
    if len(free) > limit:
        raise EnumerationLimitError(
            f"{len(free)} undetermined atoms exceed the enumeration limit {limit}"
        )
    fixed = {a: True for a in forced}
    rule_like = _rule_shaped(pruned)
    out = []
    for m in _classical_models(pruned, free, fixed):
        if rule_like and not _supported(pruned, m):
            continue
        if not has_smaller_here(pruned, m):
            out.append(m)
    return sorted(out, key=lambda m: [a.sort_key() for a in sorted_atoms(m)])


def is_stable_model(m, fs: Iterable[PropFormula]) -> bool:
    """Whether m is a stable model of fs (no base restriction needed)."""
    fs = list(fs)
    m = frozenset(m)
    return sat_all(m, fs) and not has_smaller_here(fs, m)


# -- independent oracle ------------------------------------------------------


def reduct(f: PropFormula, m) -> PropFormula:
    """Reduct: maximal subformulas not satisfied by m are replaced by ⊥."""
    if not sat(m, f):
        return BOT
    if isinstance(f, (PAtom, PTop)):
        return f
    if isinstance(f, PAnd):
        return PAnd(tuple(reduct(g, m) for g in f.items))
    if isinstance(f, POr):
        return POr(tuple(reduct(g, m) for g in f.items))
    if isinstance(f, PImp):
        return PImp(reduct(f.ante, m), reduct(f.cons, m))
    raise TypeError(f)


def stable_models_reduct(fs: Iterable[PropFormula], base: Iterable[Atom], limit: int = 12) -> list:
    """Brute force over all subsets of `base`; used to cross-check `stable_models`."""
    fs = list(fs)
    base = sorted_atoms(set(base))
    if len(base) > limit:
        raise EnumerationLimitError(f"base of {len(base)} atoms exceeds oracle limit {limit}")
    subsets = [
        frozenset(c) for r in range(len(base) + 1) for c in itertools.combinations(base, r)
    ]
    out = []
    for m in subsets:
        if not sat_all(m, fs):
            continue
        red = [reduct(f, m) for f in fs]
        if any(h < m and sat_all(h, red) for h in subsets):
            continue
        out.append(m)
    return sorted(out, key=lambda m: [a.sort_key() for a in sorted_atoms(m)])


# -- pointwise stability and supportedness -----------------------------------


def is_pointwise_stable(m, fs: Iterable[PropFormula]) -> bool:
    fs = list(fs)
    m = frozenset(m)
    if not sat_all(m, fs):
        raise ValueError("m is not a model of the theory")
    return not any(ht_sat_all(HtPair(m - {a}, m), fs) for a in m)


def _implication_parts(f) -> list:
    if isinstance(f, PAnd):
        out = []
        for g in f.items:
            out.extend(_implication_parts(g))
        return out
    if isinstance(f, PImp) and isinstance(f.cons, (PAtom, PBot)):
        return [f]
    if isinstance(f, PTop) or (isinstance(f, PImp) and isinstance(f.cons, PTop)):
        return []
    raise ValueError(f"formula is not in completable shape: {f}")


def is_supported(m, fs: Iterable[PropFormula]) -> bool:
    """Each atom of m is the consequent of an implication whose antecedent m satisfies.

    Only implications A → p and A → ⊥ (possibly conjoined) are accepted.
    """
    parts = []
    for f in fs:
        parts.extend(_implication_parts(f))
    m = frozenset(m)
    if not all(sat(m, f) for f in parts):
        raise ValueError("m is not a model of the theory")
    supported = {f.cons.atom for f in parts if isinstance(f.cons, PAtom) and sat(m, f.ante)}
    return m <= supported
