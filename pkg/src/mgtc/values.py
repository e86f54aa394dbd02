"""Value sets of ground mini-gringo terms.

Every ground term denotes a finite set of precomputed terms; the empty set
stands for an undefined value (symbolic operands of arithmetic, division by
zero, empty intervals).
"""

from __future__ import annotations

import itertools
from typing import Container, Iterable, Optional

from .syntax import Abs, BinOp, Num, Sym, Var


def round_div(num: int, den: int) -> int:
    """Quotient num/den truncated toward zero. `den` must be nonzero."""
    q = abs(num) // abs(den)
    return q if (num >= 0) == (den > 0) or num == 0 else -q


def _apply(op: str, n1: int, n2: int) -> Optional[int]:
    if op == "+":
        return n1 + n2
    if op == "-":
        return n1 - n2
    if op == "*":
        return n1 * n2
    if n2 == 0:
        return None
    if op == "/":
        return round_div(n1, n2)
    if op == "\\":
        return n1 - n2 * round_div(n1, n2)
    raise ValueError(op)


def _ints(values) -> list:
    return [v.value for v in values if isinstance(v, Num)]


def eval_term(t, within: Optional[Container] = None) -> frozenset:
    """Return the value set [t] of a ground term.

    With `within`, every intermediate value set is intersected with that
    container; this is the universe-closed reading used by bounded checks.
    """
    if isinstance(t, (Num, Sym)):
        out = {t}
    elif isinstance(t, Var):
        raise ValueError(f"term is not ground: variable {t.name}")
    elif isinstance(t, Abs):
        out = {Num(abs(n)) for n in _ints(eval_term(t.arg, within))}
    elif isinstance(t, BinOp):
        left = _ints(eval_term(t.left, within))
        right = _ints(eval_term(t.right, within))
        if t.op == "..":
            out = set()
            for n1 in left:
                for n2 in right:
                    out.update(Num(m) for m in range(n1, n2 + 1))
        else:
            out = set()
            for n1 in left:
                for n2 in right:
                    r = _apply(t.op, n1, n2)
                    if r is not None:
                        out.add(Num(r))
    else:
        raise TypeError(f"not a term: {t!r}")
    if within is not None:
        out = {v for v in out if v in within}
    return frozenset(out)


def eval_tuple(ts: Iterable, within: Optional[Container] = None) -> set:
    """Cartesian product of the value sets of `ts`."""
    sets = [sorted(eval_term(t, within)) for t in ts]
    return set(itertools.product(*sets))


def holds(rel: str, r1, r2) -> bool:
    """Whether `rel` holds between two precomputed terms under the total order."""
    if rel == "=":
        return r1 == r2
    if rel == "!=":
        return r1 != r2
    k1, k2 = r1.sort_key(), r2.sort_key()
    if rel == "<":
        return k1 < k2
    if rel == ">":
        return k1 > k2
    if rel == "<=":
        return k1 <= k2
    if rel == ">=":
        return k1 >= k2
    raise ValueError(f"unknown relation {rel!r}")


def format_values(vs) -> str:
    return "{" + ", ".join(str(v) for v in sorted(vs)) + "}"
