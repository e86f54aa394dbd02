"""Shared hypothesis strategies."""

from __future__ import annotations

from hypothesis import strategies as st

from mgtc.ground import BOT, TOP, PAnd, PAtom, PImp, POr
from mgtc.syntax import Atom, Num

ATOMS = [Atom("p", (Num(i),)) for i in range(4)]

prop_leaves = st.one_of(st.sampled_from(ATOMS).map(PAtom), st.just(TOP), st.just(BOT))

prop_formulas = st.recursive(
    prop_leaves,
    lambda c: st.one_of(
        st.builds(lambda a, b: PAnd((a, b)), c, c),
        st.builds(lambda a, b: POr((a, b)), c, c),
        st.builds(PImp, c, c),
    ),
    max_leaves=7,
)

theories = st.lists(prop_formulas, min_size=1, max_size=4)

atom_sets = st.frozensets(st.sampled_from(ATOMS))
