"""Hypothesis strategies built on the seeded term generator."""
import random

from hypothesis import strategies as st

from hoau.kernel import parse_type
from hoau.random_terms import FIVE_CONSTANTS, TYPES, TermGen

FREE = {"X": parse_type("a"), "Y": parse_type("a->a"), "Z": parse_type("a->a->a"),
        "F": parse_type("(a->a)->a")}


@st.composite
def terms(draw, depth=4, free=True):
    seed = draw(st.integers(0, 2**32 - 1))
    gen = TermGen(FIVE_CONSTANTS, random.Random(seed), dict(FREE) if free else {})
    ty = draw(st.sampled_from(TYPES))
    return gen.term(ty, draw(st.integers(0, depth)))


@st.composite
def aups(draw, depth=4):
    seed = draw(st.integers(0, 2**32 - 1))
    return TermGen(FIVE_CONSTANTS, random.Random(seed)).aup(depth)
