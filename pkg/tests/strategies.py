"""Hypothesis strategies and small random builders shared by the tests."""
from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from tamewild.endo import EndoPair
from tamewild.euclid import UPoly
from tamewild.poly2 import Poly2

small_ints = st.integers(min_value=-20, max_value=20)
nonzero_ints = small_ints.filter(bool)
fractions = st.builds(Fraction, st.integers(-30, 30), st.integers(1, 12))
nonzero_fractions = fractions.filter(bool)


@st.composite
def upolys(draw, max_deg: int = 3, nonzero: bool = False):
    coeffs = draw(st.lists(fractions, min_size=1, max_size=max_deg + 1))
    p = UPoly(coeffs)
    if nonzero and not p:
        p = UPoly((draw(nonzero_fractions),))
    return p


@st.composite
def int_polys(draw, max_deg: int = 3, bound: int = 5, nonzero: bool = False):
    words = [(l, m) for d in range(max_deg + 1) for l in range(d + 1) for m in [d - l]]
    chosen = draw(st.lists(st.sampled_from(words), max_size=6, unique=True))
    terms = {w: draw(st.integers(-bound, bound)) for w in chosen}
    f = Poly2(terms)
    if nonzero and not f:
        f = Poly2.const(draw(st.integers(1, bound)))
    return f


@st.composite
def int_pairs(draw, max_deg: int = 3, bound: int = 5):
    return EndoPair(draw(int_polys(max_deg, bound, nonzero=True)), draw(int_polys(max_deg, bound, nonzero=True)))


def random_int_poly(rng: random.Random, max_deg: int, bound: int, min_deg: int = 0) -> Poly2:
    """Random integer polynomial with degree in [min_deg, max_deg]."""
    while True:
        terms = {}
        for d in range(max_deg + 1):
            for l in range(d + 1):
                if rng.random() < 0.35:
                    terms[(l, d - l)] = rng.randint(-bound, bound)
        f = Poly2(terms)
        if f and min_deg <= f.degree <= max_deg:
            return f
