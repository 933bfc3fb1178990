"""Hypothesis strategies for exponential polynomials over Q."""

from fractions import Fraction as F

from hypothesis import strategies as st

from rittlab.exppoly import ExpPoly
from rittlab.numberfield import rationals

small = st.fractions(min_value=-4, max_value=4, max_denominator=3)
exponent = st.sampled_from([F(0), F(1), F(-1), F(2), F(1, 2), F(-3, 2)])


@st.composite
def exppolys(draw, max_terms=3, max_x=1, nonzero=True):
    K = rationals()
    terms = {}
    for _ in range(draw(st.integers(1, max_terms))):
        b = draw(exponent)
        p = draw(st.lists(small, min_size=1, max_size=max_x + 1))
        terms[K(b)] = tuple(K(c) for c in p)
    f = ExpPoly(K, terms)
    if nonzero and f.is_zero():
        f = ExpPoly.const(K, 1)
    return f
