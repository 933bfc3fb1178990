from fractions import Fraction as F
from math import factorial

import pytest
from hypothesis import given, strategies as st

from rittlab.errors import (CrossCheckMismatch, DivisionByZeroSeries, InsufficientInitialData,
                            LeadingSingularity, NonUnitConstantTerm)
from rittlab.efunc import (HolonomicSeries, denominator_profile, egf_pow, entire_quotient_test,
                           from_plain, guess_operator, h_operator, leibniz_constants,
                           mth_root_formula, mth_root_ode, mth_root_series, to_plain)

COS = [[1], [0], [1]]
COS2 = [[0], [4], [0], [1]]
EXP = [[-1], [1]]


def test_holonomic_examples():
    c = HolonomicSeries(COS, [1, 0])
    assert c.coeffs(7) == [1, 0, -1, 0, 1, 0, -1]
    e = HolonomicSeries(EXP, [1])
    assert e.coeffs(5) == [1] * 5
    c2 = HolonomicSeries(COS2, [1, 0, -2])
    # cos^2 = (1 + cos 2x)/2
    assert c2.coeffs(11) == [1, 0, -2, 0, 8, 0, -32, 0, 128, 0, -512]
    assert c2.check(30)
    with pytest.raises(InsufficientInitialData):
        HolonomicSeries(COS, [1])
    with pytest.raises(LeadingSingularity):
        HolonomicSeries([[-1], [0, 1]], [1])


def test_guess_examples():
    assert guess_operator(HolonomicSeries(COS, [1, 0]), r=2, d=0) == [[1], [], [1]]
    assert guess_operator(HolonomicSeries(EXP, [1]), r=1, d=0) == [[-1], [1]]
    c2 = HolonomicSeries(COS2, [1, 0, -2])
    assert guess_operator(c2, r=2, d=2) is None
    assert guess_operator(c2, r=3, d=0) == [[], [4], [], [1]]


def test_mth_root_examples():
    c2 = HolonomicSeries(COS2, [1, 0, -2])
    b = mth_root_series(c2, 2, 40)
    assert all(b[2 * j] == (-1) ** j and b[2 * j + 1] == 0 for j in range(20))
    # (1 + x)^2 = 1 + 2x + x^2 -> 1 + x
    assert mth_root_series(from_plain([1, 2, 1] + [0] * 10), 2, 8) == [1, 1] + [0] * 7
    with pytest.raises(NonUnitConstantTerm):
        mth_root_series([2, 1, 0, 0], 2, 2)


def test_denominator_examples():
    assert denominator_profile([1, 1, 0, 0], 2).passed
    bad = denominator_profile([1, F(1, 5)], 2)
    assert not bad.passed and bad.first_failure == 1
    assert denominator_profile([1, F(1, 5)], 2, D=5).passed


def test_leibniz_constants_closed_form():
    for m in range(2, 7):
        a, b = leibniz_constants(m, m), leibniz_constants(m, m + 1)
        assert a.c == factorial(m) == a.closed_form
        assert b.c == m * factorial(m + 1) // 2 == b.closed_form
    with pytest.raises(ValueError):
        leibniz_constants(3, 5)


def test_h_operator_and_quotient():
    op = h_operator(COS2, 2)
    # a_2 = 0, a_3 = 1 and c_{3,2} = 6
    assert op == [[0], [0], [6]]
    g = HolonomicSeries(COS, [1, 0])
    res = entire_quotient_test(op, g, 40)
    assert res.kind == "Polynomial" and res.h == [-6]
    assert entire_quotient_test([[0], [1]], g, 40).kind == "Inconclusive"
    with pytest.raises(DivisionByZeroSeries):
        entire_quotient_test(COS, [0] * 60, 20)


small = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@given(st.lists(small, min_size=12, max_size=12), st.integers(2, 4))
def test_root_methods_agree_and_invert(tail, m):
    a = [F(1)] + tail
    b1 = mth_root_formula(a, m, 11)
    assert b1 == mth_root_ode(a, m, 11)
    assert egf_pow(b1, m) == a[:12]


@given(st.lists(small, min_size=1, max_size=8))
def test_plain_roundtrip(a):
    assert to_plain(from_plain(a)) == a


@given(st.integers(1, 5), st.integers(0, 5))
def test_guess_recovers_exponential(b, c):
    # e^{bx}: f' - b f = 0
    s = HolonomicSeries([[-b], [1]], [1])
    op = guess_operator(s, r=1, d=0)
    assert op == [[-b], [1]]
    assert egf_pow(s.coeffs(8), 1) == s.coeffs(8)
