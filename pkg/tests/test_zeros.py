import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from rittlab.bessel import bessel_split
from rittlab.errors import ZeroOnBoundary
from rittlab.exppoly import vanishing_order_algebraic
from rittlab.zeros import (Rectangle, evidence_report, isolate_zeros, multiplicity_at,
                           winding_count)

# bisection oracle for tan x = x (scripts/oracles.py)
TAN_ROOTS = (4.49340945790906, 7.72525183693771)
W1 = 0.567143290409784

UNIT = Rectangle(F(-1), F(1), F(-1), F(1))


def test_rectangle_basics():
    R = Rectangle(F(0), F(2), F(-1), F(3))
    assert R.area() == 8 and R.center() == 1 + 1j
    parts = R.split()
    assert len(parts) == 4 and sum(p.area() for p in parts) == R.area()
    with pytest.raises(ValueError):
        Rectangle(F(1), F(1), F(0), F(1))


def test_winding_examples(kq, ki):
    f = kq.E(1) - kq.one
    assert winding_count(f, UNIT) == 1
    assert winding_count(f * f, UNIT) == 2
    T1 = bessel_split(1).T
    assert winding_count(T1, Rectangle(F(1), F(10), F(-1), F(1))) == 2


def test_winding_zero_on_boundary(kq):
    with pytest.raises(ZeroOnBoundary):
        winding_count(kq.E(1) - kq.one, Rectangle(F(0), F(1), F(-1), F(1)))


def test_isolate_examples(kq):
    zs = isolate_zeros(kq.E(1) - kq.one, Rectangle(F(-1), F(8), F(-8), F(8)))
    got = sorted((round(z.approx.imag, 6) for z in zs))
    assert got == [-6.283185, 0.0, 6.283185]
    assert all(z.multiplicity == 1 for z in zs)
    zs = isolate_zeros(bessel_split(1).T, Rectangle(F(1), F(10), F(-1), F(1)))
    assert len(zs) == 2
    for z, ref in zip(zs, TAN_ROOTS):
        assert abs(z.approx - ref) < 1e-9
        assert z.refined.contains(complex(ref)) or z.refined.diameter() < 1e-8
    zs = isolate_zeros(kq.x * kq.E(1) - kq.one, Rectangle(F(0), F(1), F(-1), F(1)))
    assert len(zs) == 1 and abs(zs[0].approx - W1) < 1e-9


def test_isolate_double_zero(kq):
    f = (kq.E(1) - kq.one) ** 2
    zs = isolate_zeros(f, UNIT)
    assert [z.multiplicity for z in zs] == [2]
    assert sum(z.multiplicity for z in zs) == winding_count(f, UNIT)


def test_multiplicity_matches_exact_order(ki):
    i = ki.K.gen()
    f = (ki.x - i * ki.one) ** 2 * (ki.E(1) - ki.one)
    assert multiplicity_at(f, i) == vanishing_order_algebraic(f, i) == 2
    assert multiplicity_at(f, 0) == 1
    assert multiplicity_at(f, 2) == 0


@settings(max_examples=6)
@given(st.integers(0, 10 ** 6))
def test_winding_is_additive(kq, seed):
    rng = random.Random(seed)
    f = (kq.E(1) - kq.one) * (kq.x - 2 * kq.one)
    R = Rectangle(F(-3), F(3), F(-7), F(7))
    total = winding_count(f, R)
    assert total == 4  # 0, +-2 pi i and 2
    a = F(rng.randint(-280, 280) + F(1, 3), 100)
    b = F(rng.randint(-650, 650) + F(1, 7), 100)
    parts = [Rectangle(R.re_lo, a, R.im_lo, b), Rectangle(a, R.re_hi, R.im_lo, b),
             Rectangle(R.re_lo, a, b, R.im_hi), Rectangle(a, R.re_hi, b, R.im_hi)]
    assert sum(winding_count(f, p) for p in parts) == total


def test_isolate_is_consistent_with_winding(kq):
    f = (kq.E(2) + kq.E(1) + kq.one) * (kq.x - 2 * kq.one)
    R = Rectangle(F(-3), F(3), F(-5), F(5))
    zs = isolate_zeros(f, R)
    assert sum(z.multiplicity for z in zs) == winding_count(f, R) == 5
    for j, z in enumerate(zs):
        for w in zs[j + 1:]:
            assert z.refined.intersect(w.refined) is None


def test_evidence_examples(kq):
    E, one, x = kq.E, kq.one, kq.x
    rep = evidence_report("common_zeros_vs_gcd", [E(2) - one, E(3) - one],
                          Rectangle(F(-1), F(1), F(-7), F(7)))
    assert rep.passed and len(rep.items) == 3
    rep = evidence_report("simple_zeros", [x * E(1) - 2 * one], Rectangle(F(-3), F(3), F(-15), F(15)))
    assert rep.passed and rep.items
    rep = evidence_report("division_explains_zero",
                          [(E(1) - 2 * one) * (x * E(1) - 3 * one), E(1) - 2 * one],
                          Rectangle(F(0), F(2), F(-1), F(1)))
    assert rep.passed
    assert rep.as_dict()["status"] == "PASS"


def test_evidence_detects_a_wrong_claim(kq):
    # a square factor must fail the simple zero check
    rep = evidence_report("simple_zeros", [(kq.E(1) - 2 * kq.one) ** 2],
                          Rectangle(F(0), F(1), F(-1), F(1)))
    assert not rep.passed
    # a zero at 0 is outside the scope of the claim
    rep = evidence_report("simple_zeros", [(kq.E(1) - kq.one) ** 2], UNIT)
    assert rep.passed and rep.items[0]["status"] == "EXCLUDED"
