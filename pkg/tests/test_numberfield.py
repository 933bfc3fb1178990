from fractions import Fraction as F

import mpmath
import pytest
import sympy
from hypothesis import given, strategies as st

from rittlab.errors import (BoxContainsMultipleRoots, BoxContainsNoRoot, DivisionByZero,
                            MixedFields, ParseError, ReduciblePolynomial)
from rittlab.numberfield import (embed_numeric, field_create, from_sympy, parse_complex,
                                 parse_field_decl, rational_ratio, to_sympy)

small = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def coords(n):
    return st.lists(small, min_size=n, max_size=n)


def test_field_create_rejects_bad_input():
    with pytest.raises(ReduciblePolynomial):
        field_create([-1, 0, 1], (0, 2, -1, 1))
    with pytest.raises(BoxContainsNoRoot):
        field_create([1, 0, 1], (5, 6, 5, 6))
    with pytest.raises(BoxContainsMultipleRoots):
        field_create([1, 0, 1], (-1, 1, -2, 2))
    with pytest.raises(ValueError):
        field_create([1, 0, 2], (-1, 1, 0, 2))  # not monic


def test_gaussian_arithmetic(QI):
    i = QI.gen()
    assert i * i == -1
    assert (1 + i) * (1 - i) == 2
    assert (1 + i).inv() == (1 - i) / 2
    assert str(F(1, 2) * i) == "1/2*t"
    assert str(1 - i) == "-t + 1"
    with pytest.raises(DivisionByZero):
        QI.zero().inv()


def test_mixed_fields(QI, QSQRT2):
    with pytest.raises(MixedFields):
        QI.gen() + QSQRT2.gen()


def test_reduction_mod_minpoly(Z12):
    t = Z12.gen()
    assert t ** 4 == t ** 2 - 1
    assert t ** 12 == 1
    assert t ** 6 == -1


@given(coords(4), coords(4))
def test_field_axioms_z12(Z12, a, b):
    x, y = Z12(a), Z12(b)
    assert x * y == y * x
    assert (x + y) * y == x * y + y * y
    if x:
        assert x * x.inv() == 1


@given(coords(2))
def test_embedding_is_a_ring_map(QSQRT2, a):
    x = QSQRT2(a)
    z = embed_numeric(x * x, 80)
    w = embed_numeric(x, 80)
    with mpmath.workprec(120):
        q = lambda v: mpmath.mpf(v.numerator) / v.denominator
        approx = (q(a[0]) + q(a[1]) * mpmath.sqrt(2)) ** 2
        assert abs(mpmath.mpf(z.real.mid) - approx) <= mpmath.mpf(2) ** -79
    assert w.real.delta <= mpmath.mpf(2) ** -80


def test_embedding_width_and_value(Z8):
    z = embed_numeric(Z8.gen(), 100)
    assert z.real.delta <= mpmath.mpf(2) ** -100
    ref = mpmath.exp(1j * mpmath.pi / 4)
    assert abs(complex(ref) - complex(z.real.mid, z.imag.mid)) < 1e-15


def test_rational_ratio(QSQRT2):
    s = QSQRT2.gen()
    assert rational_ratio(3 * s, s) == 3
    assert rational_ratio(s, QSQRT2(1)) is None
    with pytest.raises(DivisionByZero):
        rational_ratio(s, QSQRT2.zero())


def test_parse_complex_and_decl():
    assert parse_complex("0+1i") == (0, 1)
    assert parse_complex("-0.5-0.866i") == (F(-1, 2), F(-433, 500))
    K = parse_field_decl("field Q(t) where t^2+1 = 0 near 0+1i")
    assert K.gen() ** 2 == -1
    assert complex(K.gen()).imag > 0
    K2 = parse_field_decl("field Q(s) where s^2 - 2 = 0 near -1.4")
    assert complex(K2.gen()).real < 0
    with pytest.raises(ParseError):
        parse_field_decl("field K where nonsense")


def test_sympy_bridge_round_trip(Z8):
    t = Z8.gen()
    for a in (t, 1 + 2 * t ** 3, F(1, 3) * t ** 2 - 5):
        assert from_sympy(Z8, to_sympy(a)) == a
    assert isinstance(Z8.sympy_domain(), sympy.polys.domains.AlgebraicField)


def test_catalogue_examples(QSQRT2, Z8, QI):
    s = QSQRT2.gen()
    assert s.inv() == s / 2
    assert abs(complex(s) - 1.41421356237) < 1e-10
    t = Z8.gen()
    w = complex(t + t ** 3)
    assert abs(w.real) < 1e-14 and abs(w.imag - 1.4142135623730951) < 1e-14
    assert rational_ratio(3 * t + 3, t + 1) == 3
    assert rational_ratio(2 * s, s) == 2
    z = embed_numeric(QI.zero(), 53)
    assert z.real.a == z.real.b == 0 and z.imag.a == z.imag.b == 0
    v = embed_numeric(3 + 2 * QI.gen(), 53)
    assert abs(complex(v.real.mid, v.imag.mid) - (3 + 2j)) < 2 ** -50


@given(coords(4))
def test_rational_ratio_is_exact(Z8, a):
    b = Z8(a)
    if b:
        r = rational_ratio(F(7, 3) * b, b)
        assert F(7, 3) * b - r * b == 0
