from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from rittlab.errors import NotIrreduciblePrime, UnsupportedShape
from rittlab.polyalg import (MPoly, eisenstein_certify, factor, mp_gcd, rank1_direction,
                             split_by_content, squarefree_decomposition)

NAMES = ("x", "X1", "X2")


def gens(K):
    return [MPoly.var(K, NAMES, i) for i in range(3)]


def test_gcd_examples(QQ, QI):
    x, X, _ = gens(QQ)
    assert mp_gcd(X ** 2 - 1, X ** 3 - 1) == X - 1
    xi, Xi, _ = gens(QI)
    assert mp_gcd(Xi ** 2 + 1, Xi ** 2 - 1).is_constant()
    a = (x - 1) * (X - 2) ** 2
    b = (X - 2) * (x + 1)
    assert mp_gcd(a, b) == X - 2


def test_squarefree_examples(QQ, QI):
    x, X, _ = gens(QQ)
    sq = dict(squarefree_decomposition((X - 1) ** 2 * (X + 3)))
    assert sq == {X - 1: 1, X + 3: 1} or sq == {X - 1: 2, X + 3: 1}
    assert sq[X - 1] == 2
    xi, Xi, _ = gens(QI)
    assert squarefree_decomposition(Xi ** 4 + 2 * Xi ** 2 + 1) == [(Xi ** 2 + 1, 2)]
    i = QI.gen()
    B1 = (xi * -1 + i) * F(1, 2)
    assert squarefree_decomposition(B1) == [(xi - i, 1)]


def test_factor_examples(QI):
    x, X, Y = gens(QI)
    i = QI.gen()
    c, facs = factor(X ** 4 - 1, mode="univariate_K")
    assert sorted(str(f.poly) for f in facs) == sorted(str(X - r) for r in (1, -1, i, -i))
    c, facs = factor(x * X - 2)
    assert len(facs) == 1 and facs[0].mult == 1
    c, facs = factor(X ** 2 * Y - Y ** 2)
    assert {f.poly for f in facs} == {Y, X ** 2 - Y}


def test_factor_strict_mode_raises_on_unknown_shapes(QQ):
    x, X, Y = gens(QQ)
    # x^2 X + x Y + X Y^2 has no content, is not linear, not rank 1 and not Eisenstein
    p = x ** 2 * X + x * Y + X * Y ** 2 + 1
    c, facs = factor(p)
    assert facs
    try:
        factor(p, fallback=False)
    except UnsupportedShape as exc:
        assert exc.partial is not None


def test_eisenstein_examples(QQ, QI):
    x, X, Y = gens(QQ)
    for k in range(1, 6):
        assert eisenstein_certify(Y ** k + X, 2, X)
    assert not eisenstein_certify(Y ** 2 - X ** 2, 2, X)
    xi, Xi, Yi = gens(QI)
    i = QI.gen()
    A1 = (xi + i) * F(-1, 2)
    B1 = (xi - i) * F(-1, 2)
    assert eisenstein_certify(A1 * Xi ** 2 + B1, 1, xi - i)
    with pytest.raises(NotIrreduciblePrime):
        eisenstein_certify(Y ** 2 + X, 2, X ** 2 - 1)
    with pytest.raises(NotIrreduciblePrime):
        eisenstein_certify(Y ** 2 + X, 2, X * Y)


def test_content_split_and_rank1(QQ):
    x, X, Y = gens(QQ)
    parts = split_by_content((X - 1) * (Y + x))
    prod = parts[0]
    for p in parts[1:]:
        prod = prod * p
    assert prod.monic() == ((X - 1) * (Y + x)).monic()
    assert rank1_direction(X ** 2 * Y ** 2 + 3) == (0, 1, 1)
    assert rank1_direction(X + Y + 1) is None


polys = st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(-3, 3)),
                 min_size=1, max_size=4)


def _mk(K, data):
    terms = {}
    for a, b, c in data:
        if c:
            terms[(a, b, 0)] = terms.get((a, b, 0), F(0)) + c
    return MPoly(K, NAMES, {e: K(c) for e, c in terms.items() if c})


@given(polys, polys, polys)
def test_gcd_divides_and_is_maximal(QQ, s1, s2, s3):
    a, b, c = _mk(QQ, s1), _mk(QQ, s2), _mk(QQ, s3)
    if a.is_zero() or b.is_zero() or c.is_zero():
        return
    g = mp_gcd(a * c, b * c)
    assert g.divides(a * c) and g.divides(b * c)
    assert c.divides(g)


@given(polys, polys)
def test_factor_multiplies_back(QQ, s1, s2):
    a, b = _mk(QQ, s1), _mk(QQ, s2)
    p = a * b
    if p.is_zero() or p.is_constant():
        return
    scalar, facs = factor(p)
    prod = MPoly.const(QQ, NAMES, scalar)
    for f in facs:
        prod = prod * f.poly ** f.mult
        for g, m in squarefree_decomposition(f.poly):
            assert m == 1
    assert prod == p


@given(polys)
def test_squarefree_parts_coprime_to_derivative(QQ, s):
    p = _mk(QQ, s)
    if p.is_zero() or p.is_constant():
        return
    for g, m in squarefree_decomposition(p):
        d = g
        for v in g.variables():
            d = mp_gcd(d, g.diff(v))
        assert d.is_constant()
