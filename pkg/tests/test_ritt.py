from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from rittlab.errors import FactorSplit, ZeroFunction
from rittlab.exppoly import ExpPoly, UnitE
from rittlab.numberfield import rational_ratio
from rittlab.polyalg import MPoly
from rittlab.ritt import (certify_irreducible, exponent_lattice, polynomial_model, ritt_factor,
                          to_exppoly)

from strategies import exppolys


def test_lattice_examples(QQ, QSQRT2):
    lat = exponent_lattice([QQ(2), QQ(3)])
    assert lat.basis == [QQ(1)]
    lat = exponent_lattice([QQ(F(1, 2)), QQ(F(1, 3))])
    assert lat.basis == [QQ(F(1, 6))]
    assert lat.coords[QQ(F(1, 2))] == (3,)
    s = QSQRT2.gen()
    lat = exponent_lattice([QSQRT2(1), s])
    assert lat.rank == 2
    assert exponent_lattice([QQ(0)]).rank == 0


def test_model_examples(kq, QSQRT2):
    s = QSQRT2.gen()
    one = ExpPoly.const(QSQRT2, 1)
    f1 = ExpPoly.exp(QSQRT2, QSQRT2(1)) - 2 * one
    f2 = ExpPoly.exp(QSQRT2, s) - 3 * one
    m = polynomial_model([f1, f2])
    assert m.lattice.rank == 2 and not m.gamma
    assert sorted(len(P.terms) for P in m.polys) == [2, 2]
    for f, P in zip((f1, f2), m.polys):
        assert to_exppoly(P, m.lattice) == f
    m = polynomial_model([kq.x * kq.E(-1) - 2 * kq.one])
    assert m.gamma == 1
    P = m.polys[0]
    x, X = MPoly.var(kq.K, P.names, 0), MPoly.var(kq.K, P.names, 1)
    assert P == x - 2 * X


def test_factor_example(kq):
    f = (kq.E(1) - kq.one) * (kq.x * kq.E(1) - 2 * kq.one)
    rf = ritt_factor(f)
    assert rf.product() == f
    assert len(rf.simples) == 1 and rf.simples[0].beta == 1
    assert [h.certificate.kind for h in rf.irreducibles] == ["EisensteinBinomial"]
    assert rf.irreducibles[0].certificate.witness["c"] == 2


def test_factor_split_refines(kq):
    # x^2 - e^{2x} only splits once e^{x} is a lattice element
    f = kq.x ** 2 - kq.E(2)
    rf = ritt_factor(f)
    assert rf.product() == f
    got = sorted(str(h.f) for h in rf.irreducibles)
    assert len(got) == 2
    assert all(h.certificate.kind == "LinearInX" or "x" in str(h.f) for h in rf.irreducibles)
    P = polynomial_model([f]).polys[0]
    with pytest.raises(FactorSplit) as exc:
        certify_irreducible(P, T=2)
    assert exc.value.t == 2


def test_units_and_pure_x(kq, ki):
    rf = ritt_factor(3 * kq.E(F(5, 2)))
    assert rf.unit == UnitE(kq.K(3), kq.K(F(5, 2))) and not rf.simples and not rf.irreducibles
    rf = ritt_factor(kq.x ** 2 + kq.one)
    assert rf.irreducibles[0].certificate.kind == "PureXOverK"
    rf = ritt_factor(ki.x ** 2 + ki.one)
    assert {h.certificate.kind for h in rf.irreducibles} == {"LinearInX"}
    with pytest.raises(ZeroFunction):
        ritt_factor(ExpPoly(kq.K))


def test_distinct_supports(ki):
    i = ki.K.gen()
    f = (ki.E(1) - ki.one) * (ki.E(2) + ki.one) * (ki.E(i) - 2 * ki.one)
    rf = ritt_factor(f)
    assert len(rf.simples) == 2
    a, b = rf.simples
    assert rational_ratio(a.beta, b.beta) is None


@given(exppolys(max_terms=3, max_x=1))
def test_factor_reconstructs(f):
    rf = ritt_factor(f)
    assert rf.product() == f
    betas = [s.beta for s in rf.simples]
    for j, a in enumerate(betas):
        for b in betas[j + 1:]:
            assert rational_ratio(a, b) is None


@given(exppolys(max_terms=3, max_x=1), st.sampled_from([F(1), F(-2), F(1, 3)]))
def test_factor_invariant_under_units(f, gamma):
    K = f.K
    g = ExpPoly.exp(K, K(gamma)) * f
    a, b = ritt_factor(f), ritt_factor(g)
    assert sorted(str(h.f) for h in a.irreducibles) == sorted(str(h.f) for h in b.irreducibles)
    assert [s.P for s in a.simples] == [s.P for s in b.simples]


@given(exppolys(max_terms=3, max_x=1))
def test_factor_idempotent_on_parts(f):
    rf = ritt_factor(f)
    for h in rf.irreducibles:
        again = ritt_factor(h.f)
        assert len(again.irreducibles) == 1 and again.irreducibles[0].mult == 1
        assert again.irreducibles[0].f == h.f and not again.simples


@given(st.lists(st.sampled_from([F(1), F(2), F(-3), F(1, 2), F(5, 6)]), min_size=1, max_size=4),
       st.sampled_from([F(1), F(1, 2), F(3)]))
def test_lattice_invariance_under_shift_scaling(QQ, exps, s):
    lat = exponent_lattice([QQ(e) for e in exps])
    lat2 = exponent_lattice([QQ(e * s) for e in exps])
    assert lat2.basis == [b * s for b in lat.basis]
    for e in exps:
        assert lat.element(lat.coords[QQ(e)]) == e
