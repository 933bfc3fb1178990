"""Seeded example families over Q(i), shared by tests and scripts."""

import random
from fractions import Fraction

from .bessel import bessel_split, gaussian_field
from .exppoly import ExpPoly, UnitE


def _kit():
    K = gaussian_field()
    i = K.gen()
    x = ExpPoly.x(K)
    one = ExpPoly.const(K, 1)
    E = lambda b: ExpPoly.exp(K, K(b))
    return K, i, x, one, E


def simple_pool():
    """Simple elements on the supports Q and Q*i."""
    K, i, x, one, E = _kit()
    return [E(1) - 2 * one, E(1) + one, E(2) + E(1) + one, E(Fraction(1, 2)) - 3 * one,
            E(i) - one, E(i) + 3 * one, E(2 * i) - E(i) + 2 * one, E(-i) - 5 * one]


def irreducible_pool():
    K, i, x, one, E = _kit()
    out = [x * E(1) - c * one for c in (1, 2, 3, -1)]
    out += [bessel_split(n).T for n in (-4, -3, -2, 1, 2, 3, 4)]
    return out


def unit_pool():
    K, i, x, one, E = _kit()
    return [UnitE(K(c), K(a)).exppoly() for c, a in
            ((1, 0), (3, 0), (Fraction(-1, 2), 1), (i, -1), (2 * i + 1, Fraction(1, 3)), (1, i))]


def factor_corpus(size=50, seed=2024):
    """Products of a unit, up to two simples on at most two supports, and up to one irreducible."""
    rng = random.Random(seed)
    units, simples, irrs = unit_pool(), simple_pool(), irreducible_pool()
    out = []
    while len(out) < size:
        f = rng.choice(units)
        for s in rng.sample(simples, rng.randint(0, 2)):
            f = f * s ** rng.randint(1, 2)
        if rng.random() < 0.8:
            f = f * rng.choice(irrs)
        if len(f.terms) > 1 or f.degree_x() > 0:
            out.append(f)
    return out


def _small_pool():
    K, i, x, one, E = _kit()
    return [E(1) - one, E(1) + one, E(2) + E(1) + one, E(i) - one, x * E(1) - 2 * one,
            x, x - 2 * one, bessel_split(1).T]


def gcd_triples(size=30, seed=7):
    """(f1, f2, f3) built from a shared pool so that divisibility is sometimes true."""
    rng = random.Random(seed)
    pool = _small_pool()
    K, i, x, one, E = _kit()
    prod = lambda idx: _product(pool, idx, one)
    out = []
    for _ in range(size):
        a = rng.sample(range(len(pool)), 3)
        b = rng.sample(range(len(pool)), 3)
        c = rng.sample(range(len(pool)), rng.randint(1, 2))
        out.append((prod(a), prod(b), prod(c)))
    return out


def _product(pool, idx, one):
    f = one
    for k in idx:
        f = f * pool[k]
    return f


def zero_pairs():
    """Ten (f1, f2, g) with gcd(f1, f2) = g up to a unit; zeros well inside [-5,5]x[-5,5]."""
    K, i, x, one, E = _kit()
    T1 = bessel_split(1).T
    return [
        (E(2) - one, E(3) - one, E(1) - one),
        ((E(1) - one) * (x - 2 * one), (E(1) - one) * (x + one), E(1) - one),
        ((x * E(1) - 2 * one) * (E(1) + one), (x * E(1) - 2 * one) * (x - i * 3), x * E(1) - 2 * one),
        ((E(1) - one) ** 2 * (E(1) + 2 * one), (E(1) - one) * (x - one), E(1) - one),
        (T1 * (E(1) - 3 * one), T1 * (x - 2 * one), T1),
        ((x - one) ** 2 * (x + 2 * one), (x - one) * (E(1) + one), x - one),
        ((E(i) - one) * (E(1) - 2 * one), (E(i) - one) * (E(1) - 3 * one), E(i) - one),
        ((x * E(1) - one) * (x * E(1) - 3 * one), (x * E(1) - one) * (x * E(1) + 2 * one), x * E(1) - one),
        ((E(2) + E(1) + one) * x, (E(1) - one) * (E(2) + E(1) + one), E(2) + E(1) + one),
        (T1 ** 2 * (x - 3 * one), T1 * (x - 4 * one), T1),
    ]


def valuation_corpus():
    """Twenty functions with known zeros at 0, 2 or i."""
    K, i, x, one, E = _kit()
    T1, T2 = bessel_split(1).T, bessel_split(2).T
    h0, h2, hi = x, x - 2 * one, x - i
    return [
        E(1) - one, (E(1) - one) ** 2, x * (E(1) - one), h2 * (E(1) + one), h2 ** 2 * E(3),
        hi * (x * E(1) - 2 * one), hi ** 2 * h2, T1, T2, T1 * h2, h0 ** 3 * (E(1) + 2 * one),
        (E(i) - one) * (E(1) - one), (E(2) - one) * hi, x * E(1) - 3 * one, E(1) + E(-1) - 3 * one,
        h2 * hi * h0, (E(1) - one) * T1, (x * E(1) - one) * h2 ** 3, E(2) + E(1) + one, T2 * hi,
    ]
