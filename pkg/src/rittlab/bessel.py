"""Half-integer Bessel functions as exponential polynomials.

With nu = n + 1/2 we set T_n(x) = sqrt(pi/2) x^|nu| J_nu(x).  Then
T_{-1} = cos x, T_0 = sin x, and the contiguous relation of J gives

    T_{n+1} = (2n+1) T_n - x^2 T_{n-1}        (n >= 1),  T_1 = T_0 - x T_{-1}
    T_{n-1} = (2n+1) T_n - x^2 T_{n+1}        (n <= -2), T_{-2} = -T_{-1} - x T_0

so every T_n = A_n(x) e^{ix} + B_n(x) e^{-ix} with A_n, B_n in Q(i)[x].
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import CertificationFailed
from .exppoly import ExpPoly, ep_taylor, poly_str
from .numberfield import field_create
from .polyalg import MPoly, eisenstein_certify, mp_gcd, squarefree_decomposition, \
    squarefree_prime_candidates
from .ritt import Certificate

_NAMES = ("x", "Y")


@lru_cache(maxsize=None)
def gaussian_field():
    """Q(i) with generator t = i."""
    return field_create([1, 0, 1], (Fraction(-1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(3, 2)))


@dataclass
class BesselSplit:
    n: int
    A: tuple   # coefficients of A_n, low degree first
    B: tuple
    T: ExpPoly

    @property
    def K(self):
        return self.T.K

    def poly(self, which):
        cs = self.A if which == "A" else self.B
        return MPoly.from_univariate(self.K, _NAMES, 0, list(cs))

    def conjugate_pair(self):
        """True when B_n is the complex conjugate of A_n (T_n is real on the real line)."""
        conj = lambda c: self.K([c.coords[0], -c.coords[1]])
        return len(self.A) == len(self.B) and all(conj(a) == b for a, b in zip(self.A, self.B))

    def as_dict(self):
        return {"n": self.n, "A": poly_str(self.A), "B": poly_str(self.B), "T": str(self.T),
                "normalization": "T = sqrt(pi/2) x^|n+1/2| J_(n+1/2)(x), T_0 = sin x",
                "conjugate_pair": self.conjugate_pair()}


def _sin_cos(K, i):
    ei = ExpPoly.exp(K, i)
    emi = ExpPoly.exp(K, -i)
    return (ei - emi) * (-i / 2), (ei + emi) / 2


@lru_cache(maxsize=None)
def _chain(n):
    K = gaussian_field()
    i = K.gen()
    sin, cos = _sin_cos(K, i)
    x = ExpPoly.x(K)
    x2 = x * x
    T = {-1: cos, 0: sin}
    if n >= 1:
        T[1] = sin - x * cos
        for k in range(1, n):
            T[k + 1] = T[k] * (2 * k + 1) - x2 * T[k - 1]
    elif n <= -2:
        T[-2] = -cos - x * sin
        for k in range(-2, n, -1):
            T[k - 1] = T[k] * (2 * k + 1) - x2 * T[k + 1]
    return T[n]


def _gamma_half(k):
    """Gamma(k + 1/2) / sqrt(pi) as a rational."""
    if k >= 0:
        return Fraction(factorial(2 * k), 4 ** k * factorial(k))
    j = -k
    return Fraction((-4) ** j * factorial(j), factorial(2 * j))


def bessel_series(n, order):
    """Taylor coefficients 0..order of sqrt(pi/2) x^|n+1/2| J_(n+1/2)(x), as rationals."""
    out = [Fraction(0)] * (order + 1)
    base = 2 * n + 1 if n >= 0 else 0
    m = 0
    while base + 2 * m <= order:
        c = Fraction((-1) ** m, factorial(m)) / _gamma_half(m + n + 1)
        out[base + 2 * m] = c / (Fraction(2) ** (n + 1) * 4 ** m)
        m += 1
    return out


def bessel_split(n, verify=True):
    """A_n, B_n and T_n for any integer n (over Q(i))."""
    T = _chain(n)
    K = T.K
    i = K.gen()
    A = T.terms.get(i, ())
    B = T.terms.get(-i, ())
    if set(T.terms) - {i, -i}:
        raise AssertionError("unexpected exponents in the Bessel chain")
    if verify:
        order = 2 * abs(n) + 10
        got = ep_taylor(T, order)
        want = bessel_series(n, order)
        if any(g != w for g, w in zip(got, want)):
            raise AssertionError(f"series of T_{n} does not match the Bessel series")
    return BesselSplit(n, tuple(A), tuple(B), T)


def bessel_certify(n, k_max=4):
    """Eisenstein certificate that T_n is irreducible and stays so under refinement."""
    if n in (-1, 0):
        raise CertificationFailed(f"T_{n} = {'sin' if n == 0 else 'cos'} x is simple, not irreducible")
    s = bessel_split(n)
    A, B = s.poly("A"), s.poly("B")
    K = s.K
    if not mp_gcd(A, B).is_constant():
        raise CertificationFailed(f"gcd(A_{n}, B_{n}) is not 1")
    x = MPoly.var(K, _NAMES, 0)
    for P, name in ((A, "A"), (B, "B")):
        for fac, mult in squarefree_decomposition(P, 0):
            if mult > 1 and fac != x:
                raise CertificationFailed(f"{name}_{n} has a repeated root away from 0")
    Y = MPoly.var(K, _NAMES, 1)
    for top, bot, side in ((A, B, "B"), (B, A, "A")):
        for p in squarefree_prime_candidates(bot, 0):
            if p.divides(top):
                continue
            ks = list(range(1, k_max + 1))
            if all(eisenstein_certify(top * Y ** k + bot, 1, p) for k in ks):
                return Certificate("EisensteinSimpleRoot",
                                   {"n": n, "prime": p, "side": side, "k_checked": k_max,
                                    "form": "A(x)*Y^k + B(x)" if side == "B" else "B(x)*Y^k + A(x)"})
    raise CertificationFailed(f"no simple prime found for T_{n}")
