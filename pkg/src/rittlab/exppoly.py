"""Exponential polynomials  sum_b P_b(x) e^{b x}  over a number field K.

An :class:`ExpPoly` maps each exponent b (a FieldElement) to the dense
coefficient tuple of P_b (lowest degree first, no trailing zeros).
"""

from dataclasses import dataclass
from fractions import Fraction

import mpmath
from math import factorial

from .errors import MixedFields, ZeroFunction
from .interval import backend
from .numberfield import FieldElement, embed_numeric, rational_ratio

# ---------------------------------------------------------------------------
# dense univariate helpers over K


def _ptrim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return tuple(p)


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for k, c in enumerate(b):
        out[k] = out[k] + c
    return _ptrim(out)


def _pmul(a, b):
    if not a or not b:
        return ()
    out = [None] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            v = x * y
            out[i + j] = v if out[i + j] is None else out[i + j] + v
    zero = a[0].field.zero()
    return _ptrim([zero if v is None else v for v in out])


def _pderiv(p):
    return _ptrim([p[k] * k for k in range(1, len(p))])


def _peval(p, x0):
    acc = x0.field.zero()
    for c in reversed(p):
        acc = acc * x0 + c
    return acc


def _single(c):
    return sum(1 for v in c.coords if v) == 1


def _signed(c):
    """(negative?, magnitude) for display."""
    if _single(c) and str(c).startswith("-"):
        return True, -c
    return False, c


def _coef_str(c):
    s = str(c)
    return f"({s})" if not _single(c) else s


def poly_str(p, var="x"):
    """Polynomial over K in ``var`` using the expression grammar."""
    parts = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        neg, mag = _signed(c)
        if not mono:
            body = _coef_str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_coef_str(mag)}*{mono}"
        parts.append(("-" if neg else "+", body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _exp_str(b):
    if b == 1:
        return "exp(x)"
    if b == -1:
        return "exp(-x)"
    if _single(b):
        return f"exp({b}*x)"
    return f"exp(({b})*x)"


def _beta_key(b):
    return b.coords


# ---------------------------------------------------------------------------


class ExpPoly:
    """Immutable exponential polynomial over K."""

    __slots__ = ("K", "terms", "_hash")

    def __init__(self, K, terms=None):
        self.K = K
        self.terms = {}
        self._hash = None
        for b, p in (terms or {}).items():
            b = K(b)
            p = _ptrim(K(c) for c in p)
            if p:
                self.terms[b] = p

    @classmethod
    def _raw(cls, K, terms):
        f = cls.__new__(cls)
        f.K, f.terms, f._hash = K, terms, None
        return f

    @classmethod
    def const(cls, K, c):
        return cls(K, {K.zero(): (K(c),)})

    @classmethod
    def x(cls, K):
        return cls(K, {K.zero(): (K.zero(), K.one())})

    @classmethod
    def exp(cls, K, beta, coeff=1):
        return cls(K, {K(beta): (K(coeff),)})

    # -- structure ----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def exponents(self):
        return sorted(self.terms, key=_beta_key, reverse=True)

    def items(self):
        return [(b, self.terms[b]) for b in self.exponents()]

    def degree_x(self):
        return max((len(p) - 1 for p in self.terms.values()), default=-1)

    def __eq__(self, o):
        if isinstance(o, ExpPoly):
            return self.K == o.K and self.terms == o.terms
        if isinstance(o, (int, Fraction)):
            return self == ExpPoly.const(self.K, o) if o else self.is_zero()
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- ring operations ----------------------------------------------------

    def _coerce(self, o):
        if isinstance(o, ExpPoly):
            if o.K != self.K:
                raise MixedFields("exponential polynomials over different fields")
            return o
        if isinstance(o, (int, Fraction, FieldElement)):
            if isinstance(o, FieldElement) and o.field != self.K:
                raise MixedFields("scalar from another field")
            return ExpPoly.const(self.K, o)
        return None

    def __add__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for b, p in o.terms.items():
            q = _padd(out[b], p) if b in out else p
            if q:
                out[b] = q
            else:
                out.pop(b, None)
        return ExpPoly._raw(self.K, out)

    __radd__ = __add__

    def __neg__(self):
        return ExpPoly._raw(self.K, {b: tuple(-c for c in p) for b, p in self.terms.items()})

    def __sub__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = self._coerce(o)
        if o is None:
            return NotImplemented
        out = {}
        for b1, p1 in self.terms.items():
            for b2, p2 in o.terms.items():
                b = b1 + b2
                q = _pmul(p1, p2)
                q = _padd(out[b], q) if b in out else q
                if q:
                    out[b] = q
                else:
                    out.pop(b, None)
        return ExpPoly._raw(self.K, out)

    __rmul__ = __mul__

    def __truediv__(self, c):
        if not isinstance(c, (int, Fraction, FieldElement)):
            return NotImplemented
        return self * self.K(c).inv()

    def __pow__(self, n):
        out = ExpPoly.const(self.K, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def derive(self, k=1):
        f = self
        for _ in range(k):
            out = {}
            for b, p in f.terms.items():
                q = _padd(_pderiv(p), tuple(c * b for c in p)) if b else _pderiv(p)
                if q:
                    out[b] = q
            f = ExpPoly._raw(self.K, out)
        return f

    def scale_x(self, s):
        """f(s*x) for a rational s."""
        s = Fraction(s)
        return ExpPoly._raw(self.K, {b * s: tuple(c * s ** k for k, c in enumerate(p))
                                     for b, p in self.terms.items()})

    # -- display ------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for b in self.exponents():
            p = self.terms[b]
            nz = [c for c in p if c]
            if not b:
                body = poly_str(p)
            elif len(p) == 1:
                neg, mag = _signed(p[0])
                body = ("-" if neg else "") + (_exp_str(b) if mag == 1
                                               else f"{_coef_str(mag)}*{_exp_str(b)}")
            elif len(nz) == 1:
                body = f"{poly_str(p)}*{_exp_str(b)}"
            else:
                body = f"({poly_str(p)})*{_exp_str(b)}"
            if not out:
                out.append(body)
            elif body.startswith("-"):
                out.append(" - " + body[1:])
            else:
                out.append(" + " + body)
        return "".join(out)

    def __repr__(self):
        return f"ExpPoly({self})"


# ---------------------------------------------------------------------------
# public operations


def ep_build(K, terms):
    """Sum of P(x) e^{b x} over ``terms`` = [(b, P)]; P a scalar or coefficient list."""
    f = ExpPoly(K)
    for b, p in terms:
        if isinstance(b, FieldElement) and b.field != K:
            raise MixedFields("exponent from another field")
        if not isinstance(p, (list, tuple)):
            p = [p]
        for c in p:
            if isinstance(c, FieldElement) and c.field != K:
                raise MixedFields("coefficient from another field")
        f = f + ExpPoly(K, {K(b): tuple(p)})
    return f


def ep_arith(op, f, g=None):
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "derive":
        return f.derive()
    raise ValueError(f"unknown op {op!r}")


def ep_taylor(f, n):
    """Plain Taylor coefficients a_0..a_n of f at 0."""
    K = f.K
    out = []
    for k in range(n + 1):
        acc = K.zero()
        for b, p in f.terms.items():
            for j, c in enumerate(p[:k + 1]):
                if not c:
                    continue
                m = k - j
                if m == 0:
                    acc = acc + c
                elif b:
                    acc = acc + c * b ** m * Fraction(1, factorial(m))
        out.append(acc)
    return out


def taylor_order(f):
    """Vanishing order of f at 0 and the first two nonzero-order coefficients."""
    if f.is_zero():
        raise ZeroFunction("the zero function has no order")
    n = 4
    while True:
        a = ep_taylor(f, n)
        for p in range(n):
            if a[p]:
                return p, a[p], a[p + 1]
        n *= 2


@dataclass(frozen=True)
class UnitE:
    """lam * e^{alpha x}."""

    lam: FieldElement
    alpha: FieldElement

    def exppoly(self):
        return ExpPoly.exp(self.lam.field, self.alpha, self.lam)

    def __mul__(self, o):
        return UnitE(self.lam * o.lam, self.alpha + o.alpha)

    def inverse(self):
        return UnitE(self.lam.inv(), -self.alpha)

    def is_identity(self):
        return self.lam == 1 and not self.alpha

    def __str__(self):
        return str(self.exppoly())


def identity_unit(K):
    return UnitE(K.one(), K.zero())


def ep_normalize(f):
    """(u, g): the unique unit u with g = u*f normalized (a_p = 1, a_{p+1} = 0)."""
    p, ap, ap1 = taylor_order(f)
    lam = ap.inv()
    u = UnitE(lam, -(ap1 * lam))
    return u, u.exppoly() * f


def is_normalized(f):
    _, ap, ap1 = taylor_order(f)
    return ap == 1 and not ap1


@dataclass(frozen=True)
class SimpleEForm:
    """x^{-omega} * lam e^{alpha x} * P(e^{beta x}); ``P`` is monic, low degree first."""

    omega: int
    unit: UnitE
    beta: FieldElement
    P: tuple

    def exppoly(self):
        """lam e^{alpha x} P(e^{beta x}), i.e. the form without the x^{-omega} factor."""
        K = self.beta.field
        f = ExpPoly(K, {self.beta * k: (c,) for k, c in enumerate(self.P) if c})
        return self.unit.exppoly() * f

    def __str__(self):
        pre = f"x^-{self.omega} * " if self.omega else ""
        return f"{pre}({self.unit}) * P({_exp_str(self.beta)}), P = {poly_str(self.P, 'X')}"


@dataclass(frozen=True)
class Classification:
    kind: str  # Zero | Unit | Simple | General
    unit: UnitE = None
    simple: SimpleEForm = None


def ord1(P):
    """Multiplicity of 1 as a root of P (coefficients low first)."""
    n = 0
    while P and not sum(P, P[0].field.zero()):
        # synthetic division by (X - 1)
        q = [None] * (len(P) - 1)
        acc = P[-1].field.zero()
        for k in range(len(P) - 1, 0, -1):
            acc = acc + P[k]
            q[k - 1] = acc
        P = tuple(q)
        n += 1
    return n


def _rat_gcd(qs):
    """Positive generator of the Z-span of rationals ``qs``."""
    from math import gcd, lcm
    den = 1
    for q in qs:
        den = lcm(den, q.denominator)
    g = 0
    for q in qs:
        g = gcd(g, int(q * den))
    return Fraction(g, den)


def canonical_direction(b):
    """Sign making the first nonzero coordinate positive."""
    for c in b.coords:
        if c:
            return b if c > 0 else -b
    return b


def simple_form_of(f):
    """SimpleEForm when f is simple (or a unit), else None."""
    K = f.K
    if f.is_zero() or any(len(p) > 1 for p in f.terms.values()):
        return None
    exps = f.exponents()
    if len(exps) == 1:
        return None
    base = canonical_direction(exps[1] - exps[0])
    diffs = []
    for b in exps[1:]:
        r = rational_ratio(b - exps[0], base)
        if r is None:
            return None
        diffs.append(r)
    # all exponents on the support line through 0: use the lattice they span
    r0 = rational_ratio(exps[0], base) if exps[0] else Fraction(0)
    if r0 is not None:
        pos = [r0] + [r0 + d for d in diffs]
        step = _rat_gcd(pos)
    else:
        pos = [Fraction(0)] + diffs
        step = _rat_gcd(diffs)
    beta = base * step
    ks = [int(q / step) for q in pos]
    kmin = min(ks)
    alpha0 = beta * kmin if r0 is not None else exps[0] + beta * kmin
    coeffs = {k - kmin: f.terms[b][0] for k, b in zip(ks, exps)}
    deg = max(coeffs)
    lead = coeffs[deg]
    P = tuple((coeffs.get(k, K.zero()) / lead) for k in range(deg + 1))
    return SimpleEForm(ord1(P), UnitE(lead, alpha0), beta, P)


def ep_classify(f):
    if f.is_zero():
        return Classification("Zero")
    if len(f.terms) == 1:
        (b, p), = f.terms.items()
        if len(p) == 1:
            return Classification("Unit", unit=UnitE(p[0], b))
        return Classification("General")
    s = simple_form_of(f)
    if s is not None:
        return Classification("Simple", simple=s)
    return Classification("General")


# ---------------------------------------------------------------------------
# certified evaluation


class Compiled:
    """Interval images of the exponents and coefficients of f, per backend precision."""

    def __init__(self, f):
        self.f = f
        self._cache = {}

    def data(self, B):
        hit = self._cache.get(B.prec)
        if hit is None:
            bits = max(B.prec + 10, 64)
            conv = lambda c: B.from_mp(embed_numeric(c, bits)) if not c.is_rational() \
                else B.exact(c.coords[0])
            hit = [(conv(b) if b else None, [conv(c) for c in p]) for b, p in self.f.items()]
            self._cache[B.prec] = hit
        return hit

    def __call__(self, B, Z):
        acc = None
        for b, cs in self.data(B):
            poly = cs[-1]
            for c in reversed(cs[:-1]):
                poly = poly * Z + c
            term = poly if b is None else B.exp(b * Z) * poly
            acc = term if acc is None else acc + term
        return acc if acc is not None else B.exact(0)


def _as_mp_interval(B, z):
    """Coerce a point, a (re_lo, re_hi, im_lo, im_hi) box or an mpmath interval."""
    if isinstance(z, tuple) and len(z) == 4:
        return B.box(*z)
    if hasattr(z, "_mpi_"):
        return B.ctx.mpc(z, 0)
    if hasattr(z, "real") and hasattr(z.real, "_mpi_"):
        return B.ctx.mpc(z.real, z.imag)
    if isinstance(z, (mpmath.mpf, mpmath.mpc)):
        z = mpmath.mpc(z)
        return B.ctx.mpc(B.ctx.mpf(z.real), B.ctx.mpf(z.imag))
    if isinstance(z, complex):
        return B.box(Fraction(z.real), Fraction(z.real), Fraction(z.imag), Fraction(z.imag))
    if isinstance(z, FieldElement):
        return B.from_mp(embed_numeric(z, B.prec + 10))
    q = Fraction(z)
    return B.box(q, q, 0, 0)


def ep_eval(f, z, precision=53):
    """Certified enclosure (mpmath interval ``mpc``) of f over z."""
    from .interval import MPBackend
    B = backend(max(precision, 54))
    if not isinstance(B, MPBackend):
        B = MPBackend(max(precision, 54))
    return Compiled(f)(B, _as_mp_interval(B, z))


# ---------------------------------------------------------------------------


def vanishing_order_algebraic(f, x0):
    """Exact order of vanishing of f at the algebraic point x0."""
    if f.is_zero():
        raise ZeroFunction("vanishing order of the zero function")
    K = f.K
    x0 = K(x0)
    if not x0:
        return taylor_order(f)[0]
    g = f
    k = 0
    while True:
        # distinct exponentials are linearly independent over Qbar at x0 != 0
        if any(_peval(p, x0) for p in g.terms.values()):
            return k
        g = g.derive()
        k += 1


def h_point(K, x0):
    """h_{x0} = (1 - x/x0) e^{x/x0}, or x when x0 = 0."""
    x0 = K(x0)
    if not x0:
        return ExpPoly.x(K)
    r = x0.inv()
    return ExpPoly(K, {r: (K.one(), -r)})
