"""Sparse multivariate polynomials over a number field K.

Variable 0 is conventionally ``x``; the others are the exponential
variables X1..Xp of the polynomial model.  Ring arithmetic and exact
division are native.  gcd and factorization over K delegate to sympy's
algebraic-field domain (primitive PRS gcd, Trager's norm method).
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd as igcd

from .errors import NotIrreduciblePrime, UnsupportedShape
from .numberfield import FieldElement, from_sympy, to_sympy


def default_names(nvars):
    return ("x",) + tuple(f"X{k}" for k in range(1, nvars))


class MPoly:
    """Polynomial in ``names`` with FieldElement coefficients keyed by exponent tuples."""

    __slots__ = ("K", "names", "terms")

    def __init__(self, K, names, terms=None):
        self.K = K
        self.names = tuple(names)
        self.terms = {}
        if terms:
            for e, c in terms.items():
                c = K(c)
                if c:
                    self.terms[tuple(e)] = c

    # -- constructors -------------------------------------------------------

    @classmethod
    def const(cls, K, names, c):
        return cls(K, names, {(0,) * len(names): c})

    @classmethod
    def var(cls, K, names, i, power=1):
        e = [0] * len(names)
        e[i] = power
        return cls(K, names, {tuple(e): 1})

    @classmethod
    def from_univariate(cls, K, names, i, coeffs):
        """coeffs lowest degree first, in variable ``i``."""
        out = {}
        for k, c in enumerate(coeffs):
            e = [0] * len(names)
            e[i] = k
            out[tuple(e)] = c
        return cls(K, names, out)

    def _new(self, terms):
        p = MPoly.__new__(MPoly)
        p.K, p.names, p.terms = self.K, self.names, terms
        return p

    @property
    def nvars(self):
        return len(self.names)

    # -- predicates ---------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * self.nvars, self.K.zero())

    def variables(self):
        """Indices of variables that actually occur."""
        return tuple(i for i in range(self.nvars) if any(e[i] for e in self.terms))

    def degree(self, i):
        return max((e[i] for e in self.terms), default=-1)

    def min_degree(self, i):
        return min((e[i] for e in self.terms), default=0)

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def leading(self):
        e = max(self.terms)
        return e, self.terms[e]

    def __eq__(self, o):
        if isinstance(o, MPoly):
            return self.names == o.names and self.terms == o.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.names, frozenset(self.terms.items())))

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, o):
        if isinstance(o, MPoly):
            return o
        return MPoly.const(self.K, self.names, o)

    def __add__(self, o):
        o = self._coerce(o)
        out = dict(self.terms)
        for e, c in o.terms.items():
            v = out.get(e)
            v = c if v is None else v + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-self._coerce(o))

    def __rsub__(self, o):
        return self._coerce(o) - self

    def __mul__(self, o):
        if isinstance(o, (int, Fraction, FieldElement)):
            if not o:
                return self._new({})
            return self._new({e: c * o for e, c in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return self._new({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n):
        out = MPoly.const(self.K, self.names, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def monic(self):
        if self.is_zero():
            return self
        return self * self.leading()[1].inv()

    def divide(self, b):
        """Exact quotient self/b, or None when b does not divide self."""
        if b.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        lb, cb = b.leading()
        icb = cb.inv()
        rem = dict(self.terms)
        q = {}
        while rem:
            e = max(rem)
            d = tuple(x - y for x, y in zip(e, lb))
            if min(d) < 0:
                return None
            c = rem[e] * icb
            q[d] = c
            for e2, c2 in b.terms.items():
                k = tuple(x + y for x, y in zip(d, e2))
                v = rem.get(k)
                v = -c * c2 if v is None else v - c * c2
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return self._new(q)

    def divides(self, a):
        return a.divide(self) is not None

    def diff(self, i):
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return self._new(out)

    def coeffs_in(self, i):
        """{k: coefficient of var_i^k} with the coefficients as MPolys (var_i removed)."""
        out = {}
        for e, c in self.terms.items():
            f = list(e)
            f[i] = 0
            out.setdefault(e[i], {})[tuple(f)] = c
        return {k: self._new(v) for k, v in out.items()}

    def inflate(self, i, t):
        """Substitute var_i -> var_i^t."""
        out = {}
        for e, c in self.terms.items():
            f = list(e)
            f[i] *= t
            out[tuple(f)] = c
        return self._new(out)

    def shift_monomial(self, shift):
        return self._new({tuple(a + b for a, b in zip(e, shift)): c for e, c in self.terms.items()})

    def monomial_content(self):
        return tuple(min(e[i] for e in self.terms) for i in range(self.nvars))

    def strip_monomial(self):
        m = self.monomial_content()
        return m, self.shift_monomial(tuple(-v for v in m))

    def univariate_coeffs(self, i):
        """Dense coefficient list (low first) when only var_i occurs."""
        n = self.degree(i)
        out = [self.K.zero()] * (n + 1)
        for e, c in self.terms.items():
            out[e[i]] = c
        return out

    def evaluate(self, i, value):
        """Substitute a field value for var_i (var_i stays as a dummy of degree 0)."""
        out = {}
        for e, c in self.terms.items():
            f = list(e)
            f[i] = 0
            f = tuple(f)
            v = c * (value ** e[i]) if e[i] else c
            out[f] = out[f] + v if f in out else v
        return self._new({e: c for e, c in out.items() if c})

    # -- display ------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(self.names, e) if k)
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            elif len(c.coords) > 1 and sum(1 for v in c.coords if v) > 1:
                parts.append(f"({cs})*{mono}")
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = lambda self: f"MPoly({self})"


# ---------------------------------------------------------------------------
# sympy bridge


def _gens(names):
    import sympy
    return sympy.symbols(",".join(names) + ",", seq=True)


def is_rational(p):
    return all(c.is_rational() for c in p.terms.values())


def to_sympy_poly(p, variables=None, rational=False):
    """sympy Poly over K (or over QQ when ``rational`` and all coefficients are rational)."""
    import sympy
    from sympy import QQ
    variables = tuple(range(p.nvars)) if variables is None else tuple(variables)
    gens = _gens([p.names[i] for i in variables])
    if rational or p.K.degree == 1:
        dom = QQ
        conv = lambda c: QQ(c.coords[0].numerator, c.coords[0].denominator)
    else:
        dom = p.K.sympy_domain()
        conv = to_sympy
    rep = {tuple(e[i] for i in variables): conv(c) for e, c in p.terms.items()}
    if not rep:
        rep = {(0,) * len(variables): dom.zero}
    return sympy.Poly.from_dict(rep, *gens, domain=dom)


def from_sympy_poly(K, names, poly, variables=None):
    variables = tuple(range(len(names))) if variables is None else tuple(variables)
    dom = poly.get_domain()
    out = {}
    for e, c in poly.as_dict(native=True).items():
        full = [0] * len(names)
        for i, k in zip(variables, e):
            full[i] = k
        if dom.is_QQ or dom.is_ZZ:
            out[tuple(full)] = K(Fraction(int(c.numerator), int(c.denominator)))
        else:
            out[tuple(full)] = from_sympy(K, c)
    return MPoly(K, names, out)


def _active(a, b=None):
    vs = set(a.variables())
    if b is not None:
        vs |= set(b.variables())
    return tuple(sorted(vs)) or (0,)


# ---------------------------------------------------------------------------
# gcd / squarefree


def mp_gcd(a, b):
    """Monic (lex leading coefficient 1) gcd of a and b."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if a.is_constant() or b.is_constant():
        return MPoly.const(a.K, a.names, 1)
    # monomial parts are cheap and keep sympy's inputs small
    ma, a1 = a.strip_monomial()
    mb, b1 = b.strip_monomial()
    mono = tuple(min(x, y) for x, y in zip(ma, mb))
    if a1.is_constant() or b1.is_constant():
        g = MPoly.const(a.K, a.names, 1)
    elif a1.divide(b1) is not None:
        g = b1
    elif b1.divide(a1) is not None:
        g = a1
    else:
        vs = _active(a1, b1)
        rat = is_rational(a1) and is_rational(b1)
        g = from_sympy_poly(a.K, a.names,
                            to_sympy_poly(a1, vs, rat).gcd(to_sympy_poly(b1, vs, rat)), vs)
    return g.shift_monomial(mono).monic()


def squarefree_decomposition(a, var=None):
    """[(factor, multiplicity)] with a = c * prod factor^mult; factors squarefree, coprime."""
    if a.is_zero():
        raise ValueError("squarefree decomposition of zero")
    if a.is_constant():
        return []
    vs = _active(a)
    _, fl = to_sympy_poly(a, vs, is_rational(a)).sqf_list()
    out = [(from_sympy_poly(a.K, a.names, f, vs).monic(), m) for f, m in fl]
    return [(f, m) for f, m in out if not f.is_constant()]


# ---------------------------------------------------------------------------
# factorization


@dataclass
class Factor:
    poly: MPoly
    mult: int
    maybe_reducible: bool = False
    how: str = ""


def _univariate_factor(a, i, over_K):
    if not over_K and not is_rational(a):
        raise ValueError("univariate_Q requires rational coefficients")
    _, fl = to_sympy_poly(a, (i,), not over_K).factor_list()
    return [Factor(from_sympy_poly(a.K, a.names, f, (i,)).monic(), m, how="univariate")
            for f, m in fl]


def _scalar_of(a, factors):
    prod = MPoly.const(a.K, a.names, 1)
    for f in factors:
        prod = prod * f.poly ** f.mult
    q = a.divide(prod)
    if q is None or not q.is_constant():
        raise AssertionError("factorization does not multiply back")
    return q.constant_value()


def factor(a, mode="multivariate_baseline", fallback=True):
    """Factor ``a`` into monic irreducible factors with multiplicities.

    Returns (scalar, [Factor]).  The product scalar * prod(f^m) equals ``a``
    exactly; this is checked before returning.
    """
    if a.is_zero() or a.is_constant():
        raise ValueError("factor expects a nonconstant polynomial")
    if mode in ("univariate_Q", "univariate_K"):
        vs = a.variables()
        if len(vs) != 1:
            raise ValueError(f"{mode} needs a univariate polynomial")
        facs = _univariate_factor(a, vs[0], mode == "univariate_K")
    elif mode == "multivariate_baseline":
        facs = _multivariate_baseline(a, fallback)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return _scalar_of(a, facs), facs


def _merge(facs):
    out = []
    for f in facs:
        for g in out:
            if g.poly == f.poly:
                g.mult += f.mult
                g.maybe_reducible = g.maybe_reducible or f.maybe_reducible
                break
        else:
            out.append(f)
    return out


def content_wrt(p, main):
    """Content of p viewed as a polynomial in the variables ``main``.

    It is the product of the factors of p that do not involve ``main``;
    None when it is a constant.
    """
    groups = {}
    for e, c in p.terms.items():
        key = tuple(e[i] for i in main)
        f = list(e)
        for i in main:
            f[i] = 0
        groups.setdefault(key, {})[tuple(f)] = c
    if len(groups) < 2:
        return p._new(next(iter(groups.values()))).monic()
    polys = sorted((p._new(v) for v in groups.values()), key=lambda q: len(q.terms))
    g = polys[0]
    for q in polys[1:]:
        g = mp_gcd(g, q)
        if g.is_constant():
            return None
    return g


def split_by_content(p):
    """Split p into pieces, each free of content with respect to every variable subset."""
    active = p.variables()
    for size in range(1, len(active)):
        for S in combinations(active, size):
            main = tuple(v for v in active if v not in S)
            c = content_wrt(p, main)
            if c is not None and not c.is_constant():
                q = p.divide(c)
                return split_by_content(c) + split_by_content(q.monic())
    return [p]


def _primitive_vector(v):
    g = 0
    for x in v:
        g = igcd(g, x)
    return tuple(x // g for x in v), g


def rank1_direction(p):
    """Primitive w with all exponent differences of p multiples of w, or None."""
    exps = list(p.terms)
    base = exps[0]
    w = None
    for e in exps[1:]:
        d = tuple(x - y for x, y in zip(e, base))
        dw, _ = _primitive_vector(d)
        if w is None:
            w = dw
        elif dw != w and tuple(-x for x in dw) != w:
            return None
    if w is None:
        return None
    first = next(x for x in w if x)
    if first < 0:
        w = tuple(-x for x in w)
    return w


def _factor_rank1(p, w):
    """Factor p = X^v0 * Q(X^w) through the univariate Q."""
    K, names = p.K, p.names
    exps = list(p.terms)
    idx = next(i for i, x in enumerate(w) if x)
    ks = {e: (e[idx] - exps[0][idx]) // w[idx] for e in exps}
    kmin = min(ks.values())
    Q = MPoly(K, names, {tuple([k - kmin] + [0] * (len(names) - 1)): p.terms[e] for e, k in ks.items()})
    wpos = tuple(max(x, 0) for x in w)
    wneg = tuple(max(-x, 0) for x in w)
    out = []
    for f in _univariate_factor(Q, 0, True):
        cs = f.poly.univariate_coeffs(0)
        d = len(cs) - 1
        terms = {}
        for k, c in enumerate(cs):
            if c:
                terms[tuple(a * k + b * (d - k) for a, b in zip(wpos, wneg))] = c
        out.append(Factor(MPoly(K, names, terms).monic(), f.mult, how="binomial"))
    return out


def _linear_certified(p):
    """p has degree 1 in some variable with coprime coefficients."""
    for i in p.variables():
        if p.degree(i) == 1:
            cs = p.coeffs_in(i)
            if 0 not in cs or mp_gcd(cs[0], cs[1]).is_constant():
                return True
    return False


def _two_term_eisenstein(p):
    """Shape A(X)Y^k + B(X) over two variables: look for a prime making Eisenstein work."""
    vs = p.variables()
    if len(vs) != 2:
        return False
    for y, xv in ((vs[0], vs[1]), (vs[1], vs[0])):
        cs = p.coeffs_in(y)
        if len(cs) != 2 or 0 not in cs:
            continue
        k = max(cs)
        A, B = cs[k], cs[0]
        for top, bottom in ((A, B), (B, A)):
            if bottom.is_constant():
                continue
            for f in squarefree_prime_candidates(bottom, xv):
                if not f.divides(top):
                    return True
    return False


def squarefree_prime_candidates(b, xv):
    """Irreducible factors of a univariate b (in var xv) that occur with multiplicity 1."""
    if b.variables() != (xv,):
        return []
    return [f.poly for f in _univariate_factor(b, xv, True) if f.mult == 1]


def _sympy_multivariate(p):
    vs = _active(p)
    if is_rational(p) and p.K.degree > 1:
        _, fl = to_sympy_poly(p, vs, True).factor_list()
        out = []
        for f, m in fl:
            q = from_sympy_poly(p.K, p.names, f, vs)
            _, gl = to_sympy_poly(q, vs).factor_list()
            out += [Factor(from_sympy_poly(p.K, p.names, g, vs).monic(), m * k, how="sympy")
                    for g, k in gl]
        return out
    _, fl = to_sympy_poly(p, vs, is_rational(p)).factor_list()
    return [Factor(from_sympy_poly(p.K, p.names, f, vs).monic(), m, how="sympy") for f, m in fl]


def _classify_piece(q, fallback):
    """Factor a squarefree piece that has no content in any variable subset."""
    vs = q.variables()
    if len(vs) == 1:
        return _univariate_factor(q, vs[0], True)
    if 0 not in vs:
        w = rank1_direction(q)
        if w is not None:
            return _factor_rank1(q, w)
    if _linear_certified(q):
        return [Factor(q, 1, how="linear")]
    if _two_term_eisenstein(q):
        return [Factor(q, 1, how="eisenstein")]
    if fallback:
        return _sympy_multivariate(q)
    return [Factor(q, 1, maybe_reducible=True, how="unsupported")]


def _multivariate_baseline(a, fallback):
    K, names = a.K, a.names
    mono, body = a.strip_monomial()
    facs = []
    for i, k in enumerate(mono):
        if k:
            facs.append(Factor(MPoly.var(K, names, i), k, how="monomial"))
    if body.is_constant():
        return facs
    pending = []
    for piece in split_by_content(body.monic()):
        if piece.is_constant():
            continue
        for sq, m in squarefree_decomposition(piece):
            for f in _classify_piece(sq, fallback):
                f.mult *= m
                pending.append(f)
    facs = _merge(facs + pending)
    if any(f.maybe_reducible for f in facs) and not fallback:
        raise UnsupportedShape("piece outside the certified corpus class", partial=facs)
    return facs


# ---------------------------------------------------------------------------
# Eisenstein


def eisenstein_certify(a, y, prime):
    """Eisenstein's criterion for ``a`` in K[X][Y] (Y = var ``y``) at ``prime`` in K[X].

    True implies ``a`` is irreducible in K(X)[Y].
    """
    pv = prime.variables()
    if len(pv) != 1 or y in pv:
        raise NotIrreduciblePrime("prime must be univariate in a variable other than Y")
    facs = _univariate_factor(prime, pv[0], True)
    if len(facs) != 1 or facs[0].mult != 1:
        raise NotIrreduciblePrime(str(prime))
    cs = a.coeffs_in(y)
    k = max(cs)
    if k < 1:
        return False
    if prime.divides(cs[k]):
        return False
    for j in range(k):
        c = cs.get(j)
        if c is not None and not prime.divides(c):
            return False
    c0 = cs.get(0)
    if c0 is None:
        return False
    return not (prime * prime).divides(c0)
