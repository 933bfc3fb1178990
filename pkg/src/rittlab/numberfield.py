"""Exact arithmetic in a number field K = Q(t) with a fixed complex embedding.

Elements are coordinate vectors in the power basis 1, t, ..., t^(d-1).  The
embedding is pinned by a rational rectangle that isolates one root of the
minimal polynomial; numeric images are certified complex intervals.
"""

import re
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath

from .errors import (BoxContainsMultipleRoots, BoxContainsNoRoot, DivisionByZero,
                     MixedFields, ParseError, ReduciblePolynomial, ZeroOnBoundary)
from .interval import ArgWalker, backend, rect_points, winding_with_escalation

# ---------------------------------------------------------------------------
# dense polynomials over Q, low degree first


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _pmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _psub(a, b):
    n = max(len(a), len(b))
    return _trim([(a[k] if k < len(a) else 0) - (b[k] if k < len(b) else 0) for k in range(n)])


def _pdivmod(a, b):
    a = _trim(a)
    b = _trim(b)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lc = b[-1]
    while len(a) >= len(b):
        c = a[-1] / lc
        k = len(a) - len(b)
        q[k] = c
        for j, y in enumerate(b):
            a[k + j] -= c * y
        a = _trim(a)
    return q, a


def _pinv_mod(a, m):
    """u with a*u = 1 mod m (m irreducible, a != 0 mod m)."""
    r0, r1 = _trim(m), _trim(a)
    s0, s1 = [], [Fraction(1)]
    while r1:
        q, r = _pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(q, s1))
    # r0 is a nonzero constant
    c = r0[0]
    return [x / c for x in s0]


# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FieldDesc:
    """K = Q[t]/(minpoly) embedded in C via the root isolated by ``box``.

    ``minpoly`` holds rational coefficients, lowest degree first, monic.
    ``box`` is (re_lo, re_hi, im_lo, im_hi) with rational endpoints.
    """

    minpoly: tuple
    box: tuple
    name: str = "t"
    _roots: dict = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def degree(self):
        return len(self.minpoly) - 1

    def __eq__(self, other):
        return (isinstance(other, FieldDesc) and self.minpoly == other.minpoly
                and self.box == other.box)

    def __hash__(self):
        return hash((self.minpoly, self.box))

    def __call__(self, value):
        """Coerce an int, Fraction, str ("3/2") or coordinate list into K."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise MixedFields("element belongs to another field")
            return value
        if isinstance(value, (list, tuple)):
            coords = [Fraction(c) for c in value]
            if len(coords) > self.degree:
                return FieldElement(self, _reduce(self, coords))
            return FieldElement(self, coords + [Fraction(0)] * (self.degree - len(coords)))
        return FieldElement(self, [Fraction(value)] + [Fraction(0)] * (self.degree - 1))

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def gen(self):
        if self.degree == 1:
            return self(-self.minpoly[0])
        return self([0, 1])

    def __repr__(self):
        return f"FieldDesc({self.describe()})"

    def describe(self):
        return f"Q({self.name}) where {_poly_str(self.minpoly, self.name)} = 0"

    # -- embedding ----------------------------------------------------------

    def root_enclosure(self, bits):
        """Certified square (center mpc, radius Fraction) around the root."""
        bits = max(int(bits), 53)
        with self._lock:
            for b in sorted(self._roots):
                if b >= bits:
                    return self._roots[b]
            enc = _refine_root(self, bits)
            self._roots[bits] = enc
            return enc

    def sympy_domain(self):
        return _sympy_domain(self)


def _poly_str(coeffs, var="t"):
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = Fraction(coeffs[k])
        if c == 0:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if mono and abs(c) == 1:
            s = mono
        elif mono:
            s = f"{abs(c)}*{mono}"
        else:
            s = str(abs(c))
        parts.append(("-" if c < 0 else "+", s))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, s in parts[1:]:
        out += f" {sign} {s}"
    return out


def _reduce(K, coords):
    coords = list(coords)
    d = K.degree
    m = K.minpoly
    for k in range(len(coords) - 1, d - 1, -1):
        c = coords[k]
        if c:
            for j in range(d):
                coords[k - d + j] -= c * m[j]
        coords[k] = Fraction(0)
    coords = coords[:d]
    return coords + [Fraction(0)] * (d - len(coords))


class FieldElement:
    """Element of K, immutable, hashable."""

    __slots__ = ("field", "coords")

    def __init__(self, K, coords):
        self.field = K
        self.coords = tuple(coords)

    # -- coercion -----------------------------------------------------------

    def _other(self, o):
        if isinstance(o, FieldElement):
            if o.field is not self.field and o.field != self.field:
                raise MixedFields("operands belong to different fields")
            return o
        if isinstance(o, (int, Fraction)):
            return self.field(o)
        return NotImplemented

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, [a + b for a, b in zip(self.coords, o.coords)])

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, [-a for a in self.coords])

    def __sub__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, [a - b for a, b in zip(self.coords, o.coords)])

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if isinstance(o, (int, Fraction)):
            return FieldElement(self.field, [a * o for a in self.coords])
        o = self._other(o)
        if o is NotImplemented:
            return o
        if self.field.degree == 1:
            return FieldElement(self.field, [self.coords[0] * o.coords[0]])
        if o.is_rational():
            c = o.coords[0]
            return FieldElement(self.field, [a * c for a in self.coords])
        if self.is_rational():
            c = self.coords[0]
            return FieldElement(self.field, [a * c for a in o.coords])
        return FieldElement(self.field, _reduce(self.field, _pmul(self.coords, o.coords)))

    __rmul__ = __mul__

    def inv(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero field element")
        if self.is_rational():
            return self.field(1 / self.coords[0])
        u = _pinv_mod(list(self.coords), list(self.field.minpoly))
        return FieldElement(self.field, _reduce(self.field, u + [Fraction(0)] * (self.field.degree - len(u))))

    def __truediv__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, o):
        return self.inv() * o

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- predicates ---------------------------------------------------------

    def is_zero(self):
        return not any(self.coords)

    def is_rational(self):
        return not any(self.coords[1:])

    def to_rational(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coords[0]

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, o):
        if isinstance(o, FieldElement):
            return self.coords == o.coords and (o.field is self.field or o.field == self.field)
        if isinstance(o, (int, Fraction)):
            return self.is_rational() and self.coords[0] == o
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coords[0])
        return hash(self.coords)

    # -- display / numerics -------------------------------------------------

    def __str__(self):
        return _poly_str(self.coords, self.field.name)

    def __repr__(self):
        return f"FieldElement({self})"

    def coord_string(self):
        return "[" + ", ".join(str(c) for c in self.coords) + "]"

    def embed(self, precision=53):
        return embed_numeric(self, precision)

    def __complex__(self):
        z = embed_numeric(self, 60)
        return complex(float(z.real.mid), float(z.imag.mid))


# ---------------------------------------------------------------------------
# creation and validation


def _poly_enclose(coeffs):
    """Enclosure function f(B, Z) for a rational polynomial (mean value form)."""
    deriv = [k * coeffs[k] for k in range(1, len(coeffs))]

    def horner(B, cs, Z):
        acc = B.exact(cs[-1])
        for c in reversed(cs[:-1]):
            acc = acc * Z + B.exact(c)
        return acc

    def enclose(B, Z):
        naive = horner(B, coeffs, Z)
        if not deriv:
            return naive
        lo_r, hi_r, lo_i, hi_i = B.parts(Z)
        cr, ci = Fraction(lo_r + hi_r) / 2, Fraction(lo_i + hi_i) / 2
        C = B.box(cr, cr, ci, ci)
        centred = horner(B, coeffs, C) + horner(B, deriv, Z) * (Z - C)
        return B.intersect(naive, centred)

    return enclose


def count_roots_in_box(coeffs, box):
    """Certified number of roots (with multiplicity) of a rational polynomial in ``box``."""
    enclose = _poly_enclose([Fraction(c) for c in coeffs])
    pts = rect_points(*[Fraction(v) for v in box])
    return winding_with_escalation(lambda p: ArgWalker(enclose, p), pts)


def _is_irreducible_Q(coeffs):
    if len(coeffs) <= 2:
        return True
    import sympy
    t = sympy.Symbol("t")
    P = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], t,
                   domain="QQ")
    _, facs = P.factor_list()
    return len(facs) == 1 and facs[0][1] == 1


def field_create(minpoly, isolating_box, name="t"):
    """Validate ``minpoly`` (coefficients, lowest degree first) and the root box."""
    coeffs = tuple(Fraction(c) for c in _trim([Fraction(c) for c in minpoly]))
    if len(coeffs) < 2:
        raise ValueError("minimal polynomial must have degree >= 1")
    if coeffs[-1] != 1:
        raise ValueError("minimal polynomial must be monic")
    if not _is_irreducible_Q(list(coeffs)):
        raise ReduciblePolynomial(_poly_str(coeffs, name))
    box = tuple(Fraction(v) for v in isolating_box)
    if not (box[0] < box[1] and box[2] < box[3]):
        raise ValueError("isolating box must have positive area")
    n = None
    # a root on the boundary: nudge the box outward a few times
    for k in range(4):
        try:
            n = count_roots_in_box(coeffs, box)
            break
        except ZeroOnBoundary:
            eps = Fraction(1, 10 ** (6 + k)) * (box[1] - box[0] + box[3] - box[2])
            box = (box[0] - eps, box[1] + eps, box[2] - eps, box[3] + eps)
    if n is None or n == 0:
        raise BoxContainsNoRoot(f"no root of {_poly_str(coeffs, name)} in {box}")
    if n > 1:
        raise BoxContainsMultipleRoots(f"{n} roots of {_poly_str(coeffs, name)} in {box}")
    return FieldDesc(coeffs, box, name)


def _approx_roots(coeffs, dps):
    with mpmath.workdps(dps):
        cs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(coeffs)]
        if len(cs) == 2:
            return [-cs[1] / cs[0]]
        return mpmath.polyroots(cs, maxsteps=400, extraprec=4 * dps)


def _refine_root(K, bits):
    coeffs = K.minpoly
    re_lo, re_hi, im_lo, im_hi = K.box
    enclose = _poly_enclose(list(coeffs))
    dps = int(bits * 0.302) + 20
    roots = _approx_roots(coeffs, dps)
    with mpmath.workdps(dps):
        inside = [r for r in roots
                  if re_lo <= Fraction(str(mpmath.re(r))) <= re_hi
                  and im_lo <= Fraction(str(mpmath.im(r))) <= im_hi]
        if len(inside) != 1:
            mid = mpmath.mpc(float((re_lo + re_hi) / 2), float((im_lo + im_hi) / 2))
            inside = [min(roots, key=lambda r: abs(r - mid))]
        r = inside[0]
        cr = Fraction(mpmath.nstr(mpmath.re(r), dps, min_fixed=-mpmath.inf, max_fixed=mpmath.inf))
        ci = Fraction(mpmath.nstr(mpmath.im(r), dps, min_fixed=-mpmath.inf, max_fixed=mpmath.inf))
    rad = Fraction(1, 2 ** (bits + 2))
    sq = (cr - rad, cr + rad, ci - rad, ci + rad)
    if not (re_lo <= sq[0] and sq[1] <= re_hi and im_lo <= sq[2] and sq[3] <= im_hi):
        sq = (max(sq[0], re_lo), min(sq[1], re_hi), max(sq[2], im_lo), min(sq[3], im_hi))
    n = winding_with_escalation(lambda p: ArgWalker(enclose, p, min_len=rad / 2 ** 40),
                                rect_points(*sq), start_prec=bits + 30, cap=max(512, 2 * bits + 60))
    if n != 1:
        raise BoxContainsNoRoot("root refinement failed to certify")
    return sq


def embed_numeric(a, precision=53):
    """Certified complex interval (mpmath ``iv.mpc``) containing the image of ``a``.

    The width of each component is at most 2**-precision.
    """
    K = a.field
    target = Fraction(1, 2 ** precision)
    if a.is_rational():
        B = backend(max(precision, 60) + 10)
        q = a.coords[0]
        z = B.exact(q)
        return z
    guard = 16 + max(0, max(abs(c) for c in a.coords).numerator.bit_length())
    while True:
        bits = precision + guard
        sq = K.root_enclosure(bits)
        B = backend(bits + 20)
        Z = B.box(*sq)
        acc = B.exact(a.coords[-1])
        for c in reversed(a.coords[:-1]):
            acc = acc * Z + B.exact(c)
        lo_r, hi_r = acc.real._mpi_
        lo_i, hi_i = acc.imag._mpi_
        w = max(mpmath.mpf(hi_r) - mpmath.mpf(lo_r), mpmath.mpf(hi_i) - mpmath.mpf(lo_i))
        if w <= mpmath.mpf(target.numerator) / target.denominator:
            return acc
        guard += 32


def rational_ratio(b1, b2):
    """r in Q with b1 = r*b2, or None."""
    if b2.is_zero():
        raise DivisionByZero("rational_ratio with zero denominator")
    q = b1 / b2
    return q.coords[0] if q.is_rational() else None


# ---------------------------------------------------------------------------
# declaration syntax:  field Q(t) where t^2+1 = 0 near 0+1i

_DECL = re.compile(r"^\s*field\s+Q\(\s*([A-Za-z_]\w*)\s*\)\s+where\s+(.+?)\s*=\s*0\s*"
                   r"(?:near\s+(.+?))?\s*$")


def parse_complex(text):
    """'0+1i', '-0.5-0.866i', '1.414', '2i' -> (Fraction re, Fraction im)."""
    s = text.replace(" ", "")
    m = re.fullmatch(r"([+-]?[\d./]+)?(?:([+-]?)([\d./]*)[ij])?", s)
    if not m or not s:
        raise ParseError(f"bad complex number {text!r}")
    re_part = Fraction(m.group(1)) if m.group(1) else Fraction(0)
    im_part = Fraction(0)
    if s.endswith(("i", "j")):
        if m.group(1) and not m.group(2) and not m.group(3):
            # e.g. '2i' parsed as re='2'
            im_part, re_part = re_part, Fraction(0)
        else:
            mag = Fraction(m.group(3)) if m.group(3) else Fraction(1)
            im_part = -mag if m.group(2) == "-" else mag
    return re_part, im_part


def parse_minpoly(text, var="t"):
    import sympy
    t = sympy.Symbol(var)
    try:
        expr = sympy.sympify(text.replace("^", "**"), locals={var: t})
        P = sympy.Poly(expr, t, domain="QQ")
    except (sympy.SympifyError, sympy.PolynomialError, TypeError) as exc:
        raise ParseError(f"bad minimal polynomial {text!r}: {exc}")
    cs = [Fraction(int(c.p), int(c.q)) for c in reversed(P.all_coeffs())]
    lc = cs[-1]
    return [c / lc for c in cs]


def box_near(coeffs, point):
    """Rational box isolating the root of ``coeffs`` nearest to ``point``."""
    roots = _approx_roots([Fraction(c) for c in coeffs], 30)
    p = complex(float(point[0]), float(point[1]))
    roots = [complex(r) for r in roots]
    r = min(roots, key=lambda z: abs(z - p))
    others = [abs(z - r) for z in roots if z is not r and abs(z - r) > 0]
    sep = min(others) if others else 1.0
    h = Fraction(sep / 3).limit_denominator(10 ** 6)
    cr = Fraction(r.real).limit_denominator(10 ** 9)
    ci = Fraction(r.imag).limit_denominator(10 ** 9)
    return (cr - h, cr + h, ci - h, ci + h)


def parse_field_decl(text):
    """Parse ``field Q(t) where <minpoly> = 0 near <a+bi>``."""
    m = _DECL.match(text)
    if not m:
        raise ParseError(f"bad field declaration {text!r}")
    name, poly, near = m.group(1), m.group(2), m.group(3)
    coeffs = parse_minpoly(poly, name)
    point = parse_complex(near) if near else (Fraction(0), Fraction(0))
    return field_create(coeffs, box_near(coeffs, point), name=name)


def rationals():
    """The field Q, presented as Q(t) with t = 0."""
    return field_create([0, 1], (-1, 1, -1, 1))


# ---------------------------------------------------------------------------
# bridge to sympy's algebraic fields (used by polyalg)


@lru_cache(maxsize=None)
def _sympy_domain(K):
    from sympy import CRootOf, QQ, Symbol, Poly
    if K.degree == 1:
        return QQ
    t = Symbol("t")
    P = Poly([QQ(c.numerator, c.denominator) for c in reversed(K.minpoly)], t, domain=QQ)
    dom = QQ.algebraic_field(CRootOf(P.as_expr(), 0))
    mod = [Fraction(int(c.numerator), int(c.denominator)) for c in dom.mod.to_list()]
    if tuple(reversed(mod)) != K.minpoly:
        raise RuntimeError("sympy chose a different primitive element")
    return dom


def to_sympy(a):
    dom = a.field.sympy_domain()
    from sympy import QQ
    if a.field.degree == 1:
        return QQ(a.coords[0].numerator, a.coords[0].denominator)
    return dom([QQ(c.numerator, c.denominator) for c in reversed(a.coords)])


def from_sympy(K, v):
    if K.degree == 1:
        return K(Fraction(int(v.numerator), int(v.denominator)))
    cs = [Fraction(int(c.numerator), int(c.denominator)) for c in v.to_list()]
    return K(list(reversed(cs)))
