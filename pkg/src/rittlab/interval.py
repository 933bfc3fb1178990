"""Complex interval arithmetic and a certified argument-principle walker.

Two backends share one small interface:

* :class:`FloatBackend` -- hardware doubles, every operation rounded outward
  with ``math.nextafter``.  Fast, 53 bits.
* :class:`MPBackend` -- mpmath's interval context at a chosen precision.

The walker (:class:`ArgWalker`) only needs an enclosure function for
f over a rectangle and never looks at floating point samples it cannot
bound, so winding numbers it returns are exact integers.
"""

import math
from fractions import Fraction

import mpmath
from mpmath.ctx_iv import MPIntervalContext
from mpmath.libmp import mpf_cmp, to_float

from .errors import ZeroOnBoundary

_INF = math.inf


def _dn(v, n=1):
    for _ in range(n):
        v = math.nextafter(v, -_INF)
    return v


def _up(v, n=1):
    for _ in range(n):
        v = math.nextafter(v, _INF)
    return v


def _frac_dn(q):
    v = float(q)
    return v if Fraction(v) <= q else _dn(v)


def _frac_up(q):
    v = float(q)
    return v if Fraction(v) >= q else _up(v)


class RI:
    """Closed real interval with double endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        self.lo = lo
        self.hi = lo if hi is None else hi

    def __add__(self, o):
        if isinstance(o, RI):
            return RI(_dn(self.lo + o.lo), _up(self.hi + o.hi))
        return RI(_dn(self.lo + o), _up(self.hi + o))

    __radd__ = __add__

    def __neg__(self):
        return RI(-self.hi, -self.lo)

    def __sub__(self, o):
        if isinstance(o, RI):
            return RI(_dn(self.lo - o.hi), _up(self.hi - o.lo))
        return RI(_dn(self.lo - o), _up(self.hi - o))

    def __mul__(self, o):
        if not isinstance(o, RI):
            o = RI(o)
        a, b, c, d = self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi
        lo, hi = min(a, b, c, d), max(a, b, c, d)
        if math.isnan(lo) or math.isnan(hi):
            return RI(-_INF, _INF)
        return RI(_dn(lo), _up(hi))

    __rmul__ = __mul__

    def contains_zero(self):
        return self.lo <= 0.0 <= self.hi

    def __repr__(self):
        return f"[{self.lo!r}, {self.hi!r}]"


def _ri_exp(x):
    lo = math.exp(x.lo) if x.lo > -745 else 0.0
    try:
        hi = math.exp(x.hi)
    except OverflowError:
        hi = _INF
    return RI(max(0.0, _dn(lo, 3)), _up(hi, 3))


def _ri_cos(x, shift=0.0):
    # cos(t - shift) on [lo, hi]; extrema where t - shift = k*pi
    a, b = x.lo, x.hi
    if not (b - a < 6.0) or math.isinf(a) or math.isinf(b):
        return RI(-1.0, 1.0)
    ca, cb = math.cos(a - shift), math.cos(b - shift)
    lo, hi = min(ca, cb), max(ca, cb)
    slack = 1e-12 * (1.0 + abs(a) + abs(b))
    k0 = math.ceil((a - shift - slack) / math.pi)
    k1 = math.floor((b - shift + slack) / math.pi)
    for k in range(k0, k1 + 1):
        if k % 2 == 0:
            hi = 1.0
        else:
            lo = -1.0
    err = 4e-16 * (1.0 + abs(a) + abs(b))
    return RI(max(-1.0, _dn(lo - err)), min(1.0, _up(hi + err)))


class CI:
    """Rectangular complex interval."""

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = re
        self.im = im

    def __add__(self, o):
        if isinstance(o, CI):
            return CI(self.re + o.re, self.im + o.im)
        return CI(self.re + o, self.im)

    __radd__ = __add__

    def __neg__(self):
        return CI(-self.re, -self.im)

    def __sub__(self, o):
        if isinstance(o, CI):
            return CI(self.re - o.re, self.im - o.im)
        return CI(self.re - o, self.im)

    def __mul__(self, o):
        if isinstance(o, CI):
            return CI(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
        return CI(self.re * o, self.im * o)

    __rmul__ = __mul__

    def __repr__(self):
        return f"CI({self.re!r}, {self.im!r})"


class FloatBackend:
    prec = 53

    def exact(self, q):
        q = Fraction(q)
        return CI(RI(_frac_dn(q), _frac_up(q)), RI(0.0))

    def box(self, re_lo, re_hi, im_lo, im_hi):
        return CI(RI(_frac_dn(Fraction(re_lo)), _frac_up(Fraction(re_hi))),
                  RI(_frac_dn(Fraction(im_lo)), _frac_up(Fraction(im_hi))))

    def from_mp(self, z):
        """Outward conversion of an mpmath complex interval."""
        re_lo, re_hi = z.real._mpi_
        im_lo, im_hi = z.imag._mpi_
        return CI(RI(to_float(re_lo, rnd="f"), to_float(re_hi, rnd="c")),
                  RI(to_float(im_lo, rnd="f"), to_float(im_hi, rnd="c")))

    def exp(self, z):
        r = _ri_exp(z.re)
        return CI(r * _ri_cos(z.im), r * _ri_cos(z.im, shift=math.pi / 2))

    def parts(self, z):
        return z.re.lo, z.re.hi, z.im.lo, z.im.hi

    def intersect(self, a, b):
        re = RI(max(a.re.lo, b.re.lo), min(a.re.hi, b.re.hi))
        im = RI(max(a.im.lo, b.im.lo), min(a.im.hi, b.im.hi))
        return CI(re if re.lo <= re.hi else a.re, im if im.lo <= im.hi else a.im)

    def mid(self, z):
        return complex(0.5 * (z.re.lo + z.re.hi), 0.5 * (z.im.lo + z.im.hi))


class MPBackend:
    def __init__(self, prec):
        self.prec = prec
        self.ctx = MPIntervalContext()
        self.ctx._mp = mpmath.mp
        self.ctx._iv = self.ctx
        self.ctx.prec = prec

    def exact(self, q):
        q = Fraction(q)
        c = self.ctx
        return c.mpc(c.mpf(q.numerator) / c.mpf(q.denominator), 0)

    def box(self, re_lo, re_hi, im_lo, im_hi):
        c = self.ctx
        lo_r, hi_r = self.exact(re_lo).real, self.exact(re_hi).real
        lo_i, hi_i = self.exact(im_lo).real, self.exact(im_hi).real
        return c.mpc(c.mpf([lo_r.a, hi_r.b]), c.mpf([lo_i.a, hi_i.b]))

    def from_mp(self, z):
        return self.ctx.mpc(self.ctx.mpf(z.real), self.ctx.mpf(z.imag))

    def exp(self, z):
        return self.ctx.exp(z)

    def parts(self, z):
        re_lo, re_hi = z.real._mpi_
        im_lo, im_hi = z.imag._mpi_
        return (to_float(re_lo, rnd="f"), to_float(re_hi, rnd="c"),
                to_float(im_lo, rnd="f"), to_float(im_hi, rnd="c"))

    def intersect(self, a, b):
        c = self.ctx
        return c.mpc(_cap(c, a.real, b.real), _cap(c, a.imag, b.imag))

    def mid(self, z):
        lo_r, hi_r = z.real._mpi_
        lo_i, hi_i = z.imag._mpi_
        with mpmath.workprec(self.prec):
            re = (mpmath.mpf(lo_r) + mpmath.mpf(hi_r)) / 2
            im = (mpmath.mpf(lo_i) + mpmath.mpf(hi_i)) / 2
            return mpmath.mpc(re, im)


def _cap(c, x, y):
    xl, xh = x._mpi_
    yl, yh = y._mpi_
    lo = xl if mpf_cmp(xl, yl) >= 0 else yl
    hi = xh if mpf_cmp(xh, yh) <= 0 else yh
    if mpf_cmp(lo, hi) > 0:
        return x
    return c.make_mpf((lo, hi))


_FLOAT = FloatBackend()
_MP_CACHE = {}


def backend(prec):
    """Backend for ``prec`` bits; 53 selects the float backend."""
    if prec <= 53:
        return _FLOAT
    b = _MP_CACHE.get(prec)
    if b is None:
        b = _MP_CACHE[prec] = MPBackend(prec)
    return b


def precision_ladder(start, cap=512):
    p = start
    while p < cap:
        yield p
        p = max(2 * p, 106)
    yield cap


# ---------------------------------------------------------------------------
# argument principle

_QUARTER = math.pi / 2 - 1e-9


def sector_span(parts):
    """Angular width of a box not containing 0, or None when it contains 0."""
    a, b, c, d = parts
    if a <= 0.0 <= b and c <= 0.0 <= d:
        return None
    if any(math.isinf(v) or math.isnan(v) for v in parts):
        return None
    ca = math.atan2(0.5 * (c + d), 0.5 * (a + b))
    rel = []
    for x in (a, b):
        for y in (c, d):
            t = math.atan2(y, x) - ca
            t = (t + math.pi) % (2 * math.pi) - math.pi
            rel.append(t)
    return max(rel) - min(rel)


class ArgWalker:
    """Accumulates certified argument changes along oriented segments.

    ``enclose(B, Z)`` must return an enclosure (in backend ``B``) of f over
    the complex interval ``Z``.  Segment results are memoised by their exact
    endpoints so that rectangles sharing edges reuse work.
    """

    def __init__(self, enclose, prec=53, min_len=Fraction(1, 2 ** 60), budget=None):
        self.enclose = enclose
        self.budget = budget
        self.prec = prec
        self.B = backend(prec)
        self.min_len = min_len
        self._seg = {}
        self._rep = {}

    def _rep_value(self, p):
        v = self._rep.get(p)
        if v is None:
            B = self.B
            e = self.enclose(B, B.box(p[0], p[0], p[1], p[1]))
            if sector_span(B.parts(e)) is None:
                # f(p) is not separated from 0 at this precision; refining the path cannot help
                raise ZeroOnBoundary(f"f({p}) not resolved away from 0 at {self.prec} bits")
            v = B.mid(e)
            self._rep[p] = v
        return v

    def segment(self, p0, p1):
        """Certified argument change of f from p0 to p1 (straight line)."""
        key = (p0, p1)
        hit = self._seg.get(key)
        if hit is not None:
            return hit
        back = self._seg.get((p1, p0))
        if back is not None:
            return -back
        B = self.B
        total = 0.0
        stack = [(p0, p1)]
        while stack:
            q0, q1 = stack.pop()
            sub = self._seg.get((q0, q1))
            if sub is not None:
                total += sub
                continue
            Z = B.box(min(q0[0], q1[0]), max(q0[0], q1[0]),
                      min(q0[1], q1[1]), max(q0[1], q1[1]))
            span = sector_span(B.parts(self.enclose(B, Z)))
            if span is not None and span < _QUARTER:
                r0, r1 = self._rep_value(q0), self._rep_value(q1)
                ch = _phase(r1 / r0)
                self._seg[(q0, q1)] = ch
                total += ch
                continue
            length = abs(q1[0] - q0[0]) + abs(q1[1] - q0[1])
            if self.budget is not None:
                self.budget -= 1
                if self.budget < 0:
                    raise ZeroOnBoundary(f"subdivision budget exhausted at {self.prec} bits")
            if length < self.min_len:
                raise ZeroOnBoundary(f"cannot certify segment {q0}->{q1} at {self.prec} bits")
            m = ((q0[0] + q1[0]) / 2, (q0[1] + q1[1]) / 2)
            self._rep_value(m)
            stack.append((m, q1))
            stack.append((q0, m))
        self._seg[key] = total
        return total

    def polygon(self, pts):
        """Winding number of f along the closed polygon ``pts`` (counterclockwise)."""
        total = 0.0
        n = len(pts)
        for k in range(n):
            total += self.segment(pts[k], pts[(k + 1) % n])
        w = total / (2 * math.pi)
        r = round(w)
        if abs(w - r) > 0.25:
            raise ZeroOnBoundary(f"non-integral winding {w}")
        return int(r)


def _phase(z):
    if isinstance(z, complex):
        return math.atan2(z.imag, z.real)
    return float(mpmath.arg(z))


def rect_points(re_lo, re_hi, im_lo, im_hi):
    return [(re_lo, im_lo), (re_hi, im_lo), (re_hi, im_hi), (re_lo, im_hi)]


def winding_with_escalation(make_walker, pts, start_prec=53, cap=512):
    """Try increasing precisions until the boundary walk certifies."""
    last = None
    for prec in precision_ladder(start_prec, cap):
        walker = make_walker(prec)
        try:
            return walker.polygon(pts)
        except ZeroOnBoundary as exc:
            last = exc
    raise last
