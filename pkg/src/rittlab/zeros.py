"""Certified zero counting and isolation, plus numerical evidence reports.

Winding numbers come from :class:`~rittlab.interval.ArgWalker`, which only
trusts interval enclosures.  Newton iterations are used to *guess* where a
zero is; the guess is accepted only after a certified winding count on a
small square around it.
"""

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .divgcd import ep_divides, ep_gcd
from .errors import MaxDepth, ZeroFunction, ZeroOnBoundary
from .exppoly import Compiled, ExpPoly
from .interval import ArgWalker, precision_ladder, rect_points
from .numberfield import embed_numeric

MAX_PREC = 512


@dataclass(frozen=True)
class Rectangle:
    re_lo: Fraction
    re_hi: Fraction
    im_lo: Fraction
    im_hi: Fraction

    def __post_init__(self):
        for name in ("re_lo", "re_hi", "im_lo", "im_hi"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if not (self.re_lo < self.re_hi and self.im_lo < self.im_hi):
            raise ValueError("rectangle must have positive area")

    @classmethod
    def around(cls, z, r):
        """Square of half-width r centred at the (exact or float) point z."""
        z = complex(z) if not isinstance(z, tuple) else z
        re, im = (Fraction(z.real), Fraction(z.imag)) if not isinstance(z, tuple) else z
        r = Fraction(r)
        return cls(re - r, re + r, im - r, im + r)

    def corners(self):
        return rect_points(self.re_lo, self.re_hi, self.im_lo, self.im_hi)

    def width(self):
        return max(self.re_hi - self.re_lo, self.im_hi - self.im_lo)

    def diameter(self):
        return math.hypot(self.re_hi - self.re_lo, self.im_hi - self.im_lo)

    def area(self):
        return (self.re_hi - self.re_lo) * (self.im_hi - self.im_lo)

    def center(self):
        return complex((self.re_lo + self.re_hi) / 2, (self.im_lo + self.im_hi) / 2)

    def contains(self, z):
        return self.re_lo <= z.real <= self.re_hi and self.im_lo <= z.imag <= self.im_hi

    def intersect(self, o):
        lo_r, hi_r = max(self.re_lo, o.re_lo), min(self.re_hi, o.re_hi)
        lo_i, hi_i = max(self.im_lo, o.im_lo), min(self.im_hi, o.im_hi)
        if lo_r >= hi_r or lo_i >= hi_i:
            return None
        return Rectangle(lo_r, hi_r, lo_i, hi_i)

    def expand(self, eps):
        eps = Fraction(eps)
        return Rectangle(self.re_lo - eps, self.re_hi + eps, self.im_lo - eps, self.im_hi + eps)

    def split(self, fr=Fraction(67, 128), fi=Fraction(69, 128)):
        """Four sub-rectangles cut at dyadic points near the given fractions.

        The default cuts are slightly off-centre so that symmetric boxes are
        not cut through zeros sitting on their axes.
        """
        a = _dyadic_cut(self.re_lo, self.re_hi, fr)
        b = _dyadic_cut(self.im_lo, self.im_hi, fi)
        return [Rectangle(self.re_lo, a, self.im_lo, b), Rectangle(a, self.re_hi, self.im_lo, b),
                Rectangle(self.re_lo, a, b, self.im_hi), Rectangle(a, self.re_hi, b, self.im_hi)]

    def as_tuple(self):
        return (self.re_lo, self.re_hi, self.im_lo, self.im_hi)

    def as_dict(self):
        return {k: str(v) for k, v in zip(("re_lo", "re_hi", "im_lo", "im_hi"), self.as_tuple())}


def _dyadic_cut(lo, hi, frac):
    w = hi - lo
    k = 6 - math.floor(math.log2(w))  # quantum 2^-k <= w/32
    q = Fraction(1, 2 ** k) if k >= 0 else Fraction(2 ** -k)
    t = lo + w * frac
    c = Fraction(round(t / q)) * q
    return c if lo < c < hi else t


@dataclass
class ZeroReport:
    box: Rectangle
    winding: int
    refined: Rectangle
    multiplicity: int
    approx: complex = None

    def as_dict(self):
        z = self.approx if self.approx is not None else self.refined.center()
        return {"box": self.box.as_dict(), "winding": self.winding,
                "refined": self.refined.as_dict(), "multiplicity": self.multiplicity,
                "approx": [z.real, z.imag]}


# ---------------------------------------------------------------------------
# certified winding


def _point(B, Z):
    m = B.mid(Z)
    if isinstance(m, complex):
        return B.box(Fraction(m.real), Fraction(m.real), Fraction(m.imag), Fraction(m.imag))
    return B.ctx.mpc(B.ctx.mpf(m.real), B.ctx.mpf(m.imag))


class _Enclosure:
    """Naive enclosure of f intersected with a Taylor form of the given order.

    The order-k form is sum_{j<k} f^(j)(c) (Z-c)^j / j! + f^(k)(Z) (Z-c)^k / k!.
    Near an m-fold zero |f| is tiny and order m+1 keeps the overestimation
    below it on segments of reasonable length.
    """

    def __init__(self, f, order=1):
        self.order = order
        self.ds = [Compiled(f)]
        g = f
        for _ in range(order):
            g = g.derive()
            self.ds.append(Compiled(g))
        self._fact = [Fraction(1, math.factorial(j)) for j in range(order + 1)]

    def __call__(self, B, Z):
        naive = self.ds[0](B, Z)
        c = _point(B, Z)
        h = Z - c
        k = self.order
        acc = self.ds[k](B, Z) * B.exact(self._fact[k])
        for j in range(k - 1, -1, -1):
            acc = acc * h + self.ds[j](B, c) * B.exact(self._fact[j])
        return B.intersect(naive, acc)


class WindingCounter:
    """Winding counts of one function over many rectangles, sharing boundary work."""

    def __init__(self, f, precision=53, order=1, budget=None):
        if f.is_zero():
            raise ZeroFunction("winding count of the zero function")
        self.f = f
        self.start = precision
        self._enc = _Enclosure(f, order)
        self.budget = budget
        self._walkers = {}

    def _walker(self, prec):
        w = self._walkers.get(prec)
        if w is None:
            w = self._walkers[prec] = ArgWalker(self._enc, prec)
        w.budget = self.budget
        return w

    def __call__(self, box, start=None):
        last = None
        for prec in precision_ladder(max(start or 0, self.start), MAX_PREC):
            try:
                return self._walker(prec).polygon(box.corners())
            except ZeroOnBoundary as exc:
                last = exc
        raise last


def winding_count(f, box, precision=53, order=1):
    """Number of zeros of f in ``box`` counted with multiplicity."""
    if not isinstance(box, Rectangle):
        box = Rectangle(*box)
    return WindingCounter(f, precision, order)(box)


def multiplicity_at(f, x0, radius=Fraction(1, 2 ** 10), max_order=24):
    """Winding count on a small square of half-width ``radius`` centred at x0.

    A floating estimate of the vanishing order picks the Taylor order and
    working precision; the count itself is certified, and other orders are
    tried if the first choice does not certify.
    """
    K = f.K
    x0 = K(x0)
    z = embed_numeric(x0, 80)
    c = complex(mpmath.mpf(z.real.mid), mpmath.mpf(z.imag.mid))
    R = Rectangle.around(c, radius)
    guess = _order_guess(_Numeric(f), c, max_order)
    orders = [guess + 1] + [k for k in (1, 2, 4, 8, 16) if k != guess + 1]
    last = None
    for order in orders:
        bits = min(MAX_PREC, int(order * -math.log2(radius)) + 48)
        try:
            return WindingCounter(f, 53, order, budget=2000)(R, bits)
        except ZeroOnBoundary as exc:
            last = exc
    raise last


def _order_guess(num, z, cap):
    with mpmath.workdps(num.dps):
        scale = max(abs(num.value(0, z + 1)), abs(num.value(0, z - 1)), mpmath.mpf(1))
        for k in range(cap):
            if abs(num.value(k, z)) > scale * mpmath.mpf(10) ** (-num.dps // 2):
                return k
    return cap


# ---------------------------------------------------------------------------
# isolation


class _Numeric:
    """Floating evaluation of f and its derivatives, for Newton guesses only."""

    def __init__(self, f, dps=30):
        self.dps = dps
        self.f = f
        self._cache = {}

    def _compiled(self, k):
        hit = self._cache.get(k)
        if hit is None:
            g = self.f.derive(k) if k else self.f
            conv = lambda c: _mid(embed_numeric(c, 3 * self.dps + 20))
            hit = self._cache[k] = [(conv(b), [conv(c) for c in p]) for b, p in g.items()]
        return hit

    def value(self, k, z):
        acc = mpmath.mpc(0)
        for b, cs in self._compiled(k):
            poly = mpmath.mpc(0)
            for c in reversed(cs):
                poly = poly * z + c
            acc += poly * mpmath.exp(b * z)
        return acc


def _mid(z):
    return mpmath.mpc(mpmath.mpf(z.real.mid), mpmath.mpf(z.imag.mid))


def _newton(num, k, z0, bound, steps=60):
    """Newton on f^(k) from z0; None if it stalls or leaves the disc |z - z0| <= bound."""
    with mpmath.workdps(num.dps):
        z = mpmath.mpc(z0)
        try:
            for _ in range(steps):
                d = num.value(k + 1, z)
                if d == 0:
                    return None
                step = num.value(k, z) / d
                z -= step
                if abs(z - z0) > bound:
                    return None
                if abs(step) < mpmath.mpf(10) ** (-num.dps + 5) * (1 + abs(z)):
                    return complex(z)
        except (OverflowError, ZeroDivisionError):
            return None
    return None


def _refine_radius(tol, box):
    r = Fraction(tol) / 4
    return min(r, box.width() / 4)


def isolate_zeros(f, box, tol=1e-9, max_depth=80, precision=53, seed=0):
    """Certified list of zeros of f in ``box``, each in a square of diameter <= tol.

    A reported zero of multiplicity m may be a cluster of m zeros closer than tol.
    """
    if not isinstance(box, Rectangle):
        box = Rectangle(*box)
    if f.is_zero():
        raise ZeroFunction("isolate_zeros of the zero function")
    rng = random.Random(seed)
    count = WindingCounter(f, precision)
    local = {1: count}  # Taylor-order-(w+1) counters for certifying w-fold zeros
    num = _Numeric(f)
    for _ in range(8):
        try:
            total = count(box)
            break
        except ZeroOnBoundary:
            box = box.expand(Fraction(rng.randint(1, 999), 10000) * Fraction(tol) / 10)
    else:
        raise ZeroOnBoundary("could not find a zero-free boundary near the requested box")
    out = []
    stack = [(box, total, 0)]
    while stack:
        R, w, depth = stack.pop()
        if w == 0:
            continue
        if w not in local:
            local[w] = WindingCounter(f, precision, w + 1, budget=4000)
        rep = _try_certify(local[w], num, R, w, tol)
        if rep is not None:
            out.append(rep)
            continue
        if R.diameter() < tol:
            out.append(ZeroReport(R, w, R, w, R.center()))
            continue
        if depth >= max_depth:
            raise MaxDepth(f"isolation reached depth {max_depth} on {R.as_tuple()}")
        subs = _split_certified(count, R, rng)
        if sum(s[1] for s in subs) != w:
            raise AssertionError("winding is not additive over a partition")
        stack.extend((S, ws, depth + 1) for S, ws in reversed(subs))
    out.sort(key=lambda r: (round(r.approx.real, 12), round(r.approx.imag, 12)))
    return out


def _split_certified(count, R, rng):
    fr, fi = Fraction(67, 128), Fraction(69, 128)
    for _ in range(10):
        subs = R.split(fr, fi)
        try:
            return [(S, count(S)) for S in subs]
        except ZeroOnBoundary:
            fr = Fraction(rng.randint(380, 620), 1000)
            fi = Fraction(rng.randint(380, 620), 1000)
    raise ZeroOnBoundary(f"no certified split of {R.as_tuple()}")


def _try_certify(count, num, R, w, tol):
    z = _newton(num, w - 1, R.center(), 2 * R.diameter())
    if z is None or not R.contains(z):
        return None
    r = _refine_radius(tol, R)
    S = Rectangle.around(z, r).intersect(R)
    if S is None:
        return None
    # near an m-fold zero |f| ~ r^m, so start with enough bits to resolve it
    bits = 53 if w == 1 else min(MAX_PREC, int(w * -math.log2(r)) + 48)
    try:
        m = count(S, bits)
    except ZeroOnBoundary:
        return None
    if m != w:
        return None
    return ZeroReport(R, w, S, m, z)


# ---------------------------------------------------------------------------
# evidence


@dataclass
class EvidenceReport:
    kind: str
    box: Rectangle
    items: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def passed(self):
        return all(i["status"] in ("PASS", "EXCLUDED") for i in self.items) \
            and not any(n.startswith("FAIL") for n in self.notes)

    @property
    def status(self):
        return "PASS" if self.passed else "FAIL"

    def as_dict(self):
        return {"kind": self.kind, "box": self.box.as_dict(), "status": self.status,
                "items": self.items, "notes": self.notes}


def _z_str(z):
    return [z.real, z.imag]


def _match(z, reps, tol):
    for r in reps:
        if abs(r.approx - z) <= tol:
            return r
    return None


def _isolate_joint(fs, box, tol, seed=0):
    """Isolate zeros of all fs in a common box, jittering it if any boundary hits a zero."""
    rng = random.Random(seed)
    for _ in range(8):
        try:
            return box, [isolate_zeros(f, box, tol, seed=seed) for f in fs]
        except ZeroOnBoundary:
            box = box.expand(Fraction(rng.randint(1, 999), 10000) * Fraction(tol) / 10)
    raise ZeroOnBoundary("no common zero-free boundary found")


def evidence_report(kind, inputs, box, tol=1e-9):
    """Numerical PASS/FAIL evidence for a zero-structure statement on ``box``.

    kind is one of ``common_zeros_vs_gcd`` (inputs f1, f2), ``simple_zeros``
    (inputs f) or ``division_explains_zero`` (inputs f, factor).
    """
    if not isinstance(box, Rectangle):
        box = Rectangle(*box)
    inputs = list(inputs)
    if kind == "common_zeros_vs_gcd":
        return _common_vs_gcd(*inputs, box=box, tol=tol)
    if kind == "simple_zeros":
        return _simple(*inputs, box=box, tol=tol)
    if kind == "division_explains_zero":
        return _division(*inputs, box=box, tol=tol)
    raise ValueError(f"unknown evidence kind {kind!r}")


def _common_vs_gcd(f1, f2, box, tol):
    g = ep_gcd(f1, f2)
    fs = [f1, f2] + ([g] if _has_zeros(g) else [])
    box, zs = _isolate_joint(fs, box, tol)
    Z1, Z2 = zs[0], zs[1]
    ZG = zs[2] if len(zs) > 2 else []
    rep = EvidenceReport("common_zeros_vs_gcd", box)
    rep.notes.append(f"gcd = {g}")
    seen = []
    for a in Z1:
        b = _match(a.approx, Z2, tol)
        if b is None:
            continue
        c = _match(a.approx, ZG, tol)
        m = min(a.multiplicity, b.multiplicity)
        mg = c.multiplicity if c else 0
        seen.append(c)
        status = "PASS" if mg == m else "FAIL"
        if abs(a.approx) <= tol:
            # the gcd statement is about C*: coprime functions may share the zero 0
            status = "EXCLUDED"
        rep.items.append({"zero": _z_str(a.approx), "mult_f1": a.multiplicity,
                          "mult_f2": b.multiplicity, "mult_gcd": mg, "status": status})
    for c in ZG:
        if any(c is s for s in seen):
            continue
        rep.items.append({"zero": _z_str(c.approx), "mult_f1": _mult(c.approx, Z1, tol),
                          "mult_f2": _mult(c.approx, Z2, tol), "mult_gcd": c.multiplicity,
                          "status": "FAIL"})
    return rep


def _mult(z, reps, tol):
    r = _match(z, reps, tol)
    return r.multiplicity if r else 0


def _simple(f, box, tol):
    box, (Z,) = _isolate_joint([f], box, tol)
    rep = EvidenceReport("simple_zeros", box)
    for r in Z:
        status = "PASS" if r.multiplicity == 1 else "FAIL"
        if abs(r.approx) <= tol:
            # T_n vanishes to order 2n+1 at 0; the claim concerns zeros in C*
            status = "EXCLUDED"
        rep.items.append({"zero": _z_str(r.approx), "multiplicity": r.multiplicity,
                          "status": status})
    if not Z:
        rep.notes.append("no zeros in box")
    return rep


def _division(f, factor, box, tol):
    q = ep_divides(factor, f)
    rep = EvidenceReport("division_explains_zero", box)
    if q is None:
        rep.notes.append(f"FAIL: {factor} does not divide {f}")
        rep.items.append({"zero": None, "status": "FAIL"})
        return rep
    rep.notes.append(f"quotient = {q}")
    fs = [f, factor] + ([q] if _has_zeros(q) else [])
    box, zs = _isolate_joint(fs, box, tol)
    rep.box = box
    ZF, ZD = zs[0], zs[1]
    ZQ = zs[2] if len(zs) > 2 else []
    for a in ZF:
        expected = a.multiplicity - _mult(a.approx, ZD, tol)
        got = _mult(a.approx, ZQ, tol)
        rep.items.append({"zero": _z_str(a.approx), "mult_f": a.multiplicity,
                          "mult_factor": _mult(a.approx, ZD, tol), "mult_quotient": got,
                          "status": "PASS" if got == expected else "FAIL"})
    for c in ZQ:
        if _match(c.approx, ZF, tol) is None:
            rep.items.append({"zero": _z_str(c.approx), "mult_f": 0, "mult_factor": 0,
                              "mult_quotient": c.multiplicity, "status": "FAIL"})
    return rep


def _has_zeros(f):
    # units lambda*e^{alpha x} never vanish
    return len(f.terms) > 1 or f.degree_x() > 0
