"""Holonomic power series with n!-normalized coefficients.

A series here is f = sum_n c_n x^n / n!.  Operators are lists
[a_0(x), ..., a_r(x)] of coefficient lists (lowest degree first) standing
for sum_k a_k(x) d^k/dx^k.
"""

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, factorial

from .errors import (CrossCheckMismatch, DivisionByZeroSeries, InsufficientInitialData,
                     LeadingSingularity, NonUnitConstantTerm)


def falling(n, j):
    out = 1
    for t in range(j):
        out *= n - t
    return out


def _terms(operator):
    """[(k, j, p_kj)] for the nonzero coefficients of the operator."""
    return [(k, j, Fraction(p) if isinstance(p, int) else p)
            for k, a in enumerate(operator) for j, p in enumerate(a) if p]


def apply_operator(operator, c, n_max):
    """n!-normalized coefficients 0..n_max of L(f) given those of f."""
    terms = _terms(operator)
    out = []
    for n in range(n_max + 1):
        acc = Fraction(0)
        for k, j, p in terms:
            if j <= n:
                acc += p * falling(n, j) * c[n - j + k]
        out.append(acc)
    return out


class HolonomicSeries:
    """Solution of sum_k a_k(x) f^(k) = 0 fixed by its first coefficients."""

    def __init__(self, operator, initial):
        self.operator = [list(a) for a in operator]
        while self.operator and not any(self.operator[-1]):
            self.operator.pop()
        if not self.operator:
            raise ValueError("zero operator")
        self._terms = _terms(self.operator)
        self.shift = max(k - j for k, j, _ in self._terms)
        if self.shift < 1:
            raise LeadingSingularity("operator determines no coefficients (max(k - j) < 1)")
        self._cache = [Fraction(c) if isinstance(c, (int, str)) else c for c in initial]
        if len(self._cache) < self.shift:
            raise InsufficientInitialData(
                f"need at least {self.shift} initial coefficients, got {len(self._cache)}")
        self._given = len(self._cache)
        self._lock = threading.Lock()
        # initial data beyond the shift must already satisfy the recurrence
        for idx in range(self.shift, self._given):
            lead, rest = self._equation(idx - self.shift)
            if lead * self._cache[idx] + rest != 0:
                raise ValueError(f"initial coefficient {idx} contradicts the operator")

    @property
    def order(self):
        return len(self.operator) - 1

    def _equation(self, N):
        """(L(N), rest) with L(N)*c_{N+s} + rest = 0 the N-th recurrence equation."""
        lead = Fraction(0)
        rest = Fraction(0)
        c = self._cache
        for k, j, p in self._terms:
            ff = falling(N, j)
            if not ff:
                continue
            if k - j == self.shift:
                lead += p * ff
            else:
                rest += p * ff * c[N - j + k]
        return lead, rest

    def coeff(self, n):
        if n < len(self._cache):
            return self._cache[n]
        with self._lock:
            while len(self._cache) <= n:
                idx = len(self._cache)
                lead, rest = self._equation(idx - self.shift)
                if not lead:
                    raise LeadingSingularity(f"recurrence leading term vanishes at index {idx}")
                self._cache.append(-rest / lead)
        return self._cache[n]

    def coeffs(self, n):
        """c_0..c_{n-1}."""
        if n:
            self.coeff(n - 1)
        return list(self._cache[:n])

    def check(self, n):
        """True when the operator annihilates the series up to x^n."""
        c = self.coeffs(n + self.order + 1)
        return all(v == 0 for v in apply_operator(self.operator, c, n))


def hs_coeff(s, n):
    return s.coeff(n)


def series_coeffs(source, n):
    """First n n!-normalized coefficients of a HolonomicSeries or a sequence."""
    if isinstance(source, HolonomicSeries):
        return source.coeffs(n)
    seq = list(source)
    if len(seq) < n:
        raise InsufficientInitialData(f"series has {len(seq)} coefficients, {n} needed")
    return [Fraction(c) if isinstance(c, (int, str)) else c for c in seq[:n]]


def to_plain(c):
    return [v / factorial(n) for n, v in enumerate(c)]


def from_plain(a):
    return [v * factorial(n) for n, v in enumerate(a)]


# ---------------------------------------------------------------------------
# m-th roots


def _binom_frac(r, k):
    out = Fraction(1)
    for t in range(k):
        out *= (r - t)
    return out / factorial(k)


def mth_root_formula(a, m, L):
    """b_0..b_L from the multinomial expansion of (1 + sum_{n>=1} a_n x^n/n!)^{1/m}.

    The inner sum over compositions n_1+...+n_k = l (n_j >= 1) of
    multinomial(l; n) * a_{n_1}...a_{n_k} is accumulated by the first part:
    S(l, k) = sum_n C(l, n) a_n S(l - n, k - 1).
    """
    S = [[Fraction(0)] * (L + 1) for _ in range(L + 1)]
    S[0][0] = Fraction(1)
    for l in range(1, L + 1):
        for k in range(1, l + 1):
            acc = Fraction(0)
            for n in range(1, l - k + 2):
                if a[n]:
                    acc += comb(l, n) * a[n] * S[l - n][k - 1]
            S[l][k] = acc
    r = Fraction(1, m)
    coef = [_binom_frac(r, k) for k in range(L + 1)]
    return [Fraction(1)] + [sum((coef[k] * S[l][k] for k in range(1, l + 1)), Fraction(0))
                            for l in range(1, L + 1)]


def mth_root_ode(a, m, L):
    """b_0..b_L from m f g' = f' g solved coefficient-wise (EGF products)."""
    b = [Fraction(1)]
    for n in range(L):
        rhs = sum((comb(n, k) * a[k + 1] * b[n - k] for k in range(n + 1)), Fraction(0))
        lhs_rest = sum((comb(n, k) * a[k] * b[n + 1 - k] for k in range(1, n + 1)), Fraction(0))
        b.append(rhs / m - lhs_rest)
    return b


def mth_root_series(f, m, L):
    """Coefficients b_0..b_L of f^{1/m}, computed two ways and compared."""
    if m < 2:
        raise ValueError("m must be at least 2")
    a = series_coeffs(f, L + 1)
    if a[0] != 1:
        raise NonUnitConstantTerm(f"f(0) = {a[0]} != 1")
    b1 = mth_root_formula(a, m, L)
    b2 = mth_root_ode(a, m, L)
    for l, (u, v) in enumerate(zip(b1, b2)):
        if u != v:
            raise CrossCheckMismatch(f"methods disagree at l={l}: {u} vs {v}")
    return b1


def egf_mul(a, b):
    n = min(len(a), len(b))
    return [sum((comb(k, j) * a[j] * b[k - j] for j in range(k + 1)), Fraction(0)) for k in range(n)]


def egf_pow(a, m):
    out = [Fraction(1)] + [Fraction(0)] * (len(a) - 1)
    for _ in range(m):
        out = egf_mul(out, a)
    return out


@dataclass
class DenominatorReport:
    m: int
    D: int
    passed: bool
    first_failure: int = None
    denominators: list = field(default_factory=list)


def denominator_profile(b, m, D=1):
    """Check (m^2 D)^l b_l in Z for every l."""
    base = m * m * D
    dens = []
    first = None
    for l, v in enumerate(b):
        v = Fraction(v)
        dens.append(v.denominator)
        if first is None and (v * base ** l).denominator != 1:
            first = l
    return DenominatorReport(m, D, first is None, first, dens)


# ---------------------------------------------------------------------------
# operator guessing


def _nullspace(rows, ncols):
    """Basis of the right nullspace of a rational matrix (exact, sympy DomainMatrix over QQ)."""
    from sympy import QQ
    from sympy.polys.matrices import DomainMatrix
    M = DomainMatrix([[QQ(v.numerator, v.denominator) for v in r] for r in rows],
                     (len(rows), ncols), QQ)
    N = M.nullspace().to_list()
    return [[Fraction(int(v.numerator), int(v.denominator)) for v in r] for r in N]


def _primitive(op):
    from math import gcd, lcm
    den = 1
    for a in op:
        for p in a:
            den = lcm(den, Fraction(p).denominator)
    ints = [[int(Fraction(p) * den) for p in a] for a in op]
    g = 0
    for a in ints:
        for p in a:
            g = gcd(g, p)
    ints = [[p // g for p in a] for a in ints]
    lead = next(p for p in reversed(ints[-1]) if p)
    if lead < 0:
        ints = [[-p for p in a] for a in ints]
    return [[Fraction(p) for p in a] for a in ints]


def _trim_op(op):
    op = [list(a) for a in op]
    for a in op:
        while a and not a[-1]:
            a.pop()
    while op and not op[-1]:
        op.pop()
    return op


def guess_operator(source, r=2, d=0, L=None, margin=10, safety=10):
    """Smallest (order, degree) operator annihilating the series, or None.

    Orders and degrees are tried from low to high up to (r, d); each
    candidate is solved on a window of L equations and re-checked on
    ``margin`` further coefficients.
    """
    if L is None:
        L = (r + 1) * (d + 1) + safety
    c = series_coeffs(source, L + margin + r + 1)
    for rr in range(0, r + 1):
        for dd in range(0, d + 1):
            cols = [(k, j) for k in range(rr + 1) for j in range(dd + 1)]
            rows = [[Fraction(falling(N, j) * c[N - j + k]) if j <= N else Fraction(0) for k, j in cols]
                    for N in range(L)]
            for v in _nullspace(rows, len(cols)):
                op = [[Fraction(0)] * (dd + 1) for _ in range(rr + 1)]
                for (k, j), val in zip(cols, v):
                    op[k][j] = val
                if not any(op[rr]):
                    continue
                op = _primitive(_trim_op(op))
                check = apply_operator(op, c, L + margin - 1)
                if all(x == 0 for x in check):
                    return op
    return None


# ---------------------------------------------------------------------------
# Leibniz constants


def _tuples(m, k):
    """All (l_1..l_m) with l_j >= 0 summing to k (stars and bars)."""
    for bars in combinations(range(k + m - 1), m - 1):
        prev = -1
        out = []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(k + m - 2 - prev)
        yield tuple(out)


def multinomial(k, ls):
    out = factorial(k)
    for l in ls:
        out //= factorial(l)
    return out


@dataclass
class LeibnizReport:
    m: int
    k: int
    c: int
    tuples: int
    zero_index_tuples: int
    closed_form: int


def leibniz_constants(m, k):
    """c_{k,m}: total multinomial weight of the tuples with every l_j >= 1.

    Checks that those tuples are exactly (1,..,1) for k = m and the
    permutations of (2,1,..,1) for k = m + 1; all other tuples contain 0.
    """
    if m < 2 or k not in (m, m + 1):
        raise ValueError("need m >= 2 and k in {m, m+1}")
    c = 0
    zero = 0
    n = 0
    for ls in _tuples(m, k):
        n += 1
        if 0 in ls:
            zero += 1
            continue
        if k == m:
            assert all(l == 1 for l in ls)
        else:
            assert sorted(ls) == [1] * (m - 1) + [2]
        c += multinomial(k, ls)
    closed = factorial(m) if k == m else m * factorial(m + 1) // 2
    return LeibnizReport(m, k, c, n, zero, closed)


def h_operator(f_operator, m):
    """c_{m+1,m} a_{m+1} D^2 + c_{m,m} a_m D for an order m+1 operator of f."""
    if len(f_operator) != m + 2:
        raise ValueError("f must satisfy an operator of order m + 1")
    c1 = leibniz_constants(m, m + 1).c
    c0 = leibniz_constants(m, m).c
    return [[0], [c0 * Fraction(p) for p in f_operator[m]], [c1 * Fraction(p) for p in f_operator[m + 1]]]


# ---------------------------------------------------------------------------
# entire quotient test


@dataclass
class QuotientResult:
    kind: str  # Polynomial | Inconclusive
    h: list = None  # plain coefficients of the polynomial, low first
    tail: list = field(default_factory=list)  # (index, value) of nonzero tail coefficients


def _series_div(num, den):
    out = []
    num = list(num)
    for n in range(len(num)):
        v = num[n] - sum((out[j] * den[n - j] for j in range(max(0, n - len(den) + 1), n)),
                         Fraction(0))
        out.append(v / den[0])
    return out


def entire_quotient_test(operator, g, N, d0=None):
    """Decide on a truncation whether L(g)/g is a polynomial."""
    if d0 is None:
        d0 = N // 2
    r = len(operator) - 1
    c = series_coeffs(g, N + r + 1)
    Lg = to_plain(apply_operator(operator, c, N))
    gp = to_plain(c[:N + 1])
    v = next((n for n, x in enumerate(gp) if x), None)
    if v is None:
        raise DivisionByZeroSeries("g vanishes to the truncation order")
    if any(Lg[:v]):
        return QuotientResult("Inconclusive", tail=[(n, x) for n, x in enumerate(Lg[:v]) if x])
    q = _series_div(Lg[v:], gp[v:])
    tail = [(n, x) for n, x in enumerate(q) if n > d0 and x]
    if tail:
        return QuotientResult("Inconclusive", tail=tail[:10])
    h = list(q[:d0 + 1])
    while h and not h[-1]:
        h.pop()
    # L(g) = h g to order N
    prod = [sum((h[j] * gp[n - j] for j in range(min(n, len(h) - 1) + 1)), Fraction(0))
            for n in range(N + 1)]
    if prod != Lg:
        return QuotientResult("Inconclusive", tail=[(n, a - b) for n, (a, b) in
                                                    enumerate(zip(Lg, prod)) if a != b][:10])
    return QuotientResult("Polynomial", h=h)
