"""Exponent lattices, the polynomial model and Ritt factorization.

An exponential polynomial f with exponents in the Z-module W spanned by
alpha_1..alpha_p is written  f(x) e^{gamma x} = P(x, e^{alpha_1 x}, ...),
and ring questions about f become questions about P.  Refining the
lattice by 1/t is the substitution X_i -> X_i^t.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from sympy import Matrix
from sympy.matrices.normalforms import hermite_normal_form

from .errors import FactorSplit, ZeroFunction
from .exppoly import (ExpPoly, SimpleEForm, UnitE, canonical_direction, identity_unit,
                      simple_form_of)
from .numberfield import rational_ratio
from .polyalg import MPoly, default_names, factor, mp_gcd, rank1_direction

# ---------------------------------------------------------------------------
# lattice


@dataclass
class ExponentLattice:
    basis: list
    coords: dict  # exponent -> tuple of ints
    K: object = None

    @property
    def rank(self):
        return len(self.basis)

    def element(self, v):
        K = self.basis[0].field if self.basis else self.K
        acc = None
        for a, k in zip(self.basis, v):
            if k:
                acc = a * k if acc is None else acc + a * k
        return acc if acc is not None else K.zero()

    def refine(self, t):
        """The lattice (1/t) W; coordinates scale by t."""
        return ExponentLattice([a * Fraction(1, t) for a in self.basis],
                               {b: tuple(k * t for k in v) for b, v in self.coords.items()}, self.K)


def exponent_lattice(exponents):
    exps = list(dict.fromkeys(exponents))
    if not exps:
        raise ValueError("exponent_lattice needs at least one exponent")
    K = exps[0].field
    den = 1
    for b in exps:
        for c in b.coords:
            den = lcm(den, c.denominator)
    cols = [[int(c * den) for c in b.coords] for b in exps]
    M = Matrix(K.degree, len(exps), lambda i, j: cols[j][i])
    if all(v == 0 for col in cols for v in col):
        return ExponentLattice([], {b: () for b in exps}, K)
    H = hermite_normal_form(M)
    H = H[:, [j for j in range(H.shape[1]) if any(H[:, j])]]
    basis = [K([Fraction(int(H[i, j]), den) for i in range(K.degree)]) for j in range(H.shape[1])]
    coords = {}
    for b, col in zip(exps, cols):
        sol, params = H.gauss_jordan_solve(Matrix(col))
        if params.shape[0]:
            raise AssertionError("lattice basis is not independent")
        v = tuple(int(s) for s in sol)
        if any(Fraction(s) != int(s) for s in sol):
            raise AssertionError("non-integral lattice coordinates")
        coords[b] = v
    lat = ExponentLattice(basis, coords, K)
    for b in exps:
        assert lat.element(coords[b]) == b
    return lat


# ---------------------------------------------------------------------------
# polynomial model


@dataclass
class PolynomialModel:
    gamma: object
    lattice: ExponentLattice
    polys: list


def _model_names(p):
    return default_names(p + 1)


def to_mpoly(f, lattice, shift):
    """MPoly of f * e^{gamma x} where gamma has lattice coordinates ``shift``."""
    names = _model_names(lattice.rank)
    terms = {}
    for b, p in f.terms.items():
        v = tuple(a + s for a, s in zip(lattice.coords[b], shift))
        for k, c in enumerate(p):
            if c:
                terms[(k,) + v] = c
    return MPoly(f.K, names, terms)


def to_exppoly(P, lattice):
    """P(x, e^{alpha_1 x}, ...) as an ExpPoly."""
    K = P.K
    out = ExpPoly(K)
    for e, c in P.terms.items():
        b = lattice.element(e[1:])
        coeffs = [K.zero()] * e[0] + [c]
        out = out + ExpPoly(K, {b: tuple(coeffs)})
    return out


def polynomial_model(fs):
    fs = list(fs)
    if not fs:
        raise ValueError("polynomial_model needs at least one function")
    for f in fs:
        if f.is_zero():
            raise ZeroFunction("polynomial model of the zero function")
    K = fs[0].K
    lat = exponent_lattice([b for f in fs for b in f.terms])
    shift = tuple(-min(lat.coords[b][i] for f in fs for b in f.terms) for i in range(lat.rank))
    gamma = lat.element(shift) if lat.rank else K.zero()
    return PolynomialModel(gamma, lat, [to_mpoly(f, lat, shift) for f in fs])


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class Certificate:
    kind: str  # LinearInX | EisensteinBinomial | EisensteinSimpleRoot | RefinementBounded | PureXOverK
    witness: dict = field(default_factory=dict, hash=False, compare=False)
    maybe_reducible: bool = False

    def as_dict(self):
        return {"kind": self.kind, "witness": {k: str(v) for k, v in self.witness.items()},
                "maybe_reducible": self.maybe_reducible}


def _x_coeffs_univariate(P, cs):
    return all(set(c.variables()) <= {0} for c in cs)


def certify_irreducible(F, T=None):
    """Certificate that the model factor F stays irreducible under refinement.

    Raises FactorSplit(t, factors) when F(x, X^t) splits for some t <= T.
    """
    vs = F.variables()
    xvars = [i for i in vs if i != 0]
    K = F.K
    if vs == (0,) and F.degree(0) == 1:
        c1 = F.terms[(1,) + (0,) * (F.nvars - 1)]
        c0 = F.constant_value()
        return Certificate("LinearInX", {"root": -c0 / c1})
    if vs == (0,):
        return Certificate("PureXOverK", {"degree": F.degree(0)}, maybe_reducible=True)
    # group by X-monomial
    groups = {}
    for e, c in F.terms.items():
        groups.setdefault(e[1:], {})[(e[0],) + (0,) * (F.nvars - 1)] = c
    if len(groups) == 2:
        (m1, g1), (m2, g2) = sorted(groups.items())
        A, B = MPoly(K, F.names, g1), MPoly(K, F.names, g2)
        # x X^a - c X^b: linear in x with coprime monomial coefficients for every refinement
        if len(A.terms) == 1 and len(B.terms) == 1 and {A.degree(0), B.degree(0)} == {0, 1}:
            top, bot = (A, B) if A.degree(0) == 1 else (B, A)
            mt, mb = (m1, m2) if top is A else (m2, m1)
            c = -bot.constant_value() / top.leading()[1]
            return Certificate("EisensteinBinomial",
                               {"shape": "x*X^a - c*X^b", "a": mt, "b": mb, "c": c})
        if mp_gcd(A, B).is_constant():
            from .polyalg import squarefree_prime_candidates
            for top, bot, side in ((A, B, "B"), (B, A, "A")):
                if bot.is_constant():
                    continue
                for p in squarefree_prime_candidates(bot, 0):
                    if not p.divides(top):
                        d = tuple(x - y for x, y in zip(m1, m2))
                        return Certificate("EisensteinSimpleRoot",
                                           {"prime": p, "side": side, "direction": d})
    if T is None:
        T = max(2, sum(max(e[i] for e in F.terms) for i in xvars) ** 2)
    for t in range(2, T + 1):
        G = F
        for i in xvars:
            G = G.inflate(i, t)
        _, facs = factor(G)
        if len(facs) > 1 or facs[0].mult > 1:
            raise FactorSplit(t, facs)
    return Certificate("RefinementBounded", {"T": T})


# ---------------------------------------------------------------------------
# factorization


@dataclass
class IrreducibleFactor:
    f: ExpPoly
    mult: int
    certificate: Certificate


@dataclass
class RittFactorization:
    unit: UnitE
    simples: list
    irreducibles: list
    lattice: ExponentLattice = None

    def product(self):
        out = self.unit.exppoly()
        for s in self.simples:
            out = out * s.exppoly()
        for h in self.irreducibles:
            out = out * h.f ** h.mult
        return out

    def as_dict(self):
        from .exppoly import poly_str
        return {
            "unit": {"lambda": str(self.unit.lam), "alpha": str(self.unit.alpha)},
            "simples": [{"beta": str(s.beta), "P": poly_str(s.P, "X"), "omega": s.omega}
                        for s in self.simples],
            "irreducibles": [{"terms": str(h.f), "mult": h.mult,
                              "certificate": h.certificate.as_dict()} for h in self.irreducibles],
        }


def canonical_rep(f):
    """(u, g) with f = u*g and g the canonical representative of the unit orbit of f.

    g has its minimal exponent (coordinate order) equal to 0 and the leading
    coefficient of its top x-power at the largest exponent equal to 1.
    """
    exps = f.exponents()
    low = exps[-1]
    top = max(f.terms.items(), key=lambda bp: (len(bp[1]), bp[0].coords))
    lam = top[1][-1]
    u = UnitE(lam, low)
    g = UnitE(lam.inv(), -low).exppoly() * f
    return u, g


def _support_key(beta, keys):
    for k in keys:
        if rational_ratio(beta, k) is not None:
            return k
    return None


def ritt_factor(f, T=None, max_refine=6):
    """unit * simples * irreducibles^mult == f, exactly."""
    if f.is_zero():
        raise ZeroFunction("ritt_factor of the zero function")
    K = f.K
    model = polynomial_model([f])
    lat, P = model.lattice, model.polys[0]
    unit = UnitE(K.one(), -model.gamma)
    for _ in range(max_refine):
        try:
            return _factor_model(f, P, lat, unit, T)
        except FactorSplit as split:
            t = split.t
            lat = lat.refine(t)
            P = MPoly(K, P.names, {(e[0],) + tuple(k * t for k in e[1:]): c
                                   for e, c in P.terms.items()})
    raise FactorSplit(0, [])


def _factor_model(f, P, lat, unit, T):
    K = f.K
    if P.is_constant():
        out = RittFactorization(unit * UnitE(P.constant_value(), K.zero()), [], [], lat)
        _check(f, out)
        return out
    scalar, facs = factor(P)
    unit = unit * UnitE(scalar, K.zero())
    groups = {}  # support key -> ExpPoly product
    irreducibles = []
    for fac in facs:
        F, m = fac.poly, fac.mult
        vs = F.variables()
        if len(F.terms) == 1 and vs != (0,):
            (e, c), = F.terms.items()
            unit = unit * UnitE(c ** m, lat.element(e[1:]) * m)
            continue
        g = to_exppoly(F, lat)
        if 0 not in vs and rank1_direction(F) is not None:
            s = simple_form_of(g)
            unit = unit * UnitE(s.unit.lam ** m, s.unit.alpha * m)
            body = UnitE(s.unit.lam.inv(), -s.unit.alpha).exppoly() * g
            key = _support_key(s.beta, groups) or s.beta
            groups[key] = groups.get(key, ExpPoly.const(K, 1)) * body ** m
            continue
        cert = certify_irreducible(F, T)
        u, h = canonical_rep(g)
        unit = unit * UnitE(u.lam ** m, u.alpha * m)
        irreducibles.append(IrreducibleFactor(h, m, cert))
    simples = []
    for key in sorted(groups, key=lambda b: canonical_direction(b).coords):
        s = simple_form_of(groups[key])
        if not s.unit.is_identity():
            unit = unit * s.unit
            s = SimpleEForm(s.omega, identity_unit(K), s.beta, s.P)
        simples.append(s)
    out = RittFactorization(unit, simples, _merge_irreducibles(irreducibles), lat)
    _check(f, out)
    return out


def _merge_irreducibles(items):
    out = []
    for h in items:
        for o in out:
            if o.f == h.f:
                o.mult += h.mult
                break
        else:
            out.append(h)
    return out


def _check(f, fac):
    if fac.product() != f:
        raise AssertionError("Ritt factorization does not reconstruct its input")
