"""Divisibility, gcd and h-adic valuations of exponential polynomials.

Everything is computed on the joint polynomial model of the inputs:
monomials in the exponential variables are units, the variable x is not.
"""

from dataclasses import dataclass, field

from .errors import DistinctSupports, ZeroFunction
from .exppoly import (ExpPoly, SimpleEForm, UnitE, ep_normalize, h_point, identity_unit, ord1,
                      simple_form_of, taylor_order)
from .numberfield import rational_ratio
from .polyalg import MPoly, mp_gcd
from .ritt import polynomial_model, ritt_factor, to_exppoly


def _strip_units(P):
    """Remove the monomial content in the exponential variables; returns (shift, rest)."""
    m = list(P.monomial_content())
    m[0] = 0
    m = tuple(m)
    return m, P.shift_monomial(tuple(-v for v in m))


def _joint(fs, refine):
    for f in fs:
        if f.is_zero():
            raise ZeroFunction("divisibility and gcd need nonzero inputs")
    model = polynomial_model(fs)
    lat, polys = model.lattice, model.polys
    if refine != 1:
        lat = lat.refine(refine)
        polys = [MPoly(P.K, P.names, {(e[0],) + tuple(k * refine for k in e[1:]): c
                                      for e, c in P.terms.items()}) for P in polys]
    return lat, polys


def ep_divides(f1, f2, refine=1):
    """q with f2 = f1*q, or None when the joint model shows no exact quotient."""
    lat, (P1, P2) = _joint([f1, f2], refine)
    m1, R1 = _strip_units(P1)
    Q = P2.divide(R1)
    if Q is None:
        return None
    shift = lat.element(m1[1:]) if lat.rank else f1.K.zero()
    q = UnitE(f1.K.one(), -shift).exppoly() * to_exppoly(Q, lat)
    if f1 * q != f2:
        raise AssertionError("quotient check failed")
    return q


def ep_gcd(f1, f2, refine=1):
    """Normalized gcd of f1 and f2 on their joint lattice."""
    lat, (P1, P2) = _joint([f1, f2], refine)
    _, R1 = _strip_units(P1)
    _, R2 = _strip_units(P2)
    G = mp_gcd(R1, R2)
    g = ep_normalize(to_exppoly(G, lat))[1]
    if ep_divides(g, f1, refine) is None or ep_divides(g, f2, refine) is None:
        raise AssertionError("gcd does not divide its inputs")
    return g


def _poly_in_Y(P, k):
    """P(Y^k) for k != 0 as a dense list; negative k reverses (a unit multiple)."""
    if k < 0:
        P = tuple(reversed(P))
        k = -k
    K = P[0].field
    out = [K.zero()] * ((len(P) - 1) * k + 1)
    for j, c in enumerate(P):
        out[j * k] = c
    return out


def simple_gcd(g1, g2):
    """gcd of two simple elements with the same support, as a SimpleEForm or the unit 1."""
    r = rational_ratio(g2.beta, g1.beta)
    if r is None:
        raise DistinctSupports(f"{g1.beta} and {g2.beta} span different lines")
    K = g1.beta.field
    beta0 = g1.beta / r.denominator
    # g1.beta = q*beta0, g2.beta = p*beta0
    names = ("Y",)
    A = MPoly.from_univariate(K, names, 0, _poly_in_Y(g1.P, r.denominator))
    B = MPoly.from_univariate(K, names, 0, _poly_in_Y(g2.P, r.numerator))
    G = mp_gcd(A, B)
    if G.is_constant():
        return identity_unit(K)
    cs = G.univariate_coeffs(0)
    f = ExpPoly(K, {beta0 * k: (c,) for k, c in enumerate(cs) if c})
    s = simple_form_of(f)
    return SimpleEForm(s.omega, identity_unit(K), s.beta, s.P)


# ---------------------------------------------------------------------------
# decomposition view


@dataclass
class DecompositionView:
    unit: UnitE
    simple_parts: dict   # support representative (canonical beta) -> SimpleEForm
    valuations: dict     # normalized irreducible ExpPoly -> positive int
    x_adjust: int = 0    # power of x carried by the h_0 key beyond the simple/irreducible orders
    irreducible_orders: dict = field(default_factory=dict)

    def reconstruct(self):
        K = self.unit.lam.field
        out = self.unit.exppoly()
        for s in self.simple_parts.values():
            out = out * s.exppoly()
        x = ExpPoly.x(K)
        for h, v in self.valuations.items():
            if h == x:
                out = out * x ** self.x_adjust
            else:
                out = out * h ** v
        return out

    def valuation(self, h):
        return self.valuations.get(h, 0)

    def as_dict(self):
        from .exppoly import poly_str
        return {
            "unit": {"lambda": str(self.unit.lam), "alpha": str(self.unit.alpha)},
            "simple_parts": [{"beta": str(s.beta), "P": poly_str(s.P, "X"), "omega": s.omega,
                              "unit": {"lambda": str(s.unit.lam), "alpha": str(s.unit.alpha)}}
                             for s in self.simple_parts.values()],
            "valuations": [{"h": str(h), "v": v} for h, v in self.valuations.items()],
        }


def decomposition_view(f, T=None):
    """Unit, normalized simple parts and h-adic valuations of f.

    The h_0 = x valuation collects the orders at 0 of every simple part
    (their omega) and of every irreducible, so it equals the vanishing
    order of f at 0.  Irreducible keys are the normalized exponential
    polynomials h; in the E-function layer they stand for x^(-ord_0 h) h.
    """
    rf = ritt_factor(f, T)
    K = f.K
    x = ExpPoly.x(K)
    unit = rf.unit
    simples = {}
    vals = {}
    orders = {}
    v0 = 0
    x_pow = 0
    for s in rf.simples:
        S = s.exppoly()
        u, g = ep_normalize(S)
        unit = unit * u.inverse()
        simples[s.beta] = SimpleEForm(s.omega, u, s.beta, s.P)
        v0 += s.omega
    for h in rf.irreducibles:
        cert = h.certificate
        if cert.kind == "LinearInX":
            x0 = cert.witness["root"]
            if not x0:
                v0 += h.mult
                x_pow += h.mult
                # h.f is x itself
                continue
            key = h_point(K, x0)
            # x - x0 = -x0 e^{-x/x0} h_{x0}
            unit = unit * UnitE((-x0) ** h.mult, -(x0.inv()) * h.mult)
            vals[key] = vals.get(key, 0) + h.mult
            continue
        u, g = ep_normalize(h.f)
        unit = unit * UnitE(u.lam.inv() ** h.mult, -u.alpha * h.mult)
        k = taylor_order(h.f)[0]
        orders[g] = k
        v0 += k * h.mult
        vals[g] = vals.get(g, 0) + h.mult
    if v0:
        vals = {x: v0, **vals}
    view = DecompositionView(unit, simples, vals, x_pow, orders)
    if view.reconstruct() != f:
        raise AssertionError("decomposition view does not reconstruct f")
    return view


def valuation(f, h):
    """v_h(f) for a normalized irreducible key h (use h_point for h_{x0})."""
    return decomposition_view(f).valuations.get(h, 0)


def simple_part(f, beta):
    """The simple part of f whose support contains beta, or None."""
    view = decomposition_view(f)
    for b, s in view.simple_parts.items():
        if rational_ratio(beta, b) is not None:
            return s
    return None
