"""Command line front end: ``rittlab <verb> ...`` or ``rittlab run script.rl``.

Exit codes: 0 success or PASS, 1 a mathematical "no" (does not divide,
FAIL evidence, no operator found), 2 an error.  With ``--json`` every
command prints one JSON document; exact values are always strings.
"""

import argparse
import json
import os
import shlex
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import bessel as bessel_mod
from .divgcd import decomposition_view, ep_divides, ep_gcd, simple_part
from .efunc import (HolonomicSeries, denominator_profile, guess_operator, mth_root_series)
from .errors import RittlabError
from .exppoly import ep_normalize, ep_taylor, h_point, poly_str, vanishing_order_algebraic
from .numberfield import parse_field_decl, rationals
from .parser import parse_element, parse_expression
from .ritt import ritt_factor
from .zeros import Rectangle, evidence_report, isolate_zeros

EXIT_OK, EXIT_NO, EXIT_ERROR = 0, 1, 2


@dataclass
class Session:
    field: object
    bindings: dict = field(default_factory=dict)
    options: dict = field(default_factory=dict)

    DEFAULTS = {"tol": 1e-9, "precision": 53, "T": None}

    def __post_init__(self):
        opts = dict(self.DEFAULTS)
        env = os.environ.get("RITTLAB_PRECISION")
        if env:
            opts["precision"] = int(env)
        for k, v in self.options.items():
            self._check(k, v)
            opts[k] = v
        self.options = opts

    def _check(self, key, value):
        if key not in self.DEFAULTS:
            raise ValueError(f"unknown option {key!r}")
        if key == "tol" and not value > 0:
            raise ValueError("tol must be positive")
        if key == "precision" and not (isinstance(value, int) and 53 <= value <= 4096):
            raise ValueError("precision must be an integer in [53, 4096]")
        if key == "T" and value is not None and value < 1:
            raise ValueError("T must be >= 1")

    def set(self, key, value):
        self._check(key, value)
        self.options[key] = value

    def parse(self, src):
        return parse_expression(src, self.field)

    def bind(self, name, value):
        if getattr(value, "K", self.field) != self.field:
            raise ValueError("bound objects must live in the session field")
        self.bindings[name] = value


def make_field(decl):
    if decl is None or decl.strip() in ("Q", "QQ"):
        return rationals()
    return parse_field_decl(decl)


# ---------------------------------------------------------------------------
# serialization


def _q(v):
    return str(Fraction(v))


def _unit(u):
    return {"lambda": str(u.lam), "alpha": str(u.alpha)}


def _series_source(args, session):
    """EGF coefficient source from --expr, --operator/--initial or --coeffs."""
    if args.operator:
        op = [[Fraction(c) for c in row] for row in json.loads(args.operator)]
        init = [Fraction(c) for c in json.loads(args.initial or "[]")]
        return HolonomicSeries(op, init)
    if args.coeffs:
        return [Fraction(c) for c in json.loads(args.coeffs)]
    if args.expr:
        f = session.parse(args.expr)
        n = getattr(args, "need", None) or 200
        plain = ep_taylor(f, n)
        out = []
        fact = 1
        for k, a in enumerate(plain):
            if k:
                fact *= k
            if not a.is_rational():
                raise ValueError("series commands need rational Taylor coefficients")
            out.append(a.to_rational() * fact)
        return out
    raise ValueError("give a series with --expr, --operator/--initial or --coeffs")


def _rect(vals):
    return Rectangle(*[Fraction(v) for v in vals])


# ---------------------------------------------------------------------------
# verbs; each returns (result, exit code, text)


def cmd_factor(a, s):
    f = s.parse(a.expr)
    rf = ritt_factor(f, a.T if a.T is not None else s.options["T"])
    lines = [f"unit: {rf.unit}"]
    lines += [f"simple: {sf}" for sf in rf.simples]
    lines += [f"irreducible^{h.mult}: {h.f}  [{h.certificate.kind}]" for h in rf.irreducibles]
    return rf.as_dict(), EXIT_OK, "\n".join(lines)


def cmd_gcd(a, s):
    g = ep_gcd(s.parse(a.f1), s.parse(a.f2))
    return {"gcd": str(g)}, EXIT_OK, str(g)


def cmd_divides(a, s):
    q = ep_divides(s.parse(a.f1), s.parse(a.f2))
    if q is None:
        return {"divides": False, "quotient": None}, EXIT_NO, "does not divide"
    return {"divides": True, "quotient": str(q)}, EXIT_OK, f"quotient: {q}"


def cmd_normalize(a, s):
    u, g = ep_normalize(s.parse(a.expr))
    return {"unit": _unit(u), "normalized": str(g)}, EXIT_OK, f"unit: {u}\nnormalized: {g}"


def cmd_valuation(a, s):
    f = s.parse(a.expr)
    K = s.field
    if a.at is not None:
        x0 = parse_element(a.at, K)
        view = decomposition_view(f, s.options["T"])
        v = view.valuation(h_point(K, x0))
        res = {"point": str(x0), "h": str(h_point(K, x0)), "valuation": v,
               "vanishing_order": vanishing_order_algebraic(f, x0)}
        return res, EXIT_OK, f"v = {v}"
    if a.h is not None:
        h = s.parse(a.h)
        v = decomposition_view(f, s.options["T"]).valuation(ep_normalize(h)[1])
        return {"h": a.h, "valuation": v}, EXIT_OK, f"v = {v}"
    view = decomposition_view(f, s.options["T"])
    text = "\n".join(f"v[{h}] = {v}" for h, v in view.valuations.items()) or "no valuations"
    return view.as_dict(), EXIT_OK, text


def cmd_simple_part(a, s):
    sp = simple_part(s.parse(a.expr), parse_element(a.beta, s.field))
    if sp is None:
        return {"simple_part": None}, EXIT_NO, "no simple part on that support"
    res = {"beta": str(sp.beta), "P": poly_str(sp.P, "X"), "omega": sp.omega, "unit": _unit(sp.unit)}
    return res, EXIT_OK, str(sp)


def cmd_zeros(a, s):
    f = s.parse(a.expr)
    tol = a.tol if a.tol is not None else s.options["tol"]
    zs = isolate_zeros(f, _rect(a.rect), tol, precision=s.options["precision"])
    lines = [f"{z.approx.real:.12g}{z.approx.imag:+.12g}i  multiplicity {z.multiplicity}" for z in zs]
    return {"zeros": [z.as_dict() for z in zs]}, EXIT_OK, "\n".join(lines) or "no zeros"


_EVIDENCE = {"th10": ("common_zeros_vs_gcd", 2), "simple": ("simple_zeros", 1),
             "explain": ("division_explains_zero", 2)}


def cmd_evidence(a, s):
    kind, nargs = _EVIDENCE[a.which]
    if len(a.exprs) != nargs:
        raise ValueError(f"evidence {a.which} takes {nargs} expression(s)")
    fs = [s.parse(e) for e in a.exprs]
    tol = a.tol if a.tol is not None else s.options["tol"]
    rep = evidence_report(kind, fs, _rect(a.rect), tol)
    lines = [f"{it['status']}  {it['zero']}" for it in rep.items] + rep.notes + [rep.status]
    return rep.as_dict(), EXIT_OK if rep.passed else EXIT_NO, "\n".join(lines)


def cmd_mroot(a, s):
    a.need = a.L + 2
    b = mth_root_series(_series_source(a, s), a.m, a.L)
    return {"m": a.m, "b": [_q(v) for v in b], "methods_agree": True}, EXIT_OK, \
        " ".join(_q(v) for v in b)


def cmd_guess_op(a, s):
    a.need = (a.r + 1) * (a.d + 1) + a.margin + a.r + 40
    op = guess_operator(_series_source(a, s), a.r, a.d, margin=a.margin)
    if op is None:
        return {"operator": None}, EXIT_NO, "no operator found"
    res = [[_q(c) for c in row] for row in op]
    return {"operator": res}, EXIT_OK, json.dumps(res)


def cmd_denoms(a, s):
    a.need = a.L + 2
    b = mth_root_series(_series_source(a, s), a.m, a.L)
    rep = denominator_profile(b, a.m, a.D)
    res = {"m": rep.m, "D": rep.D, "passed": rep.passed, "first_failure": rep.first_failure,
           "denominators": [str(d) for d in rep.denominators]}
    return res, EXIT_OK if rep.passed else EXIT_NO, "PASS" if rep.passed else \
        f"FAIL at l = {rep.first_failure}"


def cmd_bessel(a, s):
    sp = bessel_mod.bessel_split(a.n)
    return sp.as_dict(), EXIT_OK, f"A = {poly_str(sp.A)}\nB = {poly_str(sp.B)}\nT = {sp.T}"


def cmd_bessel_certify(a, s):
    cert = bessel_mod.bessel_certify(a.n)
    return cert.as_dict(), EXIT_OK, f"{cert.kind}: prime {cert.witness['prime']}"


# ---------------------------------------------------------------------------
# argument parsing


def _series_args(p):
    p.add_argument("--expr")
    p.add_argument("--operator", help="JSON list of coefficient lists")
    p.add_argument("--initial", help="JSON list of initial n!-normalized coefficients")
    p.add_argument("--coeffs", help="JSON list of n!-normalized coefficients")


def build_parser():
    ap = argparse.ArgumentParser(prog="rittlab", description=__doc__.splitlines()[0])
    ap.add_argument("--field", help="'Q' or 'field Q(t) where <minpoly> = 0 near <a+bi>'")
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    ap.add_argument("--precision", type=int, help="working bits for certified evaluation")
    sub = ap.add_subparsers(dest="verb", required=True)

    def verb(name, fn, *pos):
        p = sub.add_parser(name)
        for q in pos:
            p.add_argument(q)
        p.set_defaults(fn=fn)
        return p

    verb("factor", cmd_factor, "expr").add_argument("--T", type=int)
    verb("gcd", cmd_gcd, "f1", "f2")
    verb("divides", cmd_divides, "f1", "f2")
    verb("normalize", cmd_normalize, "expr")
    p = verb("valuation", cmd_valuation, "expr")
    p.add_argument("--at")
    p.add_argument("--h")
    verb("simple-part", cmd_simple_part, "expr").add_argument("--beta", required=True)
    p = verb("zeros", cmd_zeros, "expr")
    p.add_argument("--rect", nargs=4, required=True)
    p.add_argument("--tol", type=float)
    p = verb("evidence", cmd_evidence)
    p.add_argument("which", choices=sorted(_EVIDENCE))
    p.add_argument("exprs", nargs="+")
    p.add_argument("--rect", nargs=4, required=True)
    p.add_argument("--tol", type=float)
    p = verb("mroot", cmd_mroot)
    _series_args(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--L", type=int, default=20)
    p = verb("guess-op", cmd_guess_op)
    _series_args(p)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--d", type=int, default=0)
    p.add_argument("--margin", type=int, default=10)
    p = verb("denoms", cmd_denoms)
    _series_args(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--D", type=int, default=1)
    p.add_argument("--L", type=int, default=30)
    verb("bessel", cmd_bessel).add_argument("--n", type=int, required=True)
    verb("bessel-certify", cmd_bessel_certify).add_argument("--n", type=int, required=True)
    verb("run", None, "script")
    return ap


def run_command(args, session, as_json, out=None):
    """Execute one parsed command; prints its output and returns the exit code."""
    out = out or sys.stdout
    try:
        res, code, text = args.fn(args, session)
    except (RittlabError, ValueError, ZeroDivisionError, json.JSONDecodeError) as exc:
        kind = exc.kind if isinstance(exc, RittlabError) else type(exc).__name__
        doc = {"error": kind, "detail": str(exc)}
        if as_json:
            print(json.dumps(doc), file=out)
        else:
            print(f"error: {kind}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if as_json:
        print(json.dumps({"verb": args.verb, "exit": code, "result": res}), file=out)
    else:
        print(text, file=out)
    return code


def run_script(path, ap, field_decl, as_json, precision):
    """Line-oriented script: optional field declaration first, then one command per line."""
    with open(path) as fh:
        lines = [ln.split("#", 1)[0].strip() for ln in fh]
    lines = [ln for ln in lines if ln]
    if lines and lines[0].startswith("field"):
        field_decl = lines.pop(0)
    session = Session(make_field(field_decl))
    if precision:
        session.set("precision", precision)
    worst = EXIT_OK
    for ln in lines:
        try:
            args = ap.parse_args(shlex.split(ln))
        except SystemExit:
            print(json.dumps({"error": "ParseError", "detail": ln}) if as_json
                  else f"error: cannot parse command {ln!r}", file=sys.stdout if as_json else sys.stderr)
            return EXIT_ERROR
        if args.verb == "run":
            return EXIT_ERROR
        worst = max(worst, run_command(args, session, as_json or args.json))
    return worst


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.verb == "run":
            return run_script(args.script, ap, args.field, args.json, args.precision)
        session = Session(make_field(args.field))
        if args.precision:
            session.set("precision", args.precision)
    except (RittlabError, ValueError, OSError) as exc:
        kind = exc.kind if isinstance(exc, RittlabError) else type(exc).__name__
        if args.json:
            print(json.dumps({"error": kind, "detail": str(exc)}))
        else:
            print(f"error: {kind}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return run_command(args, session, args.json)


if __name__ == "__main__":
    sys.exit(main())
