"""Exact parser for exponential polynomial expressions.

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | '+' unary | power
    power  := atom ('^' nat)?
    atom   := rational | <generator> | 'x' | 'exp' '(' expr ')' | '(' expr ')'

``1/2`` lexes as one rational.  Division is only by nonzero constants, and
the argument of exp must be beta*x with beta in K.  Anything printed by
``str(ExpPoly)`` parses back to the same object.
"""

import re
from fractions import Fraction

from .errors import DivisionByZero, ExponentNotAffine, ParseError, UnknownSymbol
from .exppoly import ExpPoly

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))")


def tokenize(src):
    out = []
    pos = 0
    src = src.rstrip()
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m or m.end() == pos:
            pos += len(src[pos:]) - len(src[pos:].lstrip())
            raise ParseError(f"unexpected character {src[pos]!r}", pos)
        start = m.start(m.lastgroup)
        if m.lastgroup == "num" and m.end() < len(src) and src[m.end()] == ".":
            raise ParseError("decimal literals are not exact; write a fraction", m.end())
        val = m.group(m.lastgroup)
        if m.lastgroup == "num" and "/" in val and out and out[-1][1] == "^":
            # x^2/3 means (x^2)/3
            a, b = val.split("/")
            out += [("num", a, start), ("op", "/", start + len(a)), ("num", b, start + len(a) + 1)]
        else:
            out.append((m.lastgroup, val, start))
        pos = m.end()
    out.append(("end", "", len(src)))
    return out


class _Parser:
    def __init__(self, src, K):
        self.toks = tokenize(src)
        self.i = 0
        self.K = K

    def peek(self):
        return self.toks[self.i]

    def take(self, value=None):
        tok = self.toks[self.i]
        if value is not None and tok[1] != value:
            raise ParseError(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok[2])
        self.i += 1
        return tok

    def parse(self):
        e = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return e

    def expr(self):
        acc = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.unary()
        while self.peek()[1] in ("*", "/"):
            _, op, pos = self.take()
            rhs = self.unary()
            if op == "*":
                acc = acc * rhs
            else:
                c = _constant(rhs)
                if c is None:
                    raise ParseError("division is only allowed by constants", pos)
                if not c:
                    raise DivisionByZero("division by zero in expression")
                acc = acc / c
        return acc

    def unary(self):
        if self.peek()[1] == "-":
            self.take()
            return -self.unary()
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "num":
                raise ParseError("exponent must be a natural number", pos)
            return base ** int(val)
        return base

    def atom(self):
        kind, val, pos = self.take()
        K = self.K
        if kind == "num":
            return ExpPoly.const(K, Fraction(val))
        if kind == "name":
            if val == "x":
                return ExpPoly.x(K)
            if val == K.name and K.degree > 1:
                return ExpPoly.const(K, K.gen())
            if val == "exp":
                self.take("(")
                start = self.peek()[2]
                arg = self.expr()
                self.take(")")
                return ExpPoly.exp(K, _slope(arg, start))
            raise UnknownSymbol(f"unknown symbol {val!r}", pos)
        if val == "(":
            e = self.expr()
            self.take(")")
            return e
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos)


def _constant(f):
    """The value of a constant ExpPoly, or None."""
    if f.is_zero():
        return f.K.zero()
    if set(f.terms) == {f.K.zero()} and f.degree_x() == 0:
        return f.terms[f.K.zero()][0]
    return None


def _slope(arg, pos):
    """beta when arg == beta*x exactly."""
    K = arg.K
    if arg.is_zero():
        return K.zero()
    p = arg.terms.get(K.zero())
    if set(arg.terms) != {K.zero()} or len(p) > 2:
        raise ExponentNotAffine("exp argument must be linear in x", pos)
    if p[0]:
        # e^c for algebraic c != 0 is transcendental, so not a coefficient in K
        raise ExponentNotAffine("exp argument must not have a nonzero constant term", pos)
    return p[1] if len(p) == 2 else K.zero()


def parse_expression(src, K):
    """Parse ``src`` into an ExpPoly over K."""
    return _Parser(src, K).parse()


def parse_element(src, K):
    """Parse a field element such as ``1/2*t - 3``."""
    f = parse_expression(src, K)
    c = _constant(f)
    if c is None:
        raise ParseError(f"{src!r} is not a constant")
    return c
