"""Text polynomials in x, y, z.

    poly   := term (('+' | '-') term)*
    term   := [coeff ['*']] factor ('*' factor)*      (a bare coeff is accepted too)
    factor := var ['^' uint]
    coeff  := ['-'] uint ['/' uint]
"""
from __future__ import annotations

import re
from fractions import Fraction

from .errors import PolySyntaxError, ZeroPolynomial
from .polytope import SupportedPoly

DEFAULT_VARS = ("x", "y", "z")

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(.))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("num", int(m.group(1)), start))
        elif m.group(2):
            tokens.append(("name", m.group(2), start))
        else:
            tokens.append(("op", m.group(3), start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, names):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.names = names
        self.seen = set()

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_num(self):
        kind, value, at = self.take()
        if kind != "num":
            raise PolySyntaxError("expected an unsigned integer", at)
        return value

    def poly(self):
        terms = {}
        sign = 1
        kind, value, at = self.peek()
        if kind == "op" and value in "+-":
            self.take()
            sign = -1 if value == "-" else 1
        while True:
            coeff, exps = self.term()
            terms[exps] = terms.get(exps, 0) + sign * coeff
            kind, value, at = self.peek()
            if kind == "end":
                return terms
            if kind == "op" and value in "+-":
                self.take()
                sign = -1 if value == "-" else 1
                continue
            raise PolySyntaxError(f"unexpected {value!r}", at)

    def term(self):
        coeff = Fraction(1)
        exps = [0] * len(self.names)
        kind, value, at = self.peek()
        if kind == "op" and value == "-":
            self.take()
            coeff = -coeff
            kind, value, at = self.peek()
        if kind == "num":
            self.take()
            num = value
            den = 1
            if self.peek()[:2] == ("op", "/"):
                self.take()
                den = self.expect_num()
                if den == 0:
                    raise PolySyntaxError("zero denominator", self.tokens[self.pos - 1][2])
            coeff *= Fraction(num, den)
            kind, value, at = self.peek()
            if kind == "op" and value == "*":
                self.take()
            elif kind != "name":
                return coeff, tuple(exps)
        self.factor(exps)
        while self.peek()[:2] == ("op", "*"):
            self.take()
            self.factor(exps)
        return coeff, tuple(exps)

    def factor(self, exps):
        kind, value, at = self.take()
        if kind != "name":
            raise PolySyntaxError("expected a variable", at)
        if value not in self.names:
            raise PolySyntaxError(f"unknown variable {value!r}", at)
        power = 1
        if self.peek()[:2] == ("op", "^"):
            self.take()
            power = self.expect_num()
        exps[self.names.index(value)] += power
        self.seen.add(value)


def parse_polynomial(text: str, variables=None) -> SupportedPoly:
    """Parse ``text`` into a SupportedPoly.

    Without ``variables`` the ambient dimension is 3 if z occurs and 2
    otherwise; with it, coordinates follow the given order.
    """
    names = tuple(variables) if variables else DEFAULT_VARS
    for v in names:
        if v not in DEFAULT_VARS:
            raise PolySyntaxError(f"variable {v!r} not in x, y, z", 0)
    if not (2 <= len(names) <= 3) or len(set(names)) != len(names):
        raise PolySyntaxError(f"need 2 or 3 distinct variables, got {names}", 0)
    parser = _Parser(text, names)
    terms = parser.poly()
    terms = {e: c for e, c in terms.items() if c}
    if not terms:
        raise ZeroPolynomial(f"{text!r} is the zero polynomial")
    if variables:
        n = len(names)
    else:
        n = 3 if "z" in parser.seen else 2
    return SupportedPoly(n, {e[:n]: c for e, c in terms.items()})
