"""Tiny expression grammar shared by polynomial and U(g) front ends.

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | power
    power  := atom ('^' ['-'] INT)?
    atom   := NUMBER ['/' NUMBER] | IDENT | '(' expr ')'

Evaluation is delegated to a ring adapter so the same parser serves every
algebra in the package.
"""

from __future__ import annotations

import re
from fractions import Fraction

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9@]*)|(\S))")


class ParseError(ValueError):
    def __init__(self, msg, pos):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


def tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(("num", int(m.group(1)), start))
        elif m.group(2):
            out.append(("id", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*^()/":
                raise ParseError(f"unexpected character {ch!r}", start)
            out.append((ch, ch, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text, ring):
        self.toks = tokenize(text)
        self.i = 0
        self.ring = ring

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        self.i += 1
        return tok

    def expr(self):
        val = self.term()
        while self.peek()[0] in "+-" and self.peek()[0] != "end":
            op = self.take()[0]
            rhs = self.term()
            val = self.ring.add(val, rhs) if op == "+" else self.ring.add(val, self.ring.neg(rhs))
        return val

    def term(self):
        val = self.unary()
        while self.peek()[0] == "*":
            self.take()
            val = self.ring.mul(val, self.unary())
        return val

    def unary(self):
        if self.peek()[0] == "-":
            self.take()
            return self.ring.neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            neg = False
            if self.peek()[0] == "-":
                self.take()
                neg = True
            exp = self.take("num")[1]
            return self.ring.pow(base, -exp if neg else exp)
        return base

    def atom(self):
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            num = Fraction(val)
            if self.peek()[0] == "/":
                self.take()
                den = self.take("num")
                if den[1] == 0:
                    raise ParseError("zero denominator", den[2])
                num = num / den[1]
            return self.ring.const(num)
        if kind == "id":
            self.take()
            try:
                return self.ring.symbol(val)
            except KeyError:
                raise ParseError(f"unknown symbol {val!r}", pos) from None
        if kind == "(":
            self.take()
            v = self.expr()
            self.take(")")
            return v
        raise ParseError(f"unexpected token {val!r}", pos)


def parse(text: str, ring):
    """Parse ``text`` and evaluate it with the adapter ``ring``.

    The adapter supplies ``const``, ``symbol``, ``add``, ``neg``, ``mul`` and
    ``pow``; ``symbol`` raises ``KeyError`` for unknown names.
    """
    p = _Parser(text, ring)
    if p.peek()[0] == "end":
        raise ParseError("empty expression", 0)
    val = p.expr()
    tok = p.peek()
    if tok[0] != "end":
        raise ParseError(f"unexpected token {tok[1]!r}", tok[2])
    return val


class PolyRing:
    """Adapter evaluating expressions as SuperPolynomials over a signature."""

    def __init__(self, sig):
        from .superpoly import SuperPolynomial
        self.sig = sig
        self.P = SuperPolynomial

    def const(self, c):
        return self.P.const(self.sig, c)

    def symbol(self, name):
        if name not in self.sig:
            raise KeyError(name)
        return self.P.gen(self.sig, name)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def pow(self, a, k):
        return a ** k


def parse_poly(text, sig):
    return parse(text, PolyRing(sig))


class URing:
    """Adapter evaluating expressions in U(g); basis names are the symbols."""

    def __init__(self, A):
        self.A = A

    def const(self, c):
        return self.A.scalar(c)

    def symbol(self, name):
        if name not in self.A.L.names:
            raise KeyError(name)
        return self.A.gen(name)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def pow(self, a, k):
        if k < 0:
            raise ValueError("negative powers do not exist in U(g)")
        return a ** k


def parse_u(text, A):
    return parse(text, URing(A))
