"""Small recursive-descent parser shared by every textual input format.

Grammar (juxtaposition is multiplication)::

    expr   := term (('+' | '-') term)*
    term   := unary (['*' | '/'] unary)*
    unary  := '-' unary | power
    power  := atom ('^' INT)?
    atom   := NUMBER | NAME ['(' INT (',' INT)* ')'] | '(' expr ')'

Atoms are resolved by a callback, so the same grammar reads scalars
(``1/2 + 3*I*S``), Lie elements (``2*e - 3*x(1) + s(1,2)``), enveloping
algebra words (``e f^2 x(1)``) and differential operators
(``t(1)^2 d(1) - 1/2 d(2)^2``).
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class ParseError(ValueError):
    pass


def _tokenize(text: str):
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif name is not None:
            tokens.append(("name", name))
        elif op.strip():
            tokens.append(("op", op))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, resolve: Callable, one):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.resolve = resolve
        self.one = one

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ParseError(f"unexpected {tok[1]!r} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self):
        if not self.tokens:
            raise ParseError("empty expression")
        val = self.expr()
        if self.i != len(self.tokens):
            raise ParseError(f"trailing input at {self.peek()[1]!r} in {self.text!r}")
        return val

    def expr(self):
        val = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def _starts_atom(self):
        kind, v = self.peek()
        return kind in ("num", "name") or (kind == "op" and v == "(")

    def term(self):
        val = self.unary()
        while True:
            kind, v = self.peek()
            if kind == "op" and v == "*":
                self.take()
                val = val * self.unary()
            elif kind == "op" and v == "/":
                self.take()
                rhs = self.unary()
                if isinstance(rhs, (int, Fraction)):
                    val = val * (1 / Fraction(rhs))
                else:
                    val = val / rhs
            elif self._starts_atom():
                val = val * self.unary()
            else:
                return val

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        val = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            k = self.take("num")[1]
            val = self.one() if k == 0 else val ** k
        return val

    def atom(self):
        kind, v = self.peek()
        if kind == "num":
            self.take()
            return Fraction(v)
        if kind == "name":
            self.take()
            args = []
            if self.peek() == ("op", "("):
                self.take()
                args.append(self.take("num")[1])
                while self.peek() == ("op", ","):
                    self.take()
                    args.append(self.take("num")[1])
                self.take("op", ")")
            return self.resolve(v, tuple(args))
        if (kind, v) == ("op", "("):
            self.take()
            val = self.expr()
            self.take("op", ")")
            return val
        raise ParseError(f"unexpected {v!r} in {self.text!r}")


def parse_expression(text: str, resolve: Callable[[str, tuple], object], one: Callable[[], object] = lambda: Fraction(1)):
    """Parse ``text``, mapping each ``NAME(args)`` atom through ``resolve``."""
    return _Parser(text, resolve, one).parse()


def parse_scalar(text: str, zdot=None):
    """Read ``c0 + c1*I + c2*S + c3*I*S``; ``S`` requires ``zdot``."""
    from .scalars import Scalar, simplify

    def resolve(name, args):
        if args:
            raise ParseError(f"{name} takes no arguments")
        if name == "I":
            return Scalar(0, 1, zdot=zdot)
        if name == "S":
            if zdot is None:
                raise ParseError("S needs a defining zdot")
            return Scalar.gen_s(zdot)
        raise ParseError(f"unknown scalar symbol {name!r}")

    return simplify(parse_expression(text, resolve))
