"""A small expression language for naming constants on the command line.

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom (('^' | '**') unary)?
    atom   := NUMBER | NAME | NAME '(' expr (',' expr)* ')' | '(' expr ')'

Names: ``pi``, ``phi7``; functions ``sqrt(x)``, ``cl2(x)``, ``L(d, s)``
(Dirichlet L-series with Kronecker character, integer ``d``) and
``zeta(s, a)`` (Hurwitz).
"""

from __future__ import annotations

import re

import mpmath
from mpmath import mpf

from .clausen import cl2_value
from .numeric import DomainError, PrecisionContext, constants
from .zeta import dirichlet_l, hurwitz_zeta

__all__ = ["ExpressionError", "evaluate"]

_TOKEN = re.compile(r"\s*(?:(\d+\.\d*|\.\d+|\d+)(?:[eE][-+]?\d+)?|(\*\*|[A-Za-z_]\w*|[-+*/^(),]))")


class ExpressionError(ValueError):
    """Malformed constant expression."""


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ExpressionError(f"unexpected character at {pos}: {text[pos:]!r}")
        tokens.append(m.group(0).strip())
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, ctx: PrecisionContext):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.ctx = ctx

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ExpressionError(f"expected {expected or 'a token'} in {self.text!r}")
        self.pos += 1
        return tok

    def parse(self):
        value = self.expr()
        if self.peek() is not None:
            raise ExpressionError(f"trailing input {self.peek()!r} in {self.text!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek() in ("+", "-"):
            if self.take() == "+":
                value = value + self.term()
            else:
                value = value - self.term()
        return value

    def term(self):
        value = self.unary()
        while self.peek() in ("*", "/"):
            if self.take() == "*":
                value = value * self.unary()
            else:
                value = value / self.unary()
        return value

    def unary(self):
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() in ("^", "**"):
            self.take()
            return base ** self.unary()
        return base

    def args(self):
        self.take("(")
        values = [self.expr()]
        while self.peek() == ",":
            self.take()
            values.append(self.expr())
        self.take(")")
        return values

    def atom(self):
        tok = self.peek()
        if tok is None:
            raise ExpressionError(f"unexpected end of {self.text!r}")
        if tok == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        if tok[0].isdigit() or tok[0] == ".":
            self.take()
            return mpf(tok)
        if tok[0].isalpha() or tok[0] == "_":
            self.take()
            return self.name(tok)
        raise ExpressionError(f"unexpected {tok!r} in {self.text!r}")

    def name(self, name):
        ctx = self.ctx
        if name == "pi":
            return +mpmath.pi
        if name == "phi7":
            return constants(ctx).phi7
        if self.peek() != "(":
            raise ExpressionError(f"unknown name {name!r}")
        args = self.args()
        arity = {"sqrt": 1, "cl2": 1, "L": 2, "zeta": 2}
        if name not in arity:
            raise ExpressionError(f"unknown function {name!r}")
        if len(args) != arity[name]:
            raise ExpressionError(f"{name} takes {arity[name]} argument(s)")
        if name == "sqrt":
            if args[0] < 0:
                raise DomainError("sqrt of a negative number")
            return mpmath.sqrt(args[0])
        if name == "cl2":
            return cl2_value(args[0], ctx)
        if name == "zeta":
            return hurwitz_zeta(args[0], args[1], ctx)
        d = args[0]
        if d != int(d):
            raise ExpressionError("L(d, s) needs an integer d")
        return dirichlet_l(int(d), args[1], ctx).value


def evaluate(text: str, ctx: PrecisionContext) -> mpf:
    """Evaluate a constant expression at the working precision of ``ctx``."""
    with ctx.workdps():
        return _Parser(text, ctx).parse()
