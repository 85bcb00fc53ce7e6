"""Recursive-descent parser for candidate polynomial expressions.

Grammar (whitespace ignored)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary | <juxtaposed primary>)*
    unary   := ('+' | '-') unary | power
    power   := primary (('^' | '**') exponent)?
    primary := INTEGER | VARIABLE | '(' expr ')'

Division is only by a nonzero constant, so ``1/2(x+y)`` reads as
``(1/2)*(x+y)``.  Juxtaposition multiplies when the next token is ``(`` or
a variable: ``1/2(x + y)(x + y + 1) + y`` is accepted as written.
Exponents are non-negative integer literals (or parenthesised constants
evaluating to one).
"""

import re

from .errors import PolySyntaxError
from .poly import MultiPoly, variable_names

__all__ = ["parse_poly"]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise PolySyntaxError(f"unexpected character {text[bad]!r}", bad)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("num", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("var", m.group(2), start))
        else:
            op = m.group(3)
            tokens.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, arity):
        self.tokens = _tokenize(text)
        self.i = 0
        self.arity = arity
        names = {n: k for k, n in enumerate(variable_names(arity))}
        names.update({f"x{k + 1}": k for k in range(arity)})
        self.names = names

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise PolySyntaxError(f"expected {op!r}, found {_describe(kind, val)}", pos)

    def parse(self):
        p = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise PolySyntaxError(f"unexpected {_describe(kind, val)}", pos)
        return p

    def expr(self):
        p = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                p = p + rhs if val == "+" else p - rhs
            else:
                return p

    def term(self):
        p = self.unary()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "*":
                self.take()
                p = p * self.unary()
            elif kind == "op" and val == "/":
                self.take()
                _, _, dpos = self.peek()
                d = self.unary()
                if not d.is_constant():
                    raise PolySyntaxError("division by a non-constant", dpos)
                c = d.constant_value()
                if c == 0:
                    raise PolySyntaxError("division by zero", dpos)
                p = p * (1 / c)
            elif (kind == "op" and val == "(") or kind == "var":
                p = p * self.power()
            else:
                return p

    def unary(self):
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            p = self.unary()
            return -p if val == "-" else p
        return self.power()

    def power(self):
        base = self.primary()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            return base ** self.exponent()
        return base

    def exponent(self):
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            return val
        if kind == "op" and val == "-":
            raise PolySyntaxError("negative exponent", pos)
        if kind == "op" and val == "(":
            self.take()
            e = self.expr()
            self.expect(")")
            if not e.is_constant():
                raise PolySyntaxError("exponent must be a constant", pos)
            c = e.constant_value()
            if c < 0:
                raise PolySyntaxError("negative exponent", pos)
            if c.denominator != 1:
                raise PolySyntaxError("fractional exponent", pos)
            return int(c)
        raise PolySyntaxError(f"expected exponent, found {_describe(kind, val)}", pos)

    def primary(self):
        kind, val, pos = self.take()
        if kind == "num":
            return MultiPoly.constant(self.arity, val)
        if kind == "var":
            if val not in self.names:
                raise PolySyntaxError(
                    f"unknown variable {val!r} for arity {self.arity}", pos
                )
            return MultiPoly.var(self.arity, self.names[val])
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect(")")
            return p
        raise PolySyntaxError(f"unexpected {_describe(kind, val)}", pos)


def _describe(kind, val):
    return "end of input" if kind == "end" else repr(str(val))


def parse_poly(text, arity=2):
    """Parse ``text`` into a canonical :class:`MultiPoly` of the given arity."""
    return _Parser(text, arity).parse()
