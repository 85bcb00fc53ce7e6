"""Exact multivariate polynomials with rational coefficients."""

import math
from fractions import Fraction

from .errors import ArityError, IntegralityError

__all__ = ["MultiPoly", "variable_names"]


def variable_names(arity):
    if arity == 1:
        return ("x",)
    if arity == 2:
        return ("x", "y")
    return tuple(f"x{i}" for i in range(1, arity + 1))


def _grlex_key(exps):
    return (sum(exps), exps)


class MultiPoly:
    """Immutable polynomial in ``arity`` variables.

    ``terms`` maps exponent tuples to nonzero ``Fraction`` coefficients and
    is exposed in descending graded-lexicographic order.
    """

    __slots__ = ("arity", "_terms", "_int_form")

    def __init__(self, arity, terms=None):
        if arity < 1:
            raise ArityError(f"arity must be >= 1, got {arity}")
        self.arity = arity
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != arity or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for arity {arity}")
            c = Fraction(c)
            if c:
                clean[exps] = clean.get(exps, 0) + c
        ordered = sorted(
            ((e, c) for e, c in clean.items() if c), key=lambda t: _grlex_key(t[0]), reverse=True
        )
        self._terms = dict(ordered)
        self._int_form = None

    @classmethod
    def constant(cls, arity, value):
        return cls(arity, {(0,) * arity: value})

    @classmethod
    def var(cls, arity, index):
        exps = [0] * arity
        exps[index] = 1
        return cls(arity, {tuple(exps): 1})

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    @property
    def degree(self):
        return max((sum(e) for e in self._terms), default=0)

    def is_zero(self):
        return not self._terms

    def is_constant(self):
        return all(not any(e) for e in self._terms)

    def constant_value(self):
        return self._terms.get((0,) * self.arity, Fraction(0))

    def leading_form(self):
        """Homogeneous part of top total degree."""
        d = self.degree
        return MultiPoly(self.arity, {e: c for e, c in self._terms.items() if sum(e) == d})

    # arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.arity != self.arity:
                raise ArityError(f"arity mismatch: {self.arity} vs {other.arity}")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(self.arity, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, 0) + c
        return MultiPoly(self.arity, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.arity, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MultiPoly(self.arity, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"exponent must be a natural, got {n}")
        result = MultiPoly.constant(self.arity, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.arity == other.arity and self._terms == other._terms

    def __hash__(self):
        return hash((self.arity, tuple(self._terms.items())))

    def shift(self, index, amount=1):
        """``p`` with variable ``index`` replaced by ``x_index + amount``."""
        v = MultiPoly.var(self.arity, index) + amount
        out = MultiPoly(self.arity)
        for e, c in self._terms.items():
            rest = list(e)
            rest[index] = 0
            out = out + MultiPoly(self.arity, {tuple(rest): c}) * v ** e[index]
        return out

    # evaluation -----------------------------------------------------------

    def integer_form(self):
        """Return ``(D, q)`` with ``p == q / D``; ``q`` maps exponents to ints."""
        if self._int_form is None:
            d = 1
            for c in self._terms.values():
                d = math.lcm(d, c.denominator)
            q = {e: int(c * d) for e, c in self._terms.items()}
            self._int_form = (d, q)
        return self._int_form

    def eval_int_scaled(self, xs):
        """Integer ``q(xs)`` where ``p == q / D``, by nested Horner."""
        _, q = self.integer_form()
        return _horner(q, tuple(xs), self.arity)

    def eval_exact(self, xs):
        xs = tuple(xs)
        if len(xs) != self.arity:
            raise ArityError(f"expected {self.arity} coordinates, got {len(xs)}")
        d, _ = self.integer_form()
        return Fraction(self.eval_int_scaled(xs), d)

    def eval_nat(self, xs):
        xs = tuple(xs)
        v = self.eval_exact(xs)
        if v.denominator != 1:
            raise IntegralityError("NON_INTEGRAL", xs, v)
        if v < 0:
            raise IntegralityError("NEGATIVE", xs, v)
        return v.numerator

    def __call__(self, *xs):
        return self.eval_exact(xs)

    # printing -------------------------------------------------------------

    def to_string(self):
        if not self._terms:
            return "0"
        names = variable_names(self.arity)
        parts = []
        for i, (e, c) in enumerate(self._terms.items()):
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            mag = abs(c)
            if not mono:
                body = _fmt_frac(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{_fmt_frac(mag)}*{mono}"
            if i == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    __str__ = to_string

    def __repr__(self):
        return f"MultiPoly({self.arity}, {self.to_string()!r})"


def _fmt_frac(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _horner(q, xs, arity):
    if not q:
        return 0
    if arity == 1:
        x = xs[0]
        top = max(e[0] for e in q)
        coeffs = [0] * (top + 1)
        for e, c in q.items():
            coeffs[e[0]] = c
        acc = 0
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc
    # group by exponent of the first variable, recurse on the rest
    groups = {}
    for e, c in q.items():
        groups.setdefault(e[0], {})[e[1:]] = c
    x = xs[0]
    acc = 0
    top = max(groups)
    for k in range(top, -1, -1):
        acc = acc * x
        if k in groups:
            acc += _horner(groups[k], xs[1:], arity - 1)
    return acc
