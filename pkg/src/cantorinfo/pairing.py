"""Exact Cantor pairing over unbounded naturals and its k-ary extension.

All functions take and return plain Python ``int`` values; there is no
separate natural-number wrapper because ``int`` is already arbitrary
precision and immutable.
"""

import math

from .errors import ArityError, DomainError

__all__ = [
    "isqrt",
    "cantor_pair",
    "cantor_pair_sym",
    "cantor_unpair",
    "pair_k",
    "unpair_k",
    "parse_nat",
    "format_nat",
]


def _check_nat(n, name="n"):
    if type(n) is int and n >= 0:
        return
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"{name} must be an int, got {type(n).__name__}")
    if n < 0:
        raise DomainError(f"{name} must be a natural number, got {n}", n)


def isqrt(n):
    """Return floor(sqrt(n)) for a natural ``n``.

    Newton's iteration started from an overestimate derived from the top
    bits of ``n``; the sequence decreases monotonically to the floor.
    """
    _check_nat(n)
    return _isqrt(n)


def _isqrt(n):
    b = n.bit_length()
    if b <= 52:
        # float sqrt is correctly rounded here; the checks make it exact
        r = int(math.sqrt(n))
        if r * r > n:
            r -= 1
        elif (r + 1) * (r + 1) <= n:
            r += 1
        return r
    # leading 52 bits, shifted by an even amount
    shift = (b - 52) & ~1
    r = (int(math.sqrt(n >> shift)) + 2) << (shift // 2)
    while True:
        nxt = (r + n // r) >> 1
        if nxt >= r:
            break
        r = nxt
    while r * r > n:
        r -= 1
    return r


def cantor_pair(x, y):
    """Cantor pairing (x+y)(x+y+1)/2 + y."""
    if type(x) is not int or type(y) is not int or x < 0 or y < 0:
        _check_nat(x, "x")
        _check_nat(y, "y")
    s = x + y
    return (s * (s + 1) >> 1) + y


def cantor_pair_sym(x, y):
    """Symmetric counterpart: ``cantor_pair(y, x)``."""
    return cantor_pair(y, x)


def cantor_unpair(n):
    """Inverse of :func:`cantor_pair`, returning ``(x, y)``."""
    if type(n) is not int or n < 0:
        _check_nat(n)
    w = (_isqrt(8 * n + 1) - 1) >> 1
    y = n - (w * (w + 1) >> 1)
    return w - y, y


def pair_k(xs):
    """Left-nested k-ary pairing: ``pair_k((a, b, c)) == cantor_pair(cantor_pair(a, b), c)``."""
    xs = tuple(xs)
    if not xs:
        raise ArityError("pair_k needs at least one coordinate")
    acc = xs[0]
    _check_nat(acc, "xs[0]")
    for v in xs[1:]:
        acc = cantor_pair(acc, v)
    return acc


def unpair_k(n, k):
    """Inverse of :func:`pair_k` for a fixed arity ``k``."""
    if k < 1:
        raise ArityError(f"arity must be >= 1, got {k}")
    _check_nat(n)
    out = []
    for _ in range(k - 1):
        n, last = cantor_unpair(n)
        out.append(last)
    out.append(n)
    return tuple(reversed(out))


def parse_nat(text):
    """Parse a canonical decimal natural (no sign, no leading zeros)."""
    s = text.strip()
    if not s or not s.isdigit() or not s.isascii() or (len(s) > 1 and s[0] == "0"):
        raise DomainError(f"not a canonical decimal natural: {text!r}", text)
    return int(s)


def format_nat(n):
    _check_nat(n)
    return str(n)
