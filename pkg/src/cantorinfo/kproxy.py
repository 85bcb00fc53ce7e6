"""Codec-relative upper bounds on Kolmogorov complexity.

True Kolmogorov complexity is uncomputable.  Everything here is stated
relative to one fixed lossless, prefix-free codec, so ``k_upper`` is an
upper bound up to that codec's constant and a census can only exhibit the
counting bound, never certify that a particular number is incompressible.
"""

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .pairing import cantor_pair, cantor_unpair

__all__ = [
    "elias_gamma",
    "elias_delta",
    "read_elias_gamma",
    "read_elias_delta",
    "Codec",
    "LZCodec",
    "builtin_codec",
    "k_upper",
    "CensusReport",
    "code_lengths",
    "census",
    "WedgeSpec",
    "WedgeReport",
    "wedge_points",
    "wedge_area_fraction",
    "SwapProbeReport",
    "swap_bijection",
    "swap_probe",
]


def elias_gamma(n):
    if n < 1:
        raise DomainError(f"Elias gamma needs n >= 1, got {n}", n)
    b = bin(n)[2:]
    return "0" * (len(b) - 1) + b


def read_elias_gamma(bits, pos):
    zeros = 0
    while pos + zeros < len(bits) and bits[pos + zeros] == "0":
        zeros += 1
    end = pos + 2 * zeros + 1
    if end > len(bits):
        raise DomainError("truncated Elias gamma code", pos)
    return int(bits[pos + zeros:end], 2), end


def elias_delta(n):
    if n < 1:
        raise DomainError(f"Elias delta needs n >= 1, got {n}", n)
    b = bin(n)[2:]
    return elias_gamma(len(b)) + b[1:]


def read_elias_delta(bits, pos):
    length, pos = read_elias_gamma(bits, pos)
    end = pos + length - 1
    if end > len(bits):
        raise DomainError("truncated Elias delta code", pos)
    return int("1" + bits[pos:end], 2), end


def _gamma_len(n):
    return 2 * n.bit_length() - 1


def _check_input(x):
    if isinstance(x, bool) or not isinstance(x, int) or x < 0:
        raise DomainError(f"codec input must be a natural, got {x!r}", x)


class Codec:
    """A lossless, prefix-free map from naturals to bit strings.

    Bit strings are ``str`` objects over ``"01"``.  Subclasses implement
    :meth:`encode` and :meth:`decode_prefix`.
    """

    name = "codec"

    def encode(self, x):
        raise NotImplementedError

    def decode_prefix(self, bits, pos=0):
        """Decode one codeword starting at ``pos``; return ``(x, next_pos)``."""
        raise NotImplementedError

    def decode(self, bits):
        x, end = self.decode_prefix(bits, 0)
        if end != len(bits):
            raise DomainError(f"{len(bits) - end} trailing bits after codeword", end)
        return x

    def code_length(self, x):
        return len(self.encode(x))


class LZCodec(Codec):
    """Greedy LZ77 over the big-endian bytes of ``x``.

    Codeword layout::

        mode bit | Elias-delta(bitlen(x) + 1) | body

    In raw mode (``0``) the body is the ``bitlen - 1`` binary digits after
    the leading 1.  In LZ mode (``1``) it is a token stream that rebuilds
    the ``ceil(bitlen / 8)`` bytes of ``x``: ``0`` followed by 8 bits is a
    literal byte, ``1 gamma(offset) gamma(length - 1)`` copies ``length``
    bytes starting ``offset`` bytes back (the copy may overlap itself).
    The shorter body wins, raw on ties, hence
    ``code_length(x) <= bitlen(x) + header_bits(x)``.
    """

    name = "lz77-bytes-v1"
    window = 4096

    def header_bits(self, x):
        return 1 + len(elias_delta(x.bit_length() + 1))

    @classmethod
    def _parse(cls, data):
        """Greedy parse of ``data`` into literal ints and ``(offset, length)`` pairs."""
        out = []
        i = 0
        n = len(data)
        while i < n:
            lo = max(0, i - cls.window)
            best_len = best_off = 0
            length = 2
            while i + length <= n:
                # source starts before i but may run into the lookahead
                j = data.rfind(data[i:i + length], lo, i + length - 1)
                if j < 0:
                    break
                best_len, best_off = length, i - j
                length += 1
            if best_len and 1 + _gamma_len(best_off) + _gamma_len(best_len - 1) < 9 * best_len:
                out.append((best_off, best_len))
                i += best_len
            else:
                out.append(data[i])
                i += 1
        return out

    @staticmethod
    def _body_cost(tokens):
        return sum(
            9 if isinstance(t, int) else 1 + _gamma_len(t[0]) + _gamma_len(t[1] - 1)
            for t in tokens
        )

    @staticmethod
    def _bytes(x):
        return x.to_bytes((x.bit_length() + 7) // 8, "big")

    def code_length(self, x):
        _check_input(x)
        raw = max(x.bit_length() - 1, 0)
        # LZ needs a repeat, so at least two literals and a match
        if x.bit_length() > 24:
            raw = min(raw, self._body_cost(self._parse(self._bytes(x))))
        return self.header_bits(x) + raw

    def encode(self, x):
        _check_input(x)
        tail = bin(x)[3:] if x else ""
        head = elias_delta(x.bit_length() + 1)
        if x.bit_length() > 24:
            tokens = self._parse(self._bytes(x))
            if self._body_cost(tokens) < len(tail):
                packed = "".join(
                    "0" + format(t, "08b") if isinstance(t, int)
                    else "1" + elias_gamma(t[0]) + elias_gamma(t[1] - 1)
                    for t in tokens
                )
                return "1" + head + packed
        return "0" + head + tail

    def decode_prefix(self, bits, pos=0):
        if pos >= len(bits):
            raise DomainError("empty codeword", pos)
        mode = bits[pos]
        blen, pos = read_elias_delta(bits, pos + 1)
        blen -= 1
        if blen == 0:
            return 0, pos
        if mode == "0":
            need = blen - 1
            if pos + need > len(bits):
                raise DomainError("truncated raw body", pos)
            return int("1" + bits[pos:pos + need], 2), pos + need
        need = (blen + 7) // 8
        out = bytearray()
        while len(out) < need:
            if pos >= len(bits):
                raise DomainError("truncated LZ body", pos)
            if bits[pos] == "0":
                if pos + 9 > len(bits):
                    raise DomainError("truncated literal", pos)
                out.append(int(bits[pos + 1:pos + 9], 2))
                pos += 9
                continue
            off, pos = read_elias_gamma(bits, pos + 1)
            ln, pos = read_elias_gamma(bits, pos)
            if off > len(out):
                raise DomainError("back-reference before start of output", pos)
            start = len(out) - off
            for k in range(ln + 1):
                out.append(out[start + k])
        x = int.from_bytes(out, "big")
        if len(out) != need or x.bit_length() != blen:
            raise DomainError("LZ body does not match declared length", pos)
        return x, pos


_BUILTIN = LZCodec()


def builtin_codec():
    """The package's fixed reference codec."""
    return _BUILTIN


def k_upper(x, codec=None):
    """Codeword length in bits: an upper bound on K(x) up to a constant."""
    return (codec or _BUILTIN).code_length(x)


@dataclass(frozen=True)
class CensusReport:
    range_size: int
    c: int
    count_compressible: int
    fraction: float
    bound: float
    tested: int
    exhaustive: bool = True
    seed: int = None
    codec: str = ""
    note: str = (
        "finite census: shows the counting bound only; density zero is a limit statement"
    )


def code_lengths(n, codec=None):
    """Codeword lengths for every x in [0, n)."""
    codec = codec or _BUILTIN
    return [codec.code_length(x) for x in range(n)]


def census(n, c, codec=None, lengths=None, sample=None, seed=0):
    """Count x in [1, n) whose codeword has at most ``log2(n) - c`` bits.

    With ``sample`` set, that many values are drawn uniformly from
    ``[1, n)`` with a seeded generator instead of sweeping the range.
    ``lengths`` may carry a precomputed :func:`code_lengths` table.
    """
    if n < 2:
        raise DomainError(f"census range must have n >= 2, got {n}", n)
    if isinstance(c, bool) or not isinstance(c, int) or c < 0:
        raise DomainError(f"slack c must be a natural, got {c!r}", c)
    codec = codec or _BUILTIN
    # length <= log2(n) - c  <=>  2**(length + c) <= n, compared exactly
    if sample is None:
        if lengths is None:
            lengths = code_lengths(n, codec)
        count = sum(1 for x in range(1, n) if 1 << (lengths[x] + c) <= n)
        tested = n - 1
    else:
        rng = random.Random(seed)
        count = sum(
            1 for _ in range(sample)
            if 1 << (codec.code_length(rng.randrange(1, n)) + c) <= n
        )
        tested = sample
    return CensusReport(
        range_size=n,
        c=c,
        count_compressible=count,
        fraction=count / tested,
        bound=2.0 ** (1 - c),
        tested=tested,
        exhaustive=sample is None,
        seed=None if sample is None else seed,
        codec=codec.name,
    )


@dataclass(frozen=True)
class WedgeSpec:
    h: Fraction
    epsilon: Fraction
    box_side: int

    def __post_init__(self):
        object.__setattr__(self, "h", Fraction(self.h))
        object.__setattr__(self, "epsilon", Fraction(self.epsilon))
        if self.h <= 0:
            raise DomainError(f"h must be positive, got {self.h}", self.h)
        if self.epsilon < 0:
            raise DomainError(f"epsilon must be >= 0, got {self.epsilon}", self.epsilon)
        if self.box_side < 1:
            raise DomainError(f"box_side must be >= 1, got {self.box_side}", self.box_side)


@dataclass(frozen=True)
class WedgeReport:
    spec: WedgeSpec
    count: int
    fraction: float
    area_fraction: Fraction

    @property
    def discrepancy(self):
        return abs(self.fraction - float(self.area_fraction))


def _clipped_ramp(k):
    # integral over [0, 1] of min(1, k*t) dt
    return k / 2 if k <= 1 else 1 - 1 / (2 * k)


def wedge_area_fraction(h, epsilon):
    """Area of ``{h*x <= y <= (h+eps)*x}`` inside the unit square, exactly."""
    h, epsilon = Fraction(h), Fraction(epsilon)
    return _clipped_ramp(h + epsilon) - _clipped_ramp(h)


def wedge_points(spec):
    """Lattice points of the wedge inside ``[0, N]^2``, counted column by column."""
    n = spec.box_side
    lo_p, lo_q = spec.h.numerator, spec.h.denominator
    hi = spec.h + spec.epsilon
    hi_p, hi_q = hi.numerator, hi.denominator
    count = 0
    for x in range(n + 1):
        lo = -((-lo_p * x) // lo_q)
        top = min(n, (hi_p * x) // hi_q)
        if top >= lo:
            count += top - lo + 1
    return WedgeReport(
        spec=spec,
        count=count,
        fraction=count / (n * n),
        area_fraction=wedge_area_fraction(spec.h, spec.epsilon),
    )


@dataclass(frozen=True)
class SwapProbeReport:
    size: int
    max_d: int
    min_d: int
    mean_d: float
    c_hat: int
    argmax: int
    codec: str
    note: str = "observed maximum only; the O(1) constant is codec-relative"


def swap_bijection(y):
    """``y -> cantor_pair(b, a)`` where ``(a, b) = cantor_unpair(y)``."""
    a, b = cantor_unpair(y)
    return cantor_pair(b, a)


def swap_probe(sample, codec=None):
    """Codeword growth ``d(y) = len(enc(swap(y))) - len(enc(y))`` over a sample."""
    codec = codec or _BUILTIN
    best_y = best_d = None
    total = 0
    size = 0
    lo = None
    for y in sample:
        d = codec.code_length(swap_bijection(y)) - codec.code_length(y)
        if best_d is None or d > best_d:
            best_y, best_d = y, d
        lo = d if lo is None else min(lo, d)
        total += d
        size += 1
    if not size:
        raise DomainError("swap_probe needs a nonempty sample")
    return SwapProbeReport(
        size=size,
        max_d=best_d,
        min_d=lo,
        mean_d=total / size,
        c_hat=best_d,
        argmax=best_y,
        codec=codec.name,
    )
