"""Information content of naturals and the information efficiency of maps.

Information is measured in bits, ``I(x) = log2(x)``.  The efficiency of
an application ``f(x1, ..., xk)`` is ``I(f(x1..xk)) - sum(I(xi))``.
Along a ray ``y = h*x`` the efficiency of the Cantor pairing tends to
``log2((1 + h)**2 / (2*h))``; :func:`ray_limit_estimate` measures that
limit numerically and reports any drift in ``log2(x)``.
"""

import enum
import math
import statistics
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .errors import DomainError, IntegralityError

__all__ = [
    "info_content",
    "delta",
    "analytic_ray_constant",
    "parse_rational",
    "format_rational",
    "RaySpec",
    "RayReport",
    "ray_limit_estimate",
    "EfficiencyClass",
    "classify",
    "DEFAULT_TOL",
    "DEFAULT_SLOPE_TOL",
    "DEFAULT_RATIO",
    "DEFAULT_STEPS",
    "DEFAULT_X_START",
]

DEFAULT_TOL = 1e-6
DEFAULT_SLOPE_TOL = 1e-3
DEFAULT_RATIO = 4
DEFAULT_STEPS = 12
DEFAULT_X_START = 1 << 20

_TWO63 = float(1 << 63)


def info_content(x):
    """Return ``log2(x)`` for a natural ``x >= 1``.

    The value is assembled from the bit length and the leading 64 bits of
    ``x``.  The logarithm of the mantissa is accurate to about 2**-53; the
    returned float adds at most half an ulp of its own magnitude, so the
    absolute error is below 2**-48 for ``x < 2**32`` and below
    ``2**-52 + ulp(result)`` in general.
    """
    if isinstance(x, bool) or not isinstance(x, int):
        raise TypeError(f"expected int, got {type(x).__name__}")
    if x < 1:
        raise DomainError(f"log2 undefined for {x}", x)
    b = x.bit_length()
    top = x >> (b - 64) if b > 64 else x << (64 - b)
    # top in [2**63, 2**64); mantissa in [1, 2]
    return (b - 1) + math.log2(float(top) / _TWO63)


def delta(f, xs):
    """Information efficiency of ``f`` applied to the tuple ``xs``.

    ``f`` is called as ``f(*xs)`` and must return a natural (``int`` or an
    integral ``Fraction``).
    """
    xs = tuple(xs)
    for v in xs:
        if v < 1:
            raise DomainError(f"zero coordinate in {xs}; log2(0) is undefined", xs)
    out = _as_positive_nat(f(*xs), xs)
    # fsum is exactly rounded, so the result does not depend on argument order
    return info_content(out) - math.fsum(info_content(v) for v in xs)


def _as_positive_nat(value, point):
    if isinstance(value, Fraction):
        if value.denominator != 1:
            raise IntegralityError("NON_INTEGRAL", point, value)
        value = value.numerator
    if value < 0:
        raise IntegralityError("NEGATIVE", point, value)
    if value == 0:
        raise DomainError(f"zero output at {point}; log2(0) is undefined", point)
    return int(value)


def parse_rational(text):
    """Parse ``"p/q"`` or ``"p"`` into a ``Fraction``."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"not a rational: {text!r}", text) from exc


def format_rational(r):
    r = Fraction(r)
    return f"{r.numerator}/{r.denominator}"


def analytic_ray_constant(h):
    """Limit of the Cantor pairing's efficiency on the ray ``y = h*x``.

    ``log2((1 + h)**2 / (2*h))``; the ratio is formed exactly before the
    logarithm is taken at 80 digits.
    """
    h = Fraction(h)
    if h <= 0:
        raise DomainError(f"ray slope must be positive, got {h}", h)
    q = (1 + h) ** 2 / (2 * h)
    with mpmath.workdps(80):
        return float(mpmath.log(mpmath.mpf(q.numerator) / q.denominator, 2))


@dataclass(frozen=True)
class RaySpec:
    """Geometric sampling plan along ``y = h*x``.

    ``x_start`` defaults to ``2**20 * denominator(h)`` so every ``h*x`` is
    an exact natural.
    """

    h: Fraction
    x_start: int = None
    growth_ratio: int = DEFAULT_RATIO
    steps: int = DEFAULT_STEPS
    tol: float = DEFAULT_TOL
    slope_tol: float = DEFAULT_SLOPE_TOL

    def __post_init__(self):
        h = Fraction(self.h)
        object.__setattr__(self, "h", h)
        if h <= 0:
            raise DomainError(f"ray slope must be positive, got {h}", h)
        if self.x_start is None:
            object.__setattr__(self, "x_start", DEFAULT_X_START * h.denominator)
        x0 = self.x_start
        if x0 < 1 or x0 % h.denominator:
            raise DomainError(
                f"x_start={x0} must be a positive multiple of {h.denominator}", x0
            )
        if self.growth_ratio < 2:
            raise DomainError(f"growth_ratio must be >= 2, got {self.growth_ratio}")
        if self.steps < 4:
            raise DomainError(f"steps must be >= 4, got {self.steps}")
        if not self.tol > 0 or not self.slope_tol > 0:
            raise DomainError("tol and slope_tol must be positive")

    def points(self):
        x = self.x_start
        for _ in range(self.steps):
            yield x, x * self.h.numerator // self.h.denominator
            x *= self.growth_ratio


@dataclass(frozen=True)
class RayReport:
    spec: RaySpec
    samples: tuple  # ((x, delta), ...)
    c_estimate: float
    converged: bool
    drift_slope: float
    residual: float
    intercept: float = field(default=0.0)


def ray_limit_estimate(f, spec):
    """Sample the efficiency of ``f`` along a ray and fit its drift.

    ``drift_slope`` is the least-squares slope of delta against
    ``log2(x)``; the run is converged when that slope and the spread of
    the final three deltas are both below tolerance.
    """
    samples = []
    for x, y in spec.points():
        if y < 1:
            raise DomainError(f"ray point {(x, y)} has a zero coordinate", (x, y))
        out = _as_positive_nat(f(x, y), (x, y))
        samples.append((x, info_content(out) - math.fsum((info_content(x), info_content(y)))))
    ts = [info_content(x) for x, _ in samples]
    ds = [d for _, d in samples]
    slope, intercept = statistics.linear_regression(ts, ds)
    tail = ds[-3:]
    residual = max(tail) - min(tail)
    converged = abs(slope) < spec.slope_tol and residual < spec.tol
    return RayReport(
        spec=spec,
        samples=tuple(samples),
        c_estimate=ds[-1],
        converged=converged,
        drift_slope=slope,
        residual=residual,
        intercept=intercept,
    )


class EfficiencyClass(enum.Enum):
    CONSERVING = "CONSERVING"  # constant with c == 0
    CONSTANT = "CONSTANT"
    EXPANDING = "EXPANDING"
    DISCARDING = "DISCARDING"
    UNRESOLVED = "UNRESOLVED"  # no drift, but the tail has not settled


def classify(report):
    spec = report.spec
    if report.converged:
        if abs(report.c_estimate) < spec.tol:
            return EfficiencyClass.CONSERVING
        return EfficiencyClass.CONSTANT
    if report.drift_slope > spec.slope_tol:
        return EfficiencyClass.EXPANDING
    if report.drift_slope < -spec.slope_tol:
        return EfficiencyClass.DISCARDING
    return EfficiencyClass.UNRESOLVED
