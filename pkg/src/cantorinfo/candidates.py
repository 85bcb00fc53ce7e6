"""Empirical interrogation of polynomial pairing candidates.

Two checks are offered.  :func:`scan_bijectivity` evaluates a candidate on
a finite box and reports collisions, non-natural values and provable gaps.
:func:`refute_degree` measures the drift of the information efficiency
along several rays; a candidate whose efficiency grows like
``(n - 2) * log2(x)`` behaves like a degree-``n`` map and cannot stay close
to the quadratic Cantor pairing.

A clean scan is not a proof of bijectivity; it only means no
counterexample exists inside the scanned box.
"""

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .efficiency import (
    DEFAULT_RATIO,
    DEFAULT_SLOPE_TOL,
    DEFAULT_STEPS,
    DEFAULT_TOL,
    EfficiencyClass,
    RaySpec,
    classify,
    ray_limit_estimate,
)
from .errors import ArityError, CantorInfoError
from .parser import parse_poly
from .poly import MultiPoly

__all__ = [
    "parse_poly",
    "eval_exact",
    "eval_nat",
    "ScanVerdict",
    "ScanReport",
    "scan_bijectivity",
    "safe_threshold",
    "RefuteVerdict",
    "RayResult",
    "RefutationReport",
    "refute_degree",
    "DEFAULT_RAYS",
    "DEFAULT_SLOPE_FLOOR",
    "SCAN_DISCLAIMER",
]

DEFAULT_RAYS = tuple(Fraction(s) for s in ("1/3", "1/2", "1", "2", "3"))
DEFAULT_SLOPE_FLOOR = 0.5
DEFAULT_MAX_WITNESSES = 100

SCAN_DISCLAIMER = (
    "finite scan: NO_VIOLATION_FOUND only means no counterexample inside the box"
)


def eval_exact(p, xs):
    return p.eval_exact(xs)


def eval_nat(p, xs):
    return p.eval_nat(xs)


def _grlex_point(pt):
    return (sum(pt), pt)


class ScanVerdict(enum.Enum):
    NOT_INJECTIVE = "NOT_INJECTIVE"
    NOT_INTEGER_VALUED = "NOT_INTEGER_VALUED"
    NO_VIOLATION_FOUND = "NO_VIOLATION_FOUND"


@dataclass(frozen=True)
class ScanReport:
    box_side: int
    verdict: ScanVerdict
    collisions: tuple  # (((x, y), (x2, y2), value), ...), grlex-sorted
    collision_count: int
    integrality_violations: tuple  # (((x, y), Fraction), ...)
    integrality_violation_count: int
    min_value: int = None
    max_value: int = None
    threshold: int = 0
    missing_below: tuple = ()
    missing_count: int = 0
    note: str = SCAN_DISCLAIMER


def _monotone(p):
    """True when ``p`` is provably nondecreasing in each variable on naturals.

    Sufficient test: every forward difference ``p(.., x_i + 1, ..) - p``
    has only nonnegative coefficients.
    """
    for i in range(p.arity):
        diff = p.shift(i) - p
        if any(c < 0 for _, c in diff.items()):
            return False
    return True


def safe_threshold(p, n):
    """Lower bound on ``p`` over lattice points of ``N^2`` outside ``[0, n)^2``.

    Any natural below the bound that is missing from the scanned box is
    missing from the whole image.  Returns 0 when no envelope is available.
    """
    if p.arity != 2 or not _monotone(p):
        return 0
    lo = min(p.eval_exact((n, 0)), p.eval_exact((0, n)))
    # ceil: only naturals >= lo can be attained outside
    return max(0, -((-lo.numerator) // lo.denominator))


def scan_bijectivity(p, box_side, max_witnesses=DEFAULT_MAX_WITNESSES):
    """Evaluate ``p`` on ``[0, box_side)^2`` and look for violations.

    At most ``max_witnesses`` entries are kept per list; the ``*_count``
    fields carry the full totals.  Collision witnesses pair the
    graded-lex smallest preimage with each later one, and both lists are
    sorted in graded-lex point order, so output does not depend on the
    traversal order.
    """
    if p.arity != 2:
        raise ArityError(f"scan needs arity 2, got {p.arity}")
    if box_side < 1:
        raise ValueError(f"box_side must be >= 1, got {box_side}")
    n = box_side
    d, q = p.integer_form()
    # row polynomials in y with integer coefficients for each fixed x
    ydeg = max((e[1] for e in q), default=0)
    first = {}
    extra = {}
    bad = []
    for x in range(n):
        row = [0] * (ydeg + 1)
        for (a, b), c in q.items():
            row[b] += c * x**a
        row.reverse()
        for y in range(n):
            v = 0
            for c in row:
                v = v * y + c
            idx = first.setdefault(v, x * n + y)
            if idx != x * n + y:
                extra.setdefault(v, []).append(x * n + y)
            if v < 0 or v % d:
                bad.append(((x, y), Fraction(v, d)))

    collisions = []
    for v, idxs in extra.items():
        pts = sorted((divmod(i, n) for i in [first[v], *idxs]), key=_grlex_point)
        for other in pts[1:]:
            collisions.append((pts[0], other, Fraction(v, d)))
    collisions.sort(key=lambda w: (_grlex_point(w[0]), _grlex_point(w[1])))
    bad.sort(key=lambda w: _grlex_point(w[0]))

    naturals = [v // d for v in first if v >= 0 and v % d == 0]
    threshold = safe_threshold(p, n)
    attained = set(naturals)
    missing = [m for m in range(threshold) if m not in attained]

    if bad:
        verdict = ScanVerdict.NOT_INTEGER_VALUED
    elif collisions:
        verdict = ScanVerdict.NOT_INJECTIVE
    else:
        verdict = ScanVerdict.NO_VIOLATION_FOUND
    return ScanReport(
        box_side=n,
        verdict=verdict,
        collisions=tuple(
            (a, b, v.numerator if v.denominator == 1 else v)
            for a, b, v in collisions[:max_witnesses]
        ),
        collision_count=len(collisions),
        integrality_violations=tuple(bad[:max_witnesses]),
        integrality_violation_count=len(bad),
        min_value=min(naturals, default=None),
        max_value=max(naturals, default=None),
        threshold=threshold,
        missing_below=tuple(missing[:max_witnesses]),
        missing_count=len(missing),
    )


class RefuteVerdict(enum.Enum):
    REFUTED = "REFUTED"
    CONSISTENT_WITH_DEGREE_2 = "CONSISTENT_WITH_DEGREE_2"
    INCONCLUSIVE = "INCONCLUSIVE"  # every ray was flagged


@dataclass(frozen=True)
class RayResult:
    h: Fraction
    leading_form_vanishes: bool
    drift_slope: float = None
    estimated_degree: int = None
    c_estimate: float = None
    converged: bool = None
    classification: EfficiencyClass = None
    error: str = None


@dataclass(frozen=True)
class RefutationReport:
    poly: MultiPoly
    verdict: RefuteVerdict
    rays: tuple
    estimated_degree: int
    slope_floor: float
    settings: dict = field(default_factory=dict)


def refute_degree(
    p,
    rays=DEFAULT_RAYS,
    slope_floor=DEFAULT_SLOPE_FLOOR,
    x_start=None,
    growth_ratio=DEFAULT_RATIO,
    steps=DEFAULT_STEPS,
    tol=DEFAULT_TOL,
    slope_tol=DEFAULT_SLOPE_TOL,
):
    """Degree-drift test of ``p`` along each ray ``y = h*x``.

    A ray whose leading homogeneous form vanishes at ``(1, h)`` is flagged
    and left out of the verdict; evaluation errors on such rays are
    recorded rather than raised.  ``x_start``, when given, is scaled by the
    denominator of each slope.
    """
    if p.arity != 2:
        raise ArityError(f"refutation needs arity 2, got {p.arity}")
    rays = tuple(Fraction(h) for h in rays)
    lead = p.leading_form()
    results = []
    for h in rays:
        spec = RaySpec(
            h=h,
            x_start=None if x_start is None else x_start * h.denominator,
            growth_ratio=growth_ratio,
            steps=steps,
            tol=tol,
            slope_tol=slope_tol,
        )
        vanishes = lead.eval_exact((1, h)) == 0
        try:
            rep = ray_limit_estimate(p, spec)
        except CantorInfoError as exc:
            if not vanishes:
                raise
            results.append(RayResult(h=h, leading_form_vanishes=True, error=str(exc)))
            continue
        results.append(
            RayResult(
                h=h,
                leading_form_vanishes=vanishes,
                drift_slope=rep.drift_slope,
                estimated_degree=2 + round(rep.drift_slope),
                c_estimate=rep.c_estimate,
                converged=rep.converged,
                classification=classify(rep),
            )
        )
    counted = [r for r in results if not r.leading_form_vanishes]
    if not counted:
        verdict, degree = RefuteVerdict.INCONCLUSIVE, None
    else:
        degree = max(r.estimated_degree for r in counted)
        if any(abs(r.drift_slope) >= slope_floor for r in counted):
            verdict = RefuteVerdict.REFUTED
        else:
            verdict = RefuteVerdict.CONSISTENT_WITH_DEGREE_2
    settings = {
        "x_start": x_start,
        "growth_ratio": growth_ratio,
        "steps": steps,
        "tol": tol,
        "slope_tol": slope_tol,
    }
    return RefutationReport(
        poly=p,
        verdict=verdict,
        rays=tuple(results),
        estimated_degree=degree,
        slope_floor=slope_floor,
        settings=settings,
    )
