import random
from fractions import Fraction

import pytest

from cantorinfo.candidates import (
    DEFAULT_RAYS,
    RefuteVerdict,
    ScanVerdict,
    refute_degree,
    safe_threshold,
    scan_bijectivity,
)
from cantorinfo.efficiency import EfficiencyClass, analytic_ray_constant
from cantorinfo.errors import ArityError, IntegralityError
from cantorinfo.parser import parse_poly
from cantorinfo.poly import MultiPoly

CANTOR = "1/2*(x+y)*(x+y+1)+y"
CANTOR_SYM = "1/2*(x+y)*(x+y+1)+x"


def brute_force_scan(p, n):
    """Independent oracle: exact evaluation per point into a hash map."""
    seen = {}
    for x in range(n):
        for y in range(n):
            seen.setdefault(p.eval_exact((x, y)), []).append((x, y))
    key = lambda pt: (sum(pt), pt)
    pairs = set()
    for v, pts in seen.items():
        pts.sort(key=key)
        for other in pts[1:]:
            pairs.add((pts[0], other, v))
    bad = {pt for v, pts in seen.items() if v < 0 or v.denominator != 1 for pt in pts}
    return pairs, bad, seen


def test_scan_cantor_box_100():
    rep = scan_bijectivity(parse_poly(CANTOR), 100)
    assert rep.verdict is ScanVerdict.NO_VIOLATION_FOUND
    assert rep.collisions == () and rep.integrality_violations == ()
    assert rep.min_value == 0
    assert rep.missing_below == ()
    # values on x + y <= 98 are exactly [0, 4949], all inside the box
    assert rep.threshold >= 4950
    assert "not" in rep.note or "only" in rep.note


@pytest.mark.parametrize("expr", [CANTOR, CANTOR_SYM])
def test_scan_cantor_box_1000(expr):
    rep = scan_bijectivity(parse_poly(expr), 1000)
    assert rep.verdict is ScanVerdict.NO_VIOLATION_FOUND
    assert rep.missing_count == 0
    assert rep.threshold == 1000 * 1001 // 2


def test_scan_sum_collision():
    rep = scan_bijectivity(parse_poly("x+y"), 2)
    assert rep.verdict is ScanVerdict.NOT_INJECTIVE
    assert rep.collisions == (((0, 1), (1, 0), 1),)


def test_scan_two_squares():
    rep = scan_bijectivity(parse_poly("x^2+y^2"), 50)
    assert rep.verdict is ScanVerdict.NOT_INJECTIVE
    witnesses = {(a, b, v) for a, b, v in rep.collisions}
    assert ((0, 5), (3, 4), 25) in witnesses


def test_scan_non_integer():
    rep = scan_bijectivity(parse_poly("1/2*x + y"), 4)
    assert rep.verdict is ScanVerdict.NOT_INTEGER_VALUED
    assert rep.integrality_violations[0] == ((1, 0), Fraction(1, 2))


def test_scan_negative():
    rep = scan_bijectivity(parse_poly("x - y"), 3)
    assert rep.verdict is ScanVerdict.NOT_INTEGER_VALUED
    assert ((0, 1), Fraction(-1)) in rep.integrality_violations


def random_candidate(rng):
    terms = {}
    for _ in range(rng.randrange(1, 5)):
        a = rng.randrange(0, 4)
        b = rng.randrange(0, 4 - a)
        terms[(a, b)] = Fraction(rng.randrange(-3, 6), rng.choice([1, 1, 2]))
    return MultiPoly(2, terms)


def test_scan_agrees_with_hash_map_oracle():
    rng = random.Random(20)
    for _ in range(20):
        p = random_candidate(rng)
        n = rng.randrange(2, 25)
        rep = scan_bijectivity(p, n, max_witnesses=10**6)
        pairs, bad, _ = brute_force_scan(p, n)
        assert {(a, b, Fraction(v)) for a, b, v in rep.collisions} == pairs
        assert rep.collision_count == len(pairs)
        assert {pt for pt, _ in rep.integrality_violations} == bad


def test_constructed_collision_reported():
    # p(1, 2) == p(2, 1) by symmetry
    p = parse_poly("x^2 + y^2 + x*y")
    rep = scan_bijectivity(p, 3)
    assert ((1, 2), (2, 1), 7) in rep.collisions


def test_missing_below_are_true_gaps():
    for expr in ["x^2 + 2*y", "x^2 - x + 3*y", "2*x + 3*y + x*y", CANTOR]:
        p = parse_poly(expr)
        n = 12
        rep = scan_bijectivity(p, n, max_witnesses=10**6)
        _, _, seen = brute_force_scan(p, 6 * n)
        image = {v for v in seen if v.denominator == 1 and v >= 0}
        for m in rep.missing_below:
            assert m not in image
        # the threshold really bounds values outside the box
        for (x, y) in ((x, y) for x in range(6 * n) for y in range(6 * n)):
            if max(x, y) >= n:
                assert p.eval_exact((x, y)) >= rep.threshold


def test_safe_threshold_non_monotone_is_zero():
    assert safe_threshold(parse_poly("x^2 - 3*x + y"), 10) == 0
    assert safe_threshold(parse_poly("x - y"), 10) == 0


def test_scan_deterministic_witness_order():
    p = parse_poly("x^2 + y^2")
    a = scan_bijectivity(p, 40)
    b = scan_bijectivity(p, 40)
    assert a == b
    keys = [((sum(u), u), (sum(w), w)) for u, w, _ in a.collisions]
    assert keys == sorted(keys)


def test_scan_arity_check():
    with pytest.raises(ArityError):
        scan_bijectivity(parse_poly("x", 1), 3)


def test_refute_cantor_consistent():
    rep = refute_degree(parse_poly(CANTOR), rays=[Fraction(1, 2), 1, 2])
    assert rep.verdict is RefuteVerdict.CONSISTENT_WITH_DEGREE_2
    assert rep.estimated_degree == 2
    for r in rep.rays:
        assert r.converged
        assert abs(r.c_estimate - analytic_ray_constant(r.h)) < 1e-6


@pytest.mark.parametrize("n", [3, 4, 5])
def test_refute_power_candidates(n):
    rep = refute_degree(parse_poly(f"x^{n}+y"), rays=[1])
    assert rep.verdict is RefuteVerdict.REFUTED
    assert rep.estimated_degree == n
    assert abs(rep.rays[0].drift_slope - (n - 2)) < 0.05


def test_refute_mixed_quartic():
    rep = refute_degree(parse_poly("x^4+x*y+y"), rays=[1, 2])
    assert rep.verdict is RefuteVerdict.REFUTED
    assert rep.estimated_degree == 4
    for r in rep.rays:
        assert r.drift_slope == pytest.approx(2.0, abs=0.05)


def test_refute_flags_vanishing_leading_form():
    rep = refute_degree(parse_poly("(x-y)^4 + x^2 + y"), rays=[1, 2])
    flagged = {r.h: r.leading_form_vanishes for r in rep.rays}
    assert flagged == {Fraction(1): True, Fraction(2): False}
    assert rep.verdict is RefuteVerdict.REFUTED
    assert rep.estimated_degree == 4
    only_flagged = refute_degree(parse_poly("(x-y)^3 + x^2 + y"), rays=[1])
    assert only_flagged.verdict is RefuteVerdict.INCONCLUSIVE


def test_refute_propagates_domain_errors():
    with pytest.raises(IntegralityError):
        refute_degree(parse_poly("x^2 - 2*y^2"), rays=[1])


@pytest.mark.parametrize(
    "expr", [CANTOR, CANTOR_SYM, "x^2 + y", "x^2 + 3*x*y + y^2 + 1"]
)
def test_converged_rays_are_constant_and_stable(expr):
    p = parse_poly(expr)
    a = refute_degree(p, rays=DEFAULT_RAYS)
    b = refute_degree(p, rays=DEFAULT_RAYS, x_start=2 * 2**20)
    for ra, rb in zip(a.rays, b.rays):
        if ra.converged:
            assert ra.classification in (EfficiencyClass.CONSTANT, EfficiencyClass.CONSERVING)
            assert abs(ra.c_estimate - rb.c_estimate) < 1e-5
