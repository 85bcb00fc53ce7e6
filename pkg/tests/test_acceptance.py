"""Exit criteria for the package, one test per criterion.

Each test also enforces its wall-clock budget.  A summary with one
PASS/FAIL line per criterion is printed at the end of the pytest run.
"""

import random
import subprocess
import sys
import time
from fractions import Fraction

import mpmath
import pytest

from cantorinfo.candidates import (
    DEFAULT_RAYS,
    RefuteVerdict,
    ScanVerdict,
    refute_degree,
    scan_bijectivity,
)
from cantorinfo.efficiency import RaySpec, info_content, ray_limit_estimate
from cantorinfo.kproxy import WedgeSpec, census, code_lengths, wedge_points
from cantorinfo.pairing import cantor_pair, cantor_unpair
from cantorinfo.parser import parse_poly
from cantorinfo.poly import MultiPoly

CANTOR = "1/2*(x+y)*(x+y+1)+y"
CANTOR_SYM = "1/2*(x+y)*(x+y+1)+x"


class Budget:
    def __init__(self, seconds):
        self.seconds = seconds

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.seconds, f"took {self.elapsed:.2f} s, budget {self.seconds} s"


@pytest.mark.criterion(1, "round-trip bijectivity")
def test_round_trip_bijectivity():
    with Budget(10):
        for x in range(1000):
            for y in range(1000):
                assert cantor_unpair(cantor_pair(x, y)) == (x, y)
        for n in range(10**6):
            assert cantor_pair(*cantor_unpair(n)) == n
        rng = random.Random(1)
        for _ in range(1000):
            x = rng.randrange(10**999, 10**1000)
            y = rng.randrange(10**999, 10**1000)
            assert cantor_unpair(cantor_pair(x, y)) == (x, y)
            n = rng.randrange(10**999, 10**1000)
            assert cantor_pair(*cantor_unpair(n)) == n


def expanded_ray_constant(h):
    # log2(1/(2h) + 1 + h/2), evaluated independently at 50 digits
    with mpmath.workdps(50):
        hh = mpmath.mpf(h.numerator) / h.denominator
        return float(mpmath.log(1 / (2 * hh) + 1 + hh / 2, 2))


@pytest.mark.criterion(2, "ray constants of the Cantor pairing")
def test_ray_constants():
    rays = [Fraction(s) for s in ("1/4", "1/3", "1/2", "1", "3/2", "2", "4")]
    with Budget(5):
        for h in rays:
            rep = ray_limit_estimate(cantor_pair, RaySpec(h=h))
            assert rep.converged, h
            assert 2**40 <= rep.samples[-1][0] <= 2**46
            assert abs(rep.c_estimate - expanded_ray_constant(h)) < 1e-6, h
        rep = ray_limit_estimate(cantor_pair, RaySpec(h=1))
        assert abs(rep.c_estimate - 1.0) < 1e-6


@pytest.mark.criterion(3, "degree-drift witness")
def test_degree_drift():
    with Budget(10):
        for n in (3, 4, 5):
            rep = refute_degree(parse_poly(f"x^{n}+y"), rays=[1])
            assert rep.verdict is RefuteVerdict.REFUTED
            assert rep.estimated_degree == n
            assert abs(rep.rays[0].drift_slope - (n - 2)) <= 0.05
        for expr in (CANTOR, CANTOR_SYM):
            rep = refute_degree(parse_poly(expr), rays=DEFAULT_RAYS)
            assert rep.verdict is RefuteVerdict.CONSISTENT_WITH_DEGREE_2
            assert len(rep.rays) == 5


@pytest.mark.criterion(4, "triangle coverage T = 2000")
def test_triangle_coverage():
    t = 2000
    with Budget(5):
        image = [cantor_pair(x, s - x) for s in range(t + 1) for x in range(s + 1)]
        size = (t + 1) * (t + 2) // 2
        assert len(image) == size
        assert set(image) == set(range(size))


def hash_map_oracle(p, n):
    seen = {}
    pairs = set()
    for x in range(n):
        for y in range(n):
            seen.setdefault(p.eval_exact((x, y)), []).append((x, y))
    for v, pts in seen.items():
        pts.sort(key=lambda q: (sum(q), q))
        pairs.update((pts[0], other, v) for other in pts[1:])
    return pairs


@pytest.mark.criterion(5, "collision falsification")
def test_collision_falsification():
    with Budget(10):
        rep = scan_bijectivity(parse_poly("x+y"), 2)
        assert rep.verdict is ScanVerdict.NOT_INJECTIVE
        assert rep.collisions[0][:2] == ((0, 1), (1, 0))

        rep = scan_bijectivity(parse_poly("x^2+y^2"), 50, max_witnesses=10**6)
        assert rep.verdict is ScanVerdict.NOT_INJECTIVE
        two_squares = [
            (a, b, v) for a, b, v in rep.collisions if sorted(a) != sorted(b)
        ]
        assert ((0, 5), (3, 4), 25) in two_squares
        for a, b, v in two_squares:
            assert a[0] ** 2 + a[1] ** 2 == b[0] ** 2 + b[1] ** 2 == v

        rng = random.Random(55)
        for _ in range(20):
            terms = {}
            for _ in range(rng.randrange(1, 5)):
                i = rng.randrange(0, 4)
                j = rng.randrange(0, 4 - i)
                terms[(i, j)] = Fraction(rng.randrange(-4, 7), rng.choice((1, 2, 3)))
            p = MultiPoly(2, terms)
            n = rng.randrange(2, 30)
            rep = scan_bijectivity(p, n, max_witnesses=10**6)
            got = {(a, b, Fraction(v)) for a, b, v in rep.collisions}
            assert got == hash_map_oracle(p, n)


@pytest.mark.criterion(6, "counting bound at N = 2^20")
def test_counting_bound():
    n = 1 << 20
    with Budget(60):
        lengths = code_lengths(n)
        for c in (4, 8, 12):
            rep = census(n, c, lengths=lengths)
            assert rep.exhaustive and rep.tested == n - 1
            assert rep.fraction <= 2.0 ** (1 - c)


def clipped_area_oracle(h, eps, m=100_000):
    # midpoint quadrature of min(1, (h+eps)t) - min(1, h t) over [0, 1]
    hi, lo = float(h + eps), float(h)
    acc = 0.0
    for i in range(m):
        t = (i + 0.5) / m
        acc += min(1.0, hi * t) - min(1.0, lo * t)
    return acc / m


@pytest.mark.criterion(7, "wedge density")
def test_wedge_density():
    n = 10**4
    with Budget(5):
        for h, eps in ((Fraction(1, 2), Fraction(1, 4)), (Fraction(1), Fraction(1, 2))):
            rep = wedge_points(WedgeSpec(h, eps, n))
            assert abs(rep.fraction - clipped_area_oracle(h, eps)) <= 4 / n


@pytest.mark.criterion(8, "logarithm axioms")
def test_logarithm_axioms():
    rng = random.Random(8)
    with Budget(5):
        assert info_content(2) == 1.0
        for _ in range(10**5):
            m = rng.randrange(1, 2**512)
            k = rng.randrange(1, 2**512)
            assert abs(info_content(m * k) - info_content(m) - info_content(k)) < 2**-40
            assert info_content(m) <= info_content(m + 1)


@pytest.mark.criterion(9, "determinism of CLI reports")
def test_cli_determinism():
    exe = [sys.executable, "-m", "cantorinfo"]
    invocations = [
        ["census", "--n", "1099511627776", "--c", "6", "--sample", "3000", "--seed", "42"],
        ["refute", "--poly", "x^3+y", "--rays", "1,2", "--seed", "42"],
        ["check", "--poly", "x^2+y^2", "--box", "50", "--seed", "42"],
        ["ray", "--h", "3/2", "--seed", "42"],
        ["wedge", "--h", "1/2", "--eps", "1/4", "--box", "10000", "--format", "csv"],
    ]
    for argv in invocations:
        first = subprocess.run(exe + argv, capture_output=True, check=True).stdout
        second = subprocess.run(exe + argv, capture_output=True, check=True).stdout
        assert first and first == second
