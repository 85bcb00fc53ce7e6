"""Cantor pairing, information efficiency and polynomial pairing candidates."""

__version__ = "0.1.0"

from .candidates import refute_degree, scan_bijectivity
from .efficiency import (
    EfficiencyClass,
    RayReport,
    RaySpec,
    analytic_ray_constant,
    classify,
    delta,
    info_content,
    ray_limit_estimate,
)
from .errors import (
    ArityError,
    CantorInfoError,
    DomainError,
    IntegralityError,
    PolySyntaxError,
)
from .kproxy import builtin_codec, census, k_upper, swap_probe, wedge_points
from .pairing import cantor_pair, cantor_pair_sym, cantor_unpair, isqrt, pair_k, unpair_k
from .parser import parse_poly
from .poly import MultiPoly
