"""JSON/CSV/plain serialization of analysis reports.

Reals carry 12 significant digits, rationals are written ``"p/q"`` and
naturals that may exceed 64 bits are decimal strings.
"""

import csv
import enum
import io
import json
from fractions import Fraction

from .efficiency import format_rational


def real(v):
    if v is None:
        return None
    return float(f"{v:.12g}")


def nat(v):
    return None if v is None else str(v)


def point(pt):
    return [str(c) for c in pt]


def _value(v):
    # exact candidate values: natural -> decimal string, otherwise "p/q"
    if isinstance(v, Fraction) and v.denominator != 1:
        return format_rational(v)
    return str(v)


def ray_report(rep):
    spec = rep.spec
    return {
        "h": format_rational(spec.h),
        "x_start": nat(spec.x_start),
        "growth_ratio": spec.growth_ratio,
        "steps": spec.steps,
        "tol": real(spec.tol),
        "slope_tol": real(spec.slope_tol),
        "samples": [{"x": nat(x), "delta": real(d)} for x, d in rep.samples],
        "c_estimate": real(rep.c_estimate),
        "converged": rep.converged,
        "drift_slope": real(rep.drift_slope),
        "residual": real(rep.residual),
    }


def scan_report(rep):
    return {
        "box_side": rep.box_side,
        "verdict": rep.verdict.value,
        "collisions": [
            {"first": point(a), "second": point(b), "value": _value(v)}
            for a, b, v in rep.collisions
        ],
        "collision_count": rep.collision_count,
        "integrality_violations": [
            {"point": point(p), "value": _value(v)} for p, v in rep.integrality_violations
        ],
        "integrality_violation_count": rep.integrality_violation_count,
        "min_value": nat(rep.min_value),
        "max_value": nat(rep.max_value),
        "threshold": nat(rep.threshold),
        "missing_below": [nat(m) for m in rep.missing_below],
        "missing_count": rep.missing_count,
        "note": rep.note,
    }


def ray_result(r):
    return {
        "h": format_rational(r.h),
        "leading_form_vanishes": r.leading_form_vanishes,
        "drift_slope": real(r.drift_slope),
        "estimated_degree": r.estimated_degree,
        "c_estimate": real(r.c_estimate),
        "converged": r.converged,
        "classification": r.classification.value if r.classification else None,
        "error": r.error,
    }


def refutation_report(rep):
    return {
        "poly": rep.poly.to_string(),
        "total_degree": rep.poly.degree,
        "verdict": rep.verdict.value,
        "estimated_degree": rep.estimated_degree,
        "slope_floor": real(rep.slope_floor),
        "rays": [ray_result(r) for r in rep.rays],
    }


def census_report(rep):
    return {
        "N": nat(rep.range_size),
        "c": rep.c,
        "count": rep.count_compressible,
        "tested": rep.tested,
        "fraction": real(rep.fraction),
        "bound": real(rep.bound),
        "exhaustive": rep.exhaustive,
        "seed": rep.seed,
        "codec": rep.codec,
        "note": rep.note,
    }


def wedge_report(rep):
    return {
        "h": format_rational(rep.spec.h),
        "eps": format_rational(rep.spec.epsilon),
        "N": rep.spec.box_side,
        "count": rep.count,
        "fraction": real(rep.fraction),
        "area_fraction": format_rational(rep.area_fraction),
        "area_fraction_real": real(float(rep.area_fraction)),
        "discrepancy": real(rep.discrepancy),
    }


def _jsonable(v):
    if isinstance(v, enum.Enum):
        return v.value
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, float):
        return real(v)
    raise TypeError(f"not serializable: {v!r}")


def to_json(doc):
    return json.dumps(doc, indent=2, default=_jsonable) + "\n"


def to_csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(["" if v is None else _csv_cell(v) for v in row])
    return buf.getvalue()


def _csv_cell(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.12g}"
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, enum.Enum):
        return v.value
    return str(v)
