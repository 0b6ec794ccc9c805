"""Uniform time grids that land exactly on a set of anchor times."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce

from .errors import GridError

GRID_RTOL = 1e-12
MIN_STEP_FRACTION = 1e-8


def _rationalize(x: float, tol: float) -> Fraction | None:
    for digits in range(0, 13):
        frac = Fraction(x).limit_denominator(10**digits)
        if abs(float(frac) - x) <= tol:
            return frac
    return None


def _fraction_gcd(a: Fraction, b: Fraction) -> Fraction:
    return Fraction(
        math.gcd(a.numerator * b.denominator, b.numerator * a.denominator),
        a.denominator * b.denominator,
    )


def common_step(anchors, h_max: float, horizon: float) -> float:
    """Largest step ``h <= h_max`` that divides every anchor time.

    Anchors are matched within ``1e-12 * horizon``.  Raises GridError if the
    common grid would need a step below ``horizon * 1e-8``.
    """
    if not h_max > 0:
        raise ValueError(f"h_max must be > 0, got {h_max}")
    tol = GRID_RTOL * max(1.0, horizon)
    h_min = MIN_STEP_FRACTION * horizon
    anchors = sorted({a for a in anchors if a > tol})
    if not anchors:
        return h_max

    fracs = []
    for a in anchors:
        f = _rationalize(a, tol)
        if f is None:
            raise GridError(f"time {a!r} has no rational grid within tolerance")
        fracs.append(f)
    base = reduce(_fraction_gcd, fracs)
    k = max(1, math.ceil(float(base) / h_max - 1e-9))
    h = float(base) / k
    if h < h_min:
        raise GridError(
            f"aligned step {h:.3e} is below the minimum {h_min:.3e}; "
            f"anchors {anchors} share no coarser grid"
        )
    for a in anchors:
        if abs(round(a / h) * h - a) > tol:
            raise GridError(f"time {a!r} does not land on the grid h={h!r}")
    return h


def n_steps(horizon: float, h: float) -> int:
    return max(1, math.ceil(horizon / h - 1e-9))
