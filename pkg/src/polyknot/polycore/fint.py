"""Outward-rounded floating-point intervals for fast certified box tests.

Every IEEE operation is correctly rounded, so widening each result by one ulp on
both sides keeps the true value enclosed. Intervals are plain ``(lo, hi)`` tuples.
A non-finite endpoint makes the enclosure useless; callers then fall back to
exact arithmetic.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .bi import BiPoly

_INF = math.inf
FI = tuple  # (lo, hi)


def _dn(x: float) -> float:
    return math.nextafter(x, -_INF)


def _up(x: float) -> float:
    return math.nextafter(x, _INF)


def enclose(x: Fraction) -> FI:
    f = float(x)
    if Fraction(f) == x:
        return (f, f)
    return (_dn(f), _up(f))


def enclose_range(lo: Fraction, hi: Fraction) -> FI:
    return (enclose(lo)[0], enclose(hi)[1])


def add(a: FI, b: FI) -> FI:
    return (_dn(a[0] + b[0]), _up(a[1] + b[1]))


def sub(a: FI, b: FI) -> FI:
    return (_dn(a[0] - b[1]), _up(a[1] - b[0]))


def mul(a: FI, b: FI) -> FI:
    p = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return (_dn(min(p)), _up(max(p)))


def excludes_zero(a: FI) -> bool:
    return a[0] > 0 or a[1] < 0


def finite(a: FI) -> bool:
    return math.isfinite(a[0]) and math.isfinite(a[1])


class BoxEvaluator:
    """Precompiled Horner evaluation of a :class:`BiPoly` on float boxes."""

    __slots__ = ("rows",)

    def __init__(self, p: BiPoly):
        # rows[j] = enclosures of the s-coefficients of t**j, highest power of s last
        self.rows = [[enclose(c) for c in cj.coeffs] for cj in p.t_coeffs()]

    def __call__(self, s: FI, t: FI) -> FI:
        acc = (0.0, 0.0)
        for row in reversed(self.rows):
            v = (0.0, 0.0)
            for c in reversed(row):
                v = add(mul(v, s), c)
            acc = add(mul(acc, t), v)
        return acc
