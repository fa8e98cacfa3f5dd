"""Certified real-root isolation by Sturm sequences, refinement by bisection."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .interval import Interval
from .uni import UniPoly, cauchy_bound, squarefree_decomposition, squarefree_part


@dataclass(frozen=True)
class RootInterval:
    """Isolating interval for one real root.

    Either ``lo == hi`` (the root is the rational ``lo``) or the root lies in the
    open interval ``(lo, hi)`` and ``poly`` has opposite nonzero signs at the ends.
    ``poly`` is the squarefree polynomial the interval was isolated against.
    """

    lo: Fraction
    hi: Fraction
    multiplicity_of_squarefree_part: int = 1
    poly: UniPoly | None = field(default=None, compare=False, repr=False)

    @property
    def multiplicity(self) -> int:
        return self.multiplicity_of_squarefree_part

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def as_interval(self) -> Interval:
        return Interval(self.lo, self.hi)

    def __float__(self) -> float:
        return float(self.mid)


def sturm_sequence(p: UniPoly) -> list[UniPoly]:
    """Signed remainder sequence of ``p`` (made squarefree-safe by the caller).

    Members are scaled by positive constants to keep coefficients integral, which
    leaves every sign pattern unchanged.
    """
    seq = [_positive_primitive(p), _positive_primitive(p.derivative())]
    while not seq[-1].is_zero() and seq[-1].degree() > 0:
        r = -(seq[-2] % seq[-1])
        if r.is_zero():
            break
        seq.append(_positive_primitive(r))
    return [q for q in seq if not q.is_zero()]


def _positive_primitive(q: UniPoly) -> UniPoly:
    if q.is_zero():
        return q
    c, ints = q.integer_primitive()
    return UniPoly(ints if c > 0 else [-v for v in ints])


def _sign_changes(seq: list[UniPoly], x: Fraction) -> int:
    changes, last = 0, 0
    for q in seq:
        s = q.sign_at(x)
        if s == 0:
            continue
        if last and s != last:
            changes += 1
        last = s
    return changes


def _sign_changes_at_inf(seq: list[UniPoly], positive: bool) -> int:
    changes, last = 0, 0
    for q in seq:
        s = 1 if q.lc() > 0 else -1
        if not positive and q.degree() % 2 == 1:
            s = -s
        if last and s != last:
            changes += 1
        last = s
    return changes


def count_real_roots(p: UniPoly, lo: Fraction | None = None, hi: Fraction | None = None) -> int:
    """Number of distinct real roots of ``p`` in ``(lo, hi]`` (``None`` = infinite end)."""
    if p.is_zero():
        raise ValueError("zero polynomial has infinitely many roots")
    if p.degree() == 0:
        return 0
    seq = sturm_sequence(p)
    va = _sign_changes_at_inf(seq, False) if lo is None else _sign_changes(seq, Fraction(lo))
    vb = _sign_changes_at_inf(seq, True) if hi is None else _sign_changes(seq, Fraction(hi))
    return va - vb


def sturm_isolate(p: UniPoly) -> list[RootInterval]:
    """Isolate every distinct real root of a nonzero polynomial, in increasing order."""
    if p.is_zero():
        raise ValueError("cannot isolate the roots of the zero polynomial")
    if p.degree() <= 0:
        return []
    factors = squarefree_decomposition(p)
    sqf = squarefree_part(p)
    seq = sturm_sequence(sqf)
    bound = cauchy_bound(sqf)
    found: list[tuple[Fraction, Fraction]] = []

    def v(x: Fraction) -> int:
        return _sign_changes(seq, x)

    # stack entries: (a, b, V(a), V(b)); V(a) - V(b) counts roots in (a, b]
    a, b = -bound, bound
    stack = [(a, b, v(a), v(b))]
    points: set[Fraction] = set()
    while stack:
        a, b, va, vb = stack.pop()
        n = va - vb
        if n == 0:
            continue
        b_root = sqf(b) == 0
        if b_root:
            n -= 1
            if b not in points:
                points.add(b)
                found.append((b, b))
        if n == 0:
            continue
        if n == 1 and not b_root and sqf(a) != 0:
            found.append((a, b))
            continue
        m = (a + b) / 2
        vm = v(m)
        stack.append((m, b, vm, vb))
        stack.append((a, m, va, vm))
    found.sort()
    out = []
    for lo, hi in found:
        mult = 1
        for f, k in factors:
            if (lo == hi and f(lo) == 0) or (lo < hi and f(lo) * f(hi) < 0):
                mult = k
                break
        out.append(RootInterval(lo, hi, mult, sqf))
    return out


def refine(p: UniPoly | None, r: RootInterval, width: Fraction) -> RootInterval:
    """Shrink ``r`` by bisection until ``hi - lo <= width``."""
    width = Fraction(width)
    if r.hi - r.lo <= width:
        return r
    q = r.poly if r.poly is not None else squarefree_part(p)
    lo, hi = r.lo, r.hi
    slo = q.sign_at(lo)
    while hi - lo > width:
        m = (lo + hi) / 2
        sm = q.sign_at(m)
        if sm == 0:
            lo = hi = m
            break
        if sm == slo:
            lo = m
        else:
            hi = m
    return RootInterval(lo, hi, r.multiplicity_of_squarefree_part, q)


def refine_once(r: RootInterval) -> RootInterval:
    """Halve a non-exact interval (one bisection step)."""
    if r.is_exact:
        return r
    return refine(None, r, r.width / 2)
