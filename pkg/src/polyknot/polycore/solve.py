"""Certified real common zeros of bivariate polynomial systems.

Every common zero ``(x, y)`` of two coprime polynomials ``A, B`` has ``x`` a root of
``Res_t(A, B)`` and ``y`` a root of ``Res_s(A, B)``, so the candidates form a finite
grid of boxes, each holding exactly one grid point. A box is discarded once interval
evaluation excludes zero for some member of the system, accepted once a Krawczyk
test proves a zero of a square system inside it, and otherwise settled exactly by
computing the gcd of the fibre polynomials over ``Q(x)`` (see ``algebraic.py``).

Shared factors are split off with a bivariate gcd; whether the shared curve has a
real point is decided by sampling its fibres between critical values and, for
isolated real points, by solving for its singular points.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import sympy

from ..errors import IdenticallyZeroResultant, InfiniteZeroSet
from . import fint
from .algebraic import RealAlgebraic
from .bi import BiPoly
from .interval import Interval
from .resultant import resultant_eliminate
from .roots import RootInterval, count_real_roots, refine, sturm_isolate
from .uni import UniPoly, poly_gcd, squarefree_part

log = logging.getLogger(__name__)

_S, _T = sympy.symbols("s t")

# fast-path refinement stops here; the exact fibre test takes over
_FAST_WIDTH = Fraction(1, 2**40)


@dataclass(frozen=True)
class ZeroBox:
    """A certified common real zero: ``s`` and ``t`` isolate its coordinates."""

    s: RootInterval
    t: RootInterval

    def refined(self, width) -> ZeroBox:
        return ZeroBox(refine(None, self.s, width), refine(None, self.t, width))

    @property
    def mid(self) -> tuple[Fraction, Fraction]:
        return self.s.mid, self.t.mid

    def box(self) -> tuple[Interval, Interval]:
        return self.s.as_interval(), self.t.as_interval()


def exact_point(x: Fraction) -> RootInterval:
    x = Fraction(x)
    return RootInterval(x, x, 1, UniPoly([-x, 1]))


# -- sympy bridge (bivariate gcd / exact division) --------------------------


def to_sympy(p: BiPoly) -> sympy.Poly:
    return sympy.Poly.from_dict(
        {k: sympy.Rational(c.numerator, c.denominator) for k, c in p.terms.items()} or {(0, 0): 0},
        _S,
        _T,
        domain="QQ",
    )


def from_sympy(p: sympy.Poly) -> BiPoly:
    out = {}
    for (i, j), c in p.as_dict().items():
        c = sympy.Rational(c)
        out[(i, j)] = Fraction(int(c.p), int(c.q))
    return BiPoly(out)


def bivariate_gcd(polys: Sequence[BiPoly]) -> BiPoly:
    g = to_sympy(polys[0])
    for p in polys[1:]:
        g = g.gcd(to_sympy(p))
    return from_sympy(g)


def bivariate_div(p: BiPoly, d: BiPoly) -> BiPoly:
    q, r = to_sympy(p).div(to_sympy(d))
    if not r.is_zero:
        raise ArithmeticError("inexact bivariate division")
    return from_sympy(q)


def bivariate_sqf_part(p: BiPoly) -> BiPoly:
    return from_sympy(to_sympy(p).sqf_part())


# -- public entry point -----------------------------------------------------


def common_real_zeros(
    polys: Sequence[BiPoly],
    *,
    symmetric: bool = False,
    first: bool = False,
    allow_curve: bool = True,
) -> list[ZeroBox]:
    """All (or, with ``first``, one) real common zeros of ``polys``.

    With ``symmetric`` every input satisfies ``p(s, t) = +-p(t, s)`` and only zeros
    with ``s <= t`` are reported. If the system has a curve of real zeros the result
    is a single point on it when ``allow_curve`` is set; otherwise
    :class:`InfiniteZeroSet` is raised.
    """
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        raise InfiniteZeroSet("every polynomial in the system is zero")
    if any(p.is_constant() for p in polys):
        return []
    d = bivariate_gcd(polys) if len(polys) > 1 else polys[0]
    found: list[ZeroBox] = []
    if not d.is_constant():
        curve_pt = real_point_on_curve(d)
        if curve_pt is not None:
            if not allow_curve:
                raise InfiniteZeroSet("the system shares a factor with real points")
            return [curve_pt]
        polys = [bivariate_div(p, d) for p in polys]
        if any(p.is_constant() for p in polys):
            return []
    found.extend(_finite_zeros(polys, symmetric=symmetric, first=first))
    return found


# -- finite systems ---------------------------------------------------------


def _eliminants(polys: list[BiPoly], symmetric: bool) -> tuple[BiPoly, BiPoly, UniPoly, UniPoly]:
    ordered = sorted(polys, key=lambda p: (p.total_degree(), len(p.terms)))
    a, rest = ordered[0], ordered[1:]
    for lam in range(1, 40):
        b = BiPoly()
        for k, p in enumerate(rest):
            b = b + p * (lam**k)
        if b.is_zero():
            continue
        try:
            rs = resultant_eliminate(a, b, "t")
            rt = rs if symmetric else resultant_eliminate(a, b, "s")
        except IdenticallyZeroResultant:
            continue
        return a, b, rs, rt
    raise RuntimeError("no coprime combination found")  # pragma: no cover


class _FastSystem:
    """Float-interval evaluators for a system and, for two equations, its Jacobian."""

    def __init__(self, polys: list[BiPoly], a: BiPoly, b: BiPoly, square: bool):
        try:
            self.evals = [fint.BoxEvaluator(p) for p in polys]
            self.jac = None
            if square:
                self.ab = (fint.BoxEvaluator(a), fint.BoxEvaluator(b))
                self.jac = [fint.BoxEvaluator(q) for q in (a.diff("s"), a.diff("t"), b.diff("s"), b.diff("t"))]
            self.ok = True
        except OverflowError:
            self.ok = False

    def excluded(self, si: RootInterval, ti: RootInterval) -> bool | None:
        """True if some member is certified nonzero on the box; None if floats overflow."""
        if not self.ok:
            return None
        try:
            bs, bt = fint.enclose_range(si.lo, si.hi), fint.enclose_range(ti.lo, ti.hi)
        except OverflowError:
            return None
        for ev in self.evals:
            v = ev(bs, bt)
            if not fint.finite(v):
                return None
            if fint.excludes_zero(v):
                return True
        return False

    def krawczyk(self, si: RootInterval, ti: RootInterval) -> bool:
        """True if a zero of the two equations is proven to lie in the box."""
        if not self.ok or self.jac is None or si.is_exact or ti.is_exact:
            return False
        try:
            bs, bt = fint.enclose_range(si.lo, si.hi), fint.enclose_range(ti.lo, ti.hi)
            ms, mt = float(si.mid), float(ti.mid)
        except OverflowError:
            return False
        if not (si.lo <= ms <= si.hi and ti.lo <= mt <= ti.hi):
            return False
        ps, pt = (ms, ms), (mt, mt)
        j11, j12, j21, j22 = (ev(ps, pt) for ev in self.jac)
        det = j11[0] * j22[0] - j12[0] * j21[0]
        if det == 0 or not math.isfinite(det):
            return False
        y11, y12, y21, y22 = (j22[0] / det, -j12[0] / det, -j21[0] / det, j11[0] / det)
        Y = ((y11, y11), (y12, y12), (y21, y21), (y22, y22))
        fa, fb = (ev(ps, pt) for ev in self.ab)
        c1 = fint.sub(ps, fint.add(fint.mul(Y[0], fa), fint.mul(Y[1], fb)))
        c2 = fint.sub(pt, fint.add(fint.mul(Y[2], fa), fint.mul(Y[3], fb)))
        jas, jat, jbs, jbt = (ev(bs, bt) for ev in self.jac)
        one = (1.0, 1.0)
        # M = I - Y J(X)
        m11 = fint.sub(one, fint.add(fint.mul(Y[0], jas), fint.mul(Y[1], jbs)))
        m12 = fint.sub((0.0, 0.0), fint.add(fint.mul(Y[0], jat), fint.mul(Y[1], jbt)))
        m21 = fint.sub((0.0, 0.0), fint.add(fint.mul(Y[2], jas), fint.mul(Y[3], jbs)))
        m22 = fint.sub(one, fint.add(fint.mul(Y[2], jat), fint.mul(Y[3], jbt)))
        ds, dt = fint.sub(bs, ps), fint.sub(bt, pt)
        k1 = fint.add(fint.add(fint.mul(m11, ds), fint.mul(m12, dt)), c1)
        k2 = fint.add(fint.add(fint.mul(m21, ds), fint.mul(m22, dt)), c2)
        if not (fint.finite(k1) and fint.finite(k2)):
            return False
        return si.lo < k1[0] and k1[1] < si.hi and ti.lo < k2[0] and k2[1] < ti.hi


def _exact_fibre_test(polys: list[BiPoly], rs_sqf: UniPoly, si: RootInterval, ti: RootInterval) -> bool:
    """Decide exactly whether the grid point in ``si x ti`` is a common zero."""
    x = RealAlgebraic(rs_sqf, si)
    fibres = [x.trim(p.t_coeffs()) for p in polys]
    g: list = []
    for f in fibres:
        g = x.kpoly_gcd(g, f) if g else f
        if g and len(g) == 1:
            return False
    if not g:
        return True
    if ti.lo == ti.hi:
        return x.kpoly_sign_at(g, ti.lo) == 0
    return x.kpoly_root_count(g, ti.lo, ti.hi) > 0


def _box_key(si: RootInterval, ti: RootInterval):
    ms, mt = si.mid, ti.mid
    return (abs(ms) + abs(mt), -(ms + mt), ms)


def _finite_zeros(polys: list[BiPoly], *, symmetric: bool, first: bool) -> list[ZeroBox]:
    a, b, rs, rt = _eliminants(polys, symmetric)
    roots_s = sturm_isolate(rs)
    roots_t = roots_s if symmetric else sturm_isolate(rt)
    if not roots_s or not roots_t:
        return []
    rs_sqf = roots_s[0].poly
    pairs = []
    for i, si in enumerate(roots_s):
        for j, ti in enumerate(roots_t):
            if symmetric and j < i:
                continue
            pairs.append((si, ti))
    pairs.sort(key=lambda st: _box_key(*st))
    fast = _FastSystem(polys, a, b, len(polys) == 2)
    out = []
    for si, ti in pairs:
        z = _settle_box(polys, fast, rs_sqf, si, ti)
        if z is not None:
            out.append(z)
            if first:
                break
    return out


def _settle_box(polys, fast: _FastSystem, rs_sqf, si: RootInterval, ti: RootInterval) -> ZeroBox | None:
    width = max(si.width, ti.width, Fraction(1, 2**6))
    while True:
        excluded = fast.excluded(si, ti)
        if excluded is None:
            bs, bt = si.as_interval(), ti.as_interval()
            excluded = any(p.eval_box(bs, bt).excludes_zero() for p in polys)
        if excluded:
            return None
        if fast.krawczyk(si, ti):
            return ZeroBox(si, ti)
        if (si.width <= _FAST_WIDTH and ti.width <= _FAST_WIDTH) or (si.is_exact and ti.is_exact):
            break
        width = width / 16
        si, ti = refine(None, si, width), refine(None, ti, width)
    if si.is_exact and ti.is_exact:
        ok = all(p(si.lo, ti.lo) == 0 for p in polys)
    else:
        ok = _exact_fibre_test(polys, rs_sqf, si, ti)
    return ZeroBox(si, ti) if ok else None


# -- curves -----------------------------------------------------------------


def _content_in_s(d: BiPoly) -> UniPoly:
    g = UniPoly()
    for c in d.t_coeffs():
        if not c.is_zero():
            g = c if g.is_zero() else poly_gcd(g, c)
    return g


def _rational_between(lo: Fraction, hi: Fraction) -> Fraction:
    return (lo + hi) / 2


def _sample_points(crit: UniPoly) -> list[Fraction]:
    if crit.degree() <= 0:
        return [Fraction(0)]
    roots = sturm_isolate(crit)
    if not roots:
        return [Fraction(0)]
    # make isolating intervals pairwise disjoint with room in between
    pts = [roots[0].lo - 1, roots[-1].hi + 1]
    for r1, r2 in zip(roots, roots[1:]):
        while not r1.hi < r2.lo:
            r1 = refine(None, r1, r1.width / 2)
            r2 = refine(None, r2, r2.width / 2)
        pts.append(_rational_between(r1.hi, r2.lo))
    return sorted(pts)


def real_point_on_curve(d: BiPoly) -> ZeroBox | None:
    """A real point of ``d = 0`` (nonconstant ``d``), or ``None`` if there is none."""
    cs = _content_in_s(d)
    if cs.degree() > 0:
        rts = sturm_isolate(cs)
        if rts:
            t0 = Fraction(int(rts[0].hi) + 1)
            return ZeroBox(rts[0], exact_point(t0))
    ct = _content_in_s(d.swap())
    if ct.degree() > 0:
        rts = sturm_isolate(ct)
        if rts:
            s0 = Fraction(int(rts[0].lo) - 1)
            return ZeroBox(exact_point(s0), rts[0])
    dp = d
    if cs.degree() > 0:
        dp = bivariate_div(dp, BiPoly.from_uni(cs, "s"))
    if ct.degree() > 0:
        dp = bivariate_div(dp, BiPoly.from_uni(ct, "t"))
    if dp.is_constant():
        return None
    dp = bivariate_sqf_part(dp)
    if dp.degree_in("t") <= 0:
        # a polynomial in s alone with no real roots (content handled above)
        return None
    lc = dp.t_coeffs()[-1]
    crit = lc
    if dp.degree_in("t") >= 2:
        crit = lc * resultant_eliminate(dp, dp.diff("t"), "t")
    for s0 in _sample_points(crit):
        fibre = dp.at_s(s0)
        if fibre.degree() > 0 and count_real_roots(fibre) > 0:
            return ZeroBox(exact_point(s0), sturm_isolate(fibre)[0])
    # only isolated real points can remain; they are singular points
    sing = [dp, dp.diff("s"), dp.diff("t")]
    pts = common_real_zeros(sing, first=True, allow_curve=False)
    return pts[0] if pts else None


def squarefree_roots(p: UniPoly) -> list[RootInterval]:
    return sturm_isolate(squarefree_part(p))
