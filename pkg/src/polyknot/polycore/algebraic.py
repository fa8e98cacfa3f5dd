"""Exact sign and zero tests at a real algebraic number.

A :class:`RealAlgebraic` is a real root ``x`` of a squarefree rational polynomial
``q`` together with an isolating interval. ``q`` need not be irreducible: whenever
a zero test meets a nontrivial ``gcd(e, q)`` the defining polynomial is replaced by
the factor that still vanishes at ``x``. After that, ``e(x) == 0`` iff ``e`` is
divisible by ``q``, and a nonzero ``e(x)`` has its sign certified by interval
evaluation on a refined isolating interval.

Polynomials in a second variable ``t`` with coefficients in ``Q[x]`` are plain
lists of :class:`UniPoly` (index = power of ``t``).
"""

from __future__ import annotations

from fractions import Fraction

from .interval import Interval
from .roots import RootInterval, count_real_roots, refine
from .uni import UniPoly, poly_gcd, poly_xgcd

KPoly = list  # list[UniPoly], coefficient of t**j at index j


class RealAlgebraic:
    def __init__(self, q: UniPoly, root: RootInterval):
        self.q = q.primitive()
        self.lo, self.hi = root.lo, root.hi

    @property
    def is_rational(self) -> bool:
        return self.lo == self.hi

    def interval(self) -> Interval:
        return Interval(self.lo, self.hi)

    def root_interval(self) -> RootInterval:
        return RootInterval(self.lo, self.hi, 1, self.q)

    def refine(self, width: Fraction) -> None:
        r = refine(None, self.root_interval(), width)
        self.lo, self.hi = r.lo, r.hi

    def _vanishes_here(self, g: UniPoly) -> bool:
        if self.lo == self.hi:
            return g(self.lo) == 0
        return g(self.lo) * g(self.hi) < 0 or count_real_roots(g, self.lo, self.hi) > 0

    def reduce(self, e: UniPoly) -> UniPoly:
        if self.lo == self.hi:
            return UniPoly([e(self.lo)])
        if e.degree() < self.q.degree():
            return e
        return e % self.q

    def sign(self, e: UniPoly) -> int:
        e = self.reduce(e)
        if e.is_zero():
            return 0
        if self.lo == self.hi:
            c = e.coeff(0)
            return (c > 0) - (c < 0)
        g = poly_gcd(e, self.q)
        if g.degree() > 0:
            if self._vanishes_here(g):
                self.q = g.primitive()
                return 0
            self.q = self.q.exact_div(g).primitive()
            e = self.reduce(e)
            if e.is_zero():  # pragma: no cover - gcd split makes this impossible
                return 0
        while True:
            v = e(self.interval())
            s = v.sign()
            if s:
                return s
            self.refine((self.hi - self.lo) / 4)
            if self.lo == self.hi:
                c = e(self.lo)
                return (c > 0) - (c < 0)

    def is_zero(self, e: UniPoly) -> bool:
        return self.sign(e) == 0

    def inverse(self, e: UniPoly) -> UniPoly:
        if self.sign(e) == 0:
            raise ZeroDivisionError("element vanishes at this algebraic number")
        if self.lo == self.hi:
            return UniPoly([1 / e(self.lo)])
        g, u, _ = poly_xgcd(self.reduce(e), self.q)
        assert g.degree() == 0
        return self.reduce(u * (1 / g.coeff(0)))

    def mul(self, a: UniPoly, b: UniPoly) -> UniPoly:
        return self.reduce(a * b)

    # -- polynomials over Q(x) --------------------------------------------
    def trim(self, p: KPoly) -> KPoly:
        p = [self.reduce(c) for c in p]
        while p and self.sign(p[-1]) == 0:
            p.pop()
        return p

    def kpoly_rem(self, a: KPoly, b: KPoly) -> KPoly:
        a = self.trim(a)
        b = self.trim(b)
        if not b:
            raise ZeroDivisionError("division by zero polynomial")
        inv = self.inverse(b[-1])
        db = len(b) - 1
        while len(a) - 1 >= db:
            c = self.mul(a[-1], inv)
            shift = len(a) - 1 - db
            for j, bj in enumerate(b):
                a[shift + j] = self.reduce(a[shift + j] - c * bj)
            a.pop()
            a = self.trim(a)
        return a

    def kpoly_gcd(self, a: KPoly, b: KPoly) -> KPoly:
        a, b = self.trim(a), self.trim(b)
        while b:
            a, b = b, self.kpoly_rem(a, b)
        return a

    def kpoly_derivative(self, p: KPoly) -> KPoly:
        return self.trim([c * j for j, c in enumerate(p)][1:])

    def kpoly_sign_at(self, p: KPoly, x: Fraction) -> int:
        acc = UniPoly()
        for c in reversed(p):
            acc = acc * x + c
        return self.sign(acc)

    def kpoly_root_count(self, p: KPoly, a: Fraction, b: Fraction) -> int:
        """Distinct real roots of ``p(x, t)`` (as a polynomial in ``t``) in ``(a, b]``."""
        p = self.trim(p)
        if len(p) <= 1:
            return 0
        seq = [p, self.kpoly_derivative(p)]
        while len(seq[-1]) > 1:
            r = self.kpoly_rem(seq[-2], seq[-1])
            if not r:
                break
            seq.append([-c for c in r])

        def changes(x: Fraction) -> int:
            n, last = 0, 0
            for q in seq:
                s = self.kpoly_sign_at(q, x)
                if s == 0:
                    continue
                if last and s != last:
                    n += 1
                last = s
            return n

        return changes(a) - changes(b)
