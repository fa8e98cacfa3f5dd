"""Exact bivariate polynomials in ``(s, t)`` and divided differences."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .interval import Interval
from .uni import NEG_INF, Rational, UniPoly, as_fraction


class BiPoly:
    """Sparse polynomial ``sum c[i, j] * s**i * t**j`` with exact rational coefficients.

    Zero coefficients are never stored.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], Rational | str] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        out: dict[tuple[int, int], Fraction] = {}
        for (i, j), c in items:
            c = as_fraction(c)
            if c != 0:
                out[(int(i), int(j))] = out.get((int(i), int(j)), Fraction(0)) + c
                if out[(int(i), int(j))] == 0:
                    del out[(int(i), int(j))]
        self.terms: dict[tuple[int, int], Fraction] = out
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[tuple[int, int], Fraction]) -> BiPoly:
        p = cls.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def s(cls) -> BiPoly:
        return cls({(1, 0): 1})

    @classmethod
    def t(cls) -> BiPoly:
        return cls({(0, 1): 1})

    @classmethod
    def constant(cls, c: Rational) -> BiPoly:
        return cls({(0, 0): c})

    @classmethod
    def from_t_coeffs(cls, coeffs: Iterable[UniPoly]) -> BiPoly:
        """Build from coefficients (polynomials in ``s``) of increasing powers of ``t``."""
        out = {}
        for j, cj in enumerate(coeffs):
            for i, c in enumerate(cj.coeffs):
                if c != 0:
                    out[(i, j)] = c
        return cls._raw(out)

    @classmethod
    def from_uni(cls, p: UniPoly, var: str = "t") -> BiPoly:
        if var == "t":
            return cls._raw({(0, j): c for j, c in enumerate(p.coeffs) if c != 0})
        return cls._raw({(i, 0): c for i, c in enumerate(p.coeffs) if c != 0})

    # -- queries -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(k == (0, 0) for k in self.terms)

    def total_degree(self) -> int | float:
        return max((i + j for i, j in self.terms), default=NEG_INF)

    def degree_in(self, var: str) -> int | float:
        k = 0 if var == "s" else 1
        return max((m[k] for m in self.terms), default=NEG_INF)

    def coeff(self, i: int, j: int) -> Fraction:
        return self.terms.get((i, j), Fraction(0))

    def is_symmetric(self) -> bool:
        return all(self.terms.get((j, i)) == c for (i, j), c in self.terms.items())

    def __eq__(self, other: object) -> bool:
        if isinstance(other, BiPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == BiPoly.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {v}" for k, v in sorted(self.terms.items()))
        return f"BiPoly({{{body}}})"

    # -- arithmetic ----------------------------------------------------
    def __neg__(self) -> BiPoly:
        return BiPoly._raw({k: -c for k, c in self.terms.items()})

    def __add__(self, other: BiPoly | Rational) -> BiPoly:
        if not isinstance(other, BiPoly):
            other = BiPoly.constant(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v == 0:
                out.pop(k, None)
            else:
                out[k] = v
        return BiPoly._raw(out)

    __radd__ = __add__

    def __sub__(self, other: BiPoly | Rational) -> BiPoly:
        if not isinstance(other, BiPoly):
            other = BiPoly.constant(other)
        return self + (-other)

    def __mul__(self, other: BiPoly | Rational) -> BiPoly:
        if not isinstance(other, BiPoly):
            c = as_fraction(other)
            if c == 0:
                return BiPoly._raw({})
            return BiPoly._raw({k: v * c for k, v in self.terms.items()})
        out: dict[tuple[int, int], Fraction] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + c1 * c2
        return BiPoly._raw({k: v for k, v in out.items() if v != 0})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> BiPoly:
        out = BiPoly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def swap(self) -> BiPoly:
        """Exchange the roles of ``s`` and ``t``."""
        return BiPoly._raw({(j, i): c for (i, j), c in self.terms.items()})

    def diff(self, var: str) -> BiPoly:
        out = {}
        for (i, j), c in self.terms.items():
            if var == "s" and i:
                out[(i - 1, j)] = c * i
            elif var == "t" and j:
                out[(i, j - 1)] = c * j
        return BiPoly._raw(out)

    # -- views ---------------------------------------------------------
    def t_coeffs(self) -> list[UniPoly]:
        """Coefficients of ``t**0, t**1, ...`` as polynomials in ``s``."""
        if not self.terms:
            return []
        dj = max(j for _, j in self.terms)
        cols: list[dict[int, Fraction]] = [dict() for _ in range(dj + 1)]
        for (i, j), c in self.terms.items():
            cols[j][i] = c
        out = []
        for col in cols:
            if col:
                n = max(col) + 1
                out.append(UniPoly._raw(tuple(col.get(i, Fraction(0)) for i in range(n))))
            else:
                out.append(UniPoly._raw(()))
        return out

    def s_coeffs(self) -> list[UniPoly]:
        return self.swap().t_coeffs()

    def at_s(self, s0: Rational) -> UniPoly:
        """Substitute a rational for ``s``; result is a polynomial in ``t``."""
        s0 = as_fraction(s0)
        return UniPoly([c(s0) for c in self.t_coeffs()])

    def at_t(self, t0: Rational) -> UniPoly:
        t0 = as_fraction(t0)
        return UniPoly([c(t0) for c in self.s_coeffs()])

    def __call__(self, s, t):
        """Exact value at rationals; also accepts :class:`Interval` arguments."""
        if isinstance(s, Interval) or isinstance(t, Interval):
            return self.eval_box(s, t)
        return eval_bi(self, s, t)

    def eval_box(self, s, t) -> Interval:
        if not isinstance(s, Interval):
            s = Interval.point(s)
        if not isinstance(t, Interval):
            t = Interval.point(t)
        acc = Interval.point(0)
        for cj in reversed(self.t_coeffs()):
            acc = acc * t + cj(s)
        return acc

    def eval_float(self, s: float, t: float) -> float:
        return sum(float(c) * s**i * t**j for (i, j), c in self.terms.items())

    def scale_to_integer(self) -> tuple[Fraction, BiPoly]:
        """Return ``(c, q)`` with ``self == c * q`` and ``q`` integral, content 1."""
        import math

        if not self.terms:
            return Fraction(0), self
        den = 1
        for c in self.terms.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = {k: int(c * den) for k, c in self.terms.items()}
        g = 0
        for v in ints.values():
            g = math.gcd(g, v)
        return Fraction(g, den), BiPoly._raw({k: Fraction(v // g) for k, v in ints.items()})


def eval_bi(p: BiPoly, s: Rational, t: Rational) -> Fraction:
    """Exact value of ``p`` at rational ``(s, t)``."""
    s, t = as_fraction(s), as_fraction(t)
    total = Fraction(0)
    for (i, j), c in p.terms.items():
        total += c * s**i * t**j
    return total


def divided_difference(p: UniPoly) -> BiPoly:
    """``(p(s) - p(t)) / (s - t)`` as a polynomial; its diagonal is ``p'``.

    The coefficient ``a_k`` of ``t**k`` contributes ``a_k * (s**(k-1) + s**(k-2) t + ... + t**(k-1))``.
    """
    out: dict[tuple[int, int], Fraction] = {}
    for k, a in enumerate(p.coeffs):
        if k == 0 or a == 0:
            continue
        for i in range(k):
            key = (i, k - 1 - i)
            out[key] = out.get(key, 0) + a
    return BiPoly._raw({k: v for k, v in out.items() if v != 0})
