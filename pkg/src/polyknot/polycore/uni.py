"""Exact univariate polynomials over the rationals."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]

#: Degree of the zero polynomial. Compares below every integer.
NEG_INF = float("-inf")


def as_fraction(x: Rational | str) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def _trim(coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class UniPoly:
    """Polynomial in one variable with exact rational coefficients.

    ``coeffs[i]`` is the coefficient of ``t**i``. The stored tuple never ends in a
    zero, so the zero polynomial has an empty tuple.
    """

    __slots__ = ("coeffs", "_hash", "_sints")

    def __init__(self, coeffs: Iterable[Rational | str] = ()):
        self.coeffs: tuple[Fraction, ...] = _trim([as_fraction(c) for c in coeffs])
        self._hash = None
        self._sints = None

    @classmethod
    def _raw(cls, coeffs: tuple[Fraction, ...]) -> UniPoly:
        p = cls.__new__(cls)
        p.coeffs = coeffs
        p._hash = None
        p._sints = None
        return p

    @classmethod
    def constant(cls, c: Rational) -> UniPoly:
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c: Rational = 1) -> UniPoly:
        return cls([0] * k + [c])

    @classmethod
    def var(cls) -> UniPoly:
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Iterable[Rational]) -> UniPoly:
        p = cls([1])
        for r in roots:
            p = p * cls([-as_fraction(r), 1])
        return p

    # -- basic queries -------------------------------------------------
    def degree(self) -> int | float:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _trim([Fraction(other)])
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(("UniPoly", self.coeffs))
        return self._hash

    def __repr__(self) -> str:
        return f"UniPoly({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{c}{'*' if mono else ''}{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    # -- arithmetic ----------------------------------------------------
    def __neg__(self) -> UniPoly:
        return UniPoly._raw(tuple(-c for c in self.coeffs))

    def __add__(self, other: UniPoly | Rational) -> UniPoly:
        if not isinstance(other, UniPoly):
            other = UniPoly([other])
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly._raw(_trim(out))

    __radd__ = __add__

    def __sub__(self, other: UniPoly | Rational) -> UniPoly:
        if not isinstance(other, UniPoly):
            other = UniPoly([other])
        return self + (-other)

    def __rsub__(self, other: Rational) -> UniPoly:
        return UniPoly([other]) - self

    def __mul__(self, other: UniPoly | Rational) -> UniPoly:
        if not isinstance(other, UniPoly):
            c = as_fraction(other)
            if c == 0:
                return UniPoly._raw(())
            return UniPoly._raw(tuple(x * c for x in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly._raw(())
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return UniPoly._raw(_trim(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> UniPoly:
        if k < 0:
            raise ValueError("negative power")
        result, base = UniPoly([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: Rational) -> UniPoly:
        return self * c

    def divmod(self, other: UniPoly) -> tuple[UniPoly, UniPoly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = len(other.coeffs) - 1
        lc = other.coeffs[-1]
        if len(r) - 1 < db:
            return UniPoly._raw(()), self
        q = [Fraction(0)] * (len(r) - db)
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k]
            if c == 0:
                continue
            c = c / lc
            q[k - db] = c
            for j, y in enumerate(other.coeffs):
                r[k - db + j] -= c * y
        return UniPoly._raw(_trim(q)), UniPoly._raw(_trim(r[:db]))

    def __floordiv__(self, other: UniPoly) -> UniPoly:
        return self.divmod(other)[0]

    def __mod__(self, other: UniPoly) -> UniPoly:
        return self.divmod(other)[1]

    def exact_div(self, other: UniPoly) -> UniPoly:
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def derivative(self) -> UniPoly:
        return UniPoly._raw(_trim([c * i for i, c in enumerate(self.coeffs)][1:]))

    def monic(self) -> UniPoly:
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        return UniPoly._raw(tuple(c / lc for c in self.coeffs))

    # -- evaluation ----------------------------------------------------
    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc if self.coeffs else Fraction(0) * 0

    def eval_float(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    def sign_at(self, x: Fraction) -> int:
        """Sign of ``p(x)``, computed in integers on a positive multiple of ``p``."""
        if self._sints is None:
            c, ints = self.integer_primitive()
            self._sints = ints if c > 0 else [-v for v in ints]
        ints = self._sints
        if not ints:
            return 0
        x = Fraction(x)
        a, b = x.numerator, x.denominator
        acc, bpow = ints[-1], 1
        for c in reversed(ints[:-1]):
            bpow *= b
            acc = acc * a + c * bpow
        return (acc > 0) - (acc < 0)

    def compose(self, inner: UniPoly) -> UniPoly:
        acc = UniPoly._raw(())
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def shift_scale(self, alpha: Rational, beta: Rational) -> UniPoly:
        """Return ``p(alpha*t + beta)``."""
        return self.compose(UniPoly([beta, alpha]))

    # -- integer normal form ---------------------------------------------
    def integer_primitive(self) -> tuple[Fraction, list[int]]:
        """Return ``(c, ints)`` with ``self == c * ints`` and ``ints`` primitive, lc > 0."""
        if not self.coeffs:
            return Fraction(0), []
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), [v // g for v in ints]

    def primitive(self) -> UniPoly:
        return UniPoly(self.integer_primitive()[1]) if self.coeffs else self


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
        if not b.is_zero():
            b = b.primitive()
    return a.monic()


def poly_xgcd(a: UniPoly, b: UniPoly) -> tuple[UniPoly, UniPoly, UniPoly]:
    """Return ``(g, u, v)`` with ``u*a + v*b == g`` and ``g`` monic."""
    r0, r1 = a, b
    s0, s1 = UniPoly([1]), UniPoly()
    t0, t1 = UniPoly(), UniPoly([1])
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = 1 / r0.lc()
    return r0 * inv, s0 * inv, t0 * inv


def squarefree_part(p: UniPoly) -> UniPoly:
    if p.degree() <= 0:
        return p.primitive()
    g = poly_gcd(p, p.derivative())
    return p.exact_div(g).primitive()


def squarefree_decomposition(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: ``p = c * prod(f_i ** i)`` with each ``f_i`` squarefree, coprime."""
    out: list[tuple[UniPoly, int]] = []
    if p.degree() <= 0:
        return out
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p.exact_div(a)
    c = dp.exact_div(a)
    d = c - b.derivative()
    i = 1
    while b.degree() > 0:
        a = poly_gcd(b, d)
        if a.degree() > 0:
            out.append((a.primitive(), i))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        i += 1
    return out


def cauchy_bound(p: UniPoly) -> Fraction:
    """``1 + max |c_i / c_deg|``: every real root lies strictly inside ``(-B, B)``."""
    lc = p.lc()
    return 1 + max((abs(c / lc) for c in p.coeffs[:-1]), default=Fraction(0))
