"""Sylvester resultants of bivariate polynomials.

The determinant is a polynomial in the surviving variable. It is computed by
evaluating the integer Sylvester matrix at ``deg + 1`` integer nodes (fraction-free
Bareiss elimination on each), then interpolating exactly.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import DegenerateInput, IdenticallyZeroResultant
from .bi import BiPoly
from .uni import UniPoly


def bareiss_det(m: list[list[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (akk * rowi[j] - aik * rowk[j]) // prev
            rowi[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def sylvester_matrix(a: list, b: list) -> list[list]:
    """Sylvester matrix of coefficient lists given in increasing-degree order."""
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    zero = 0 * a[0]
    rows = []
    ra, rb = list(reversed(a)), list(reversed(b))
    for i in range(n):
        rows.append([zero] * i + ra + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + rb + [zero] * (size - n - 1 - i))
    return rows


def _interpolate(xs: list[int], ys: list[int]) -> UniPoly:
    """Newton interpolation through integer nodes, returned in monomial form."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = UniPoly([coef[-1]])
    for i in range(n - 2, -1, -1):
        poly = poly * UniPoly([-xs[i], 1]) + coef[i]
    return poly


def _nodes(count: int) -> list[int]:
    out, k = [0], 1
    while len(out) < count:
        out.append(k)
        if len(out) < count:
            out.append(-k)
        k += 1
    return out


def resultant_eliminate(p: BiPoly, q: BiPoly, eliminate: str = "t") -> UniPoly:
    """Sylvester resultant of ``p`` and ``q`` with respect to ``eliminate``.

    The result is a polynomial in the other variable. A zero result (the inputs
    share a factor of positive degree in the eliminated variable) raises
    :class:`IdenticallyZeroResultant`.
    """
    if eliminate not in ("s", "t"):
        raise ValueError("eliminate must be 's' or 't'")
    if p.is_zero() or q.is_zero():
        raise DegenerateInput("resultant of a zero polynomial")
    if eliminate == "s":
        p, q = p.swap(), q.swap()
    m, n = p.degree_in("t"), q.degree_in("t")
    pa, qa = p.t_coeffs(), q.t_coeffs()
    if m == 0 and n == 0:
        return UniPoly([1])
    if m == 0:
        return pa[0] ** n
    if n == 0:
        return qa[0] ** m

    cp, pi = p.scale_to_integer()
    cq, qi = q.scale_to_integer()
    ai = [[int(c) for c in u.coeffs] for u in pi.t_coeffs()]
    bi = [[int(c) for c in u.coeffs] for u in qi.t_coeffs()]
    ds_a = max(len(u) for u in ai) - 1
    ds_b = max(len(u) for u in bi) - 1
    bound = max(0, m * ds_b + n * ds_a)
    # total-degree Bezout bound is often sharper
    bound = min(bound, int(p.total_degree()) * int(q.total_degree()))

    def ev(coeffs: list[int], x: int) -> int:
        acc = 0
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc

    xs = _nodes(bound + 1)
    ys = []
    for x in xs:
        av = [ev(c, x) for c in ai]
        bv = [ev(c, x) for c in bi]
        ys.append(bareiss_det(sylvester_matrix(av, bv)))
    res = _interpolate(xs, ys) * (cp**n * cq**m)
    if res.is_zero():
        raise IdenticallyZeroResultant("inputs share a common factor")
    return res
