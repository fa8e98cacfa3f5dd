"""Knot diagrams of polynomial knots and their Kauffman bracket / Jones polynomial.

Projecting along one coordinate axis, crossings are the parameter pairs ``s < t``
where the two retained components agree, i.e. the common zeros of their divided
differences. The curve is a long knot; closing it through infinity gives an honest
knot diagram whose PD code is read off the signed Gauss code.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InfiniteZeroSet, IrregularProjection, NonIntegerExponent, TooManyCrossings
from .knotspace import PolyMap3, compose_target_affine
from .polycore import RootInterval, UniPoly, divided_difference, refine
from .polycore.solve import common_real_zeros

MAX_CROSSINGS = 24
CROSSING_WIDTH = Fraction(1, 10**9)
# depth and transversality are retried on ever narrower boxes down to this width
_MIN_WIDTH = Fraction(1, 2**80)

# retained coordinates in cyclic order, so (retained, dropped) is right-handed
_RETAINED = {1: (1, 2), 2: (2, 0), 3: (0, 1)}


class Side(str, Enum):
    S_SIDE = "S_SIDE"
    T_SIDE = "T_SIDE"


@dataclass(frozen=True)
class Crossing:
    s_param: RootInterval
    t_param: RootInterval
    over_strand: Side
    sign: int


@dataclass(frozen=True)
class Visit:
    crossing: int
    over: bool
    sign: int

    def __str__(self) -> str:
        return f"{'O' if self.over else 'U'}{self.crossing + 1}{'+' if self.sign > 0 else '-'}"


@dataclass(frozen=True)
class KnotDiagram:
    """Crossings (numbered by first visit) and the visit sequence along the parameter."""

    crossings: tuple[Crossing, ...] = ()
    traversal: tuple[Visit, ...] = ()

    @classmethod
    def from_crossings(cls, crossings: Iterable[Crossing]) -> KnotDiagram:
        crossings = sorted(crossings, key=lambda c: c.s_param.mid)
        events = []
        for k, c in enumerate(crossings):
            s_over = c.over_strand is Side.S_SIDE
            events.append((c.s_param.mid, Visit(k, s_over, c.sign)))
            events.append((c.t_param.mid, Visit(k, not s_over, c.sign)))
        events.sort(key=lambda e: e[0])
        return cls(tuple(crossings), tuple(v for _, v in events))

    @classmethod
    def from_gauss(cls, visits: Sequence[Visit]) -> KnotDiagram:
        """Diagram with only combinatorial data; crossings are relabelled by first visit."""
        order: dict[int, int] = {}
        out = []
        for v in visits:
            order.setdefault(v.crossing, len(order))
            out.append(Visit(order[v.crossing], v.over, v.sign))
        return cls((), tuple(out))

    @property
    def n_crossings(self) -> int:
        return len(self.traversal) // 2

    def signs(self) -> dict[int, int]:
        return {v.crossing: v.sign for v in self.traversal}

    def pd_code(self) -> list[tuple[int, int, int, int]]:
        """PD code ``X[under_in, ., under_out, .]`` listed counterclockwise, edges ``1..2n``.

        Edge ``k + 1`` enters visit ``k``; the edge entering visit 0 comes in from infinity.
        """
        m = len(self.traversal)
        if m == 0:
            return []
        under: dict[int, int] = {}
        over: dict[int, int] = {}
        for k, v in enumerate(self.traversal):
            (over if v.over else under)[v.crossing] = k
        code = []
        for c in sorted(under):
            u, o = under[c], over[c]
            ui, uo = u + 1, (u + 1) % m + 1
            oi, oo = o + 1, (o + 1) % m + 1
            sign = self.traversal[u].sign
            code.append((ui, oo, uo, oi) if sign > 0 else (ui, oi, uo, oo))
        return code

    def validate(self) -> None:
        seen: dict[int, list[bool]] = {}
        for v in self.traversal:
            seen.setdefault(v.crossing, []).append(v.over)
        for c, flags in seen.items():
            if sorted(flags) != [False, True]:
                raise ValueError(f"crossing {c + 1} is not visited once over and once under")


# -- crossing detection -------------------------------------------------------------


def _interval_of(p: UniPoly, r: RootInterval):
    return p(r.as_interval())


def _certify(pair, depth, si: RootInterval, ti: RootInterval) -> tuple[RootInterval, RootInterval, int, int]:
    """Refine until the depth gap and the tangent cross product have certified signs."""
    p, q = pair
    dp, dq = p.derivative(), q.derivative()
    width = CROSSING_WIDTH
    while True:
        si, ti = refine(None, si, width), refine(None, ti, width)
        gap = _interval_of(depth, ti) - _interval_of(depth, si)
        cross = _interval_of(dp, si) * _interval_of(dq, ti) - _interval_of(dq, si) * _interval_of(dp, ti)
        if gap.excludes_zero() and cross.excludes_zero():
            return si, ti, gap.sign(), cross.sign()
        if width < _MIN_WIDTH:
            what = "depth" if not gap.excludes_zero() else "transversality"
            raise IrregularProjection(f"cannot certify {what} at a crossing near s={float(si.mid):.6g}")
        width /= 2**16


def find_crossings(phi: PolyMap3, drop_axis: int = 1) -> list[Crossing]:
    """Crossings of the projection along ``drop_axis`` (1, 2 or 3); viewer at ``+inf`` on that axis."""
    if drop_axis not in _RETAINED:
        raise ValueError("drop_axis must be 1, 2 or 3")
    comps = phi.components
    i, j = _RETAINED[drop_axis]
    p, q, depth = comps[i], comps[j], comps[drop_axis - 1]
    P, Q = divided_difference(p), divided_difference(q)
    try:
        zeros = common_real_zeros([P, Q], symmetric=True, allow_curve=False)
    except InfiniteZeroSet as exc:
        raise IrregularProjection("projection overlaps itself along an arc") from exc
    pairs = []
    for z in zeros:
        if z.s == z.t:
            raise IrregularProjection(f"projection has a cusp near t={float(z.s.mid):.6g}")
        pairs.append((z.s, z.t) if z.s.mid < z.t.mid else (z.t, z.s))
    if len(pairs) > 1:
        ends = [r for st in pairs for r in st]
        keys = {(r.lo, r.hi) for r in ends}
        if len(keys) < len(ends):
            raise IrregularProjection("three strands meet at one projected point")
    out = []
    for si, ti in pairs:
        si, ti, gap, cross = _certify((p, q), depth, si, ti)
        # gap = sign(depth(t) - depth(s)); the larger depth is over
        over = Side.T_SIDE if gap > 0 else Side.S_SIDE
        # cross = sign det[tangent(s); tangent(t)]; sign = det[over; under]
        sign = cross if over is Side.S_SIDE else -cross
        out.append(Crossing(si, ti, over, sign))
    out.sort(key=lambda c: c.s_param.mid)
    return out


def knot_diagram(phi: PolyMap3, drop_axis: int = 1) -> KnotDiagram:
    return KnotDiagram.from_crossings(find_crossings(phi, drop_axis))


# -- codes ------------------------------------------------------------------------


def gauss_code(D: KnotDiagram) -> str:
    """Signed Gauss code such as ``O1+U2+O3+U1+O2+U3+``; empty for no crossings."""
    return "".join(str(v) for v in KnotDiagram.from_gauss(D.traversal).traversal)


def parse_gauss(code: str) -> list[Visit]:
    import re

    out = []
    for ou, num, sg in re.findall(r"([OU])(\d+)([+-])", code):
        out.append(Visit(int(num) - 1, ou == "O", 1 if sg == "+" else -1))
    return out


def canonical_gauss(code: str) -> str:
    """Lexicographically least relabelled rotation of a Gauss code (closed-knot equivalence)."""
    visits = parse_gauss(code)
    if not visits:
        return ""
    best = None
    for k in range(len(visits)):
        rot = gauss_code(KnotDiagram.from_gauss(visits[k:] + visits[:k]))
        if best is None or rot < best:
            best = rot
    return best


def writhe(D: KnotDiagram) -> int:
    return sum(D.signs().values())


# -- Laurent polynomials -----------------------------------------------------------


@dataclass(frozen=True)
class LaurentPoly:
    """Integer Laurent polynomial in one named variable; ``terms`` maps exponent to coefficient."""

    terms: dict = field(default_factory=dict)
    var: str = "A"

    def __post_init__(self):
        object.__setattr__(self, "terms", {int(e): int(c) for e, c in self.terms.items() if c != 0})

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1, var: str = "A") -> LaurentPoly:
        return cls({exp: coeff}, var)

    @classmethod
    def one(cls, var: str = "A") -> LaurentPoly:
        return cls({0: 1}, var)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly({0: other}, self.var)
        return isinstance(other, LaurentPoly) and self.terms == other.terms and self.var == other.var

    def __hash__(self) -> int:
        return hash((frozenset(self.terms.items()), self.var))

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out, self.var)

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({e: -c for e, c in self.terms.items()}, self.var)

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def __mul__(self, other) -> LaurentPoly:
        if isinstance(other, int):
            return LaurentPoly({e: c * other for e, c in self.terms.items()}, self.var)
        out: dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have inverses")
            ((e, c),) = self.terms.items()
            if abs(c) != 1:
                raise ValueError("only unit monomials have inverses")
            return LaurentPoly({-e * (-k): c ** (-k)}, self.var)
        out = LaurentPoly.one(self.var)
        for _ in range(k):
            out = out * self
        return out

    def invert_variable(self) -> LaurentPoly:
        """Substitute ``x -> 1/x``."""
        return LaurentPoly({-e: c for e, c in self.terms.items()}, self.var)

    def evaluate(self, x) -> Fraction:
        x = Fraction(x)
        return sum((c * x**e for e, c in self.terms.items()), Fraction(0))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            mono = "" if e == 0 else (self.var if e == 1 else f"{self.var}^{e}")
            coeff = str(abs(c)) if (abs(c) != 1 or e == 0) else ""
            body = coeff + ("*" if coeff and mono else "") + mono
            parts.append(("-" if c < 0 else "+") + body)
        s = "".join(parts)
        return s[1:] if s[0] == "+" else s

    __repr__ = __str__


_A = LaurentPoly.monomial(1)
_DELTA = LaurentPoly({2: -1, -2: -1})


# -- bracket --------------------------------------------------------------------


def _join(ends: dict, x: int, y: int) -> tuple[dict, int]:
    """Add an arc between edge labels ``x`` and ``y``; return new ends and closed loops."""
    if x == y:
        return ends, 1
    if ends.get(x) == y:
        out = dict(ends)
        del out[x], out[y]
        return out, 1
    out = dict(ends)
    u = out.pop(x) if x in out else x
    v = out.pop(y) if y in out else y
    out.pop(u, None)
    out.pop(v, None)
    out[u], out[v] = v, u
    return out, 0


def bracket_from_pd(pd: Sequence[Sequence[int]]) -> LaurentPoly:
    """Kauffman bracket by a frontier sweep over the crossings in the given order.

    ``X[a, b, c, d]`` smooths to ``A <ab><cd> + A^-1 <ad><bc>``; each closed loop
    contributes a factor ``delta = -A^2 - A^-2`` with one loop divided out.
    """
    if not pd:
        return LaurentPoly.one()
    # state: (frozen ends map, loops) -> coefficient polynomial in A
    states: dict = {(frozenset(), 0): LaurentPoly.one()}
    for a, b, c, d in pd:
        nxt: dict = {}
        for (ends_key, loops), coeff in states.items():
            ends = dict(ends_key)
            for weight, arcs in ((1, ((a, b), (c, d))), (-1, ((a, d), (b, c)))):
                e, closed = ends, 0
                for x, y in arcs:
                    e, k = _join(e, x, y)
                    closed += k
                key = (frozenset(e.items()), loops + closed)
                term = coeff * LaurentPoly.monomial(weight)
                nxt[key] = nxt[key] + term if key in nxt else term
        states = nxt
    total = LaurentPoly({})
    for (ends_key, loops), coeff in states.items():
        assert not ends_key, "open strands left after all crossings"
        total = total + coeff * _DELTA ** (loops - 1)
    return total


def kauffman_bracket(D: KnotDiagram) -> LaurentPoly:
    if D.n_crossings > MAX_CROSSINGS:
        raise TooManyCrossings(f"{D.n_crossings} crossings exceed the limit of {MAX_CROSSINGS}")
    return bracket_from_pd(D.pd_code())


def jones_from_bracket(bracket: LaurentPoly, w: int) -> LaurentPoly:
    """``V = (-A^3)^-w <D>`` rewritten in ``q = A^-4``."""
    norm = LaurentPoly.monomial(-3 * w, (-1) ** (w % 2)) * bracket
    out = {}
    for e, c in norm.terms.items():
        if e % 4:
            raise NonIntegerExponent(f"A-exponent {e} is not a multiple of 4")
        out[-e // 4] = c
    return LaurentPoly(out, "q")


def jones(D: KnotDiagram) -> LaurentPoly:
    return jones_from_bracket(kauffman_bracket(D), writhe(D))


def determinant(D: KnotDiagram) -> int:
    return int(abs(jones(D).evaluate(-1)))


# -- projections robust to degeneracy ------------------------------------------------


def rational_rotation(rng: random.Random, spread: int = 3) -> list[list[Fraction]]:
    """An exact rotation matrix from an integer quaternion, close to the identity."""
    a = rng.randint(8, 16)
    b, c, d = (rng.randint(-spread, spread) for _ in range(3))
    n = a * a + b * b + c * c + d * d
    m = [
        [a * a + b * b - c * c - d * d, 2 * (b * c - a * d), 2 * (b * d + a * c)],
        [2 * (b * c + a * d), a * a - b * b + c * c - d * d, 2 * (c * d - a * b)],
        [2 * (b * d - a * c), 2 * (c * d + a * b), a * a - b * b - c * c + d * d],
    ]
    return [[Fraction(x, n) for x in row] for row in m]


def seeded_rng(seed: int | None = None) -> random.Random:
    if seed is None:
        seed = int(os.environ.get("POLYKNOT_SEED", "0"))
    return random.Random(seed)


def robust_diagram(phi: PolyMap3, drop_axis: int = 1, *, attempts: int = 8, rng: random.Random | None = None) -> KnotDiagram:
    """Diagram along ``drop_axis``; on an irregular projection retry after small random rotations."""
    try:
        return knot_diagram(phi, drop_axis)
    except IrregularProjection as first:
        rng = rng or seeded_rng()
        for _ in range(attempts):
            try:
                return knot_diagram(compose_target_affine(phi, rational_rotation(rng)), drop_axis)
            except IrregularProjection:
                continue
        raise first


def invariant_constancy_check(p, n: int, d: int | None = None, *, drop_axis: int = 1) -> bool:
    """``True`` iff the Jones polynomial is the same at all ``n`` samples of the path ``p``."""
    from .isotopy import sample_parameters

    rng = seeded_rng()
    values = set()
    for s in sample_parameters(n):
        values.add(jones(robust_diagram(p(s), drop_axis, rng=rng)))
        if len(values) > 1:
            return False
    return True
