"""Polynomial maps ``t -> (f(t), g(t), h(t))``: embedding decision, space classification,
sign classes, affine actions and the coefficient chart.

A map is an embedding iff the divided differences ``F, G, H`` of its components have
no common real zero ``(s, t)``: an off-diagonal zero is a double point, a diagonal
zero is a vanishing derivative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.ndimage import minimum_filter
from scipy.optimize import least_squares

from .errors import NotInAd, NotInCd, SingularMatrix, ZeroScale, ZeroVector
from .polycore import BiPoly, RootInterval, UniPoly, as_fraction, divided_difference, refine, sturm_isolate
from .polycore.solve import common_real_zeros, exact_point

Matrix3 = Sequence[Sequence]


@dataclass(frozen=True)
class DegreeSequence:
    d1: int | float
    d2: int | float
    d3: int | float

    def as_tuple(self) -> tuple:
        return (self.d1, self.d2, self.d3)


@dataclass(frozen=True)
class PolyMap3:
    """A polynomial map from the line to 3-space."""

    f: UniPoly
    g: UniPoly
    h: UniPoly

    @classmethod
    def from_coeffs(cls, f: Sequence, g: Sequence, h: Sequence) -> PolyMap3:
        return cls(UniPoly(f), UniPoly(g), UniPoly(h))

    @property
    def components(self) -> tuple[UniPoly, UniPoly, UniPoly]:
        return (self.f, self.g, self.h)

    def degree_sequence(self) -> DegreeSequence:
        return DegreeSequence(self.f.degree(), self.g.degree(), self.h.degree())

    def degree(self) -> int | float:
        return max(self.degree_sequence().as_tuple())

    def derivative(self) -> PolyMap3:
        return PolyMap3(self.f.derivative(), self.g.derivative(), self.h.derivative())

    def __call__(self, t) -> tuple:
        if not isinstance(t, Fraction) and not hasattr(t, "lo"):
            t = as_fraction(t)
        return tuple(p(t) for p in self.components)

    def eval_float(self, t: float) -> tuple[float, float, float]:
        return tuple(p.eval_float(t) for p in self.components)

    def map_components(self, fn) -> PolyMap3:
        return PolyMap3(*(fn(p) for p in self.components))

    def __neg__(self) -> PolyMap3:
        return self.map_components(lambda p: -p)

    def __add__(self, other: PolyMap3) -> PolyMap3:
        return PolyMap3(self.f + other.f, self.g + other.g, self.h + other.h)

    def __sub__(self, other: PolyMap3) -> PolyMap3:
        return self + (-other)

    def scale(self, c) -> PolyMap3:
        return self.map_components(lambda p: p * as_fraction(c))

    def divided_differences(self) -> tuple[BiPoly, BiPoly, BiPoly]:
        return tuple(divided_difference(p) for p in self.components)

    def __str__(self) -> str:
        return f"({self.f}, {self.g}, {self.h})"


# -- embedding --------------------------------------------------------------


class WitnessKind(str, Enum):
    SELF_INTERSECTION = "SELF_INTERSECTION"
    CRITICAL_POINT = "CRITICAL_POINT"


@dataclass(frozen=True)
class EmbeddingWitness:
    """Parameters where injectivity or immersion fails; ``s0 == t0`` for critical points."""

    kind: WitnessKind
    s0: RootInterval
    t0: RootInterval

    def refine(self, width) -> EmbeddingWitness:
        width = as_fraction(width)
        s0 = refine(None, self.s0, width)
        t0 = s0 if self.kind is WitnessKind.CRITICAL_POINT else refine(None, self.t0, width)
        return EmbeddingWitness(self.kind, s0, t0)

    def midpoint(self) -> tuple[Fraction, Fraction]:
        return self.s0.mid, self.t0.mid

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "s": [str(self.s0.lo), str(self.s0.hi)],
            "t": [str(self.t0.lo), str(self.t0.hi)],
            "s_approx": float(self.s0.mid),
            "t_approx": float(self.t0.mid),
        }


@dataclass(frozen=True)
class EmbeddingResult:
    is_embedding: bool
    witness: EmbeddingWitness | None = None

    def __bool__(self) -> bool:
        return self.is_embedding


def is_embedding(phi: PolyMap3) -> EmbeddingResult:
    """Exact decision whether ``phi`` is injective with nowhere-vanishing derivative."""
    moving = [p for p in phi.components if not p.is_constant()]
    if not moving:
        z = exact_point(Fraction(0))
        return EmbeddingResult(False, EmbeddingWitness(WitnessKind.CRITICAL_POINT, z, z))
    if len(moving) == 1:
        crit = sturm_isolate(moving[0].derivative()) if moving[0].degree() > 1 else []
        if not crit:
            return EmbeddingResult(True)
        return EmbeddingResult(False, EmbeddingWitness(WitnessKind.CRITICAL_POINT, crit[0], crit[0]))
    dds = [divided_difference(p) for p in moving]
    zeros = common_real_zeros(dds, symmetric=True, first=True)
    if not zeros:
        return EmbeddingResult(True)
    z = zeros[0]
    s0, t0 = z.s, z.t
    if s0 == t0:
        return EmbeddingResult(False, EmbeddingWitness(WitnessKind.CRITICAL_POINT, s0, t0))
    if s0.mid > t0.mid:
        s0, t0 = t0, s0
    return EmbeddingResult(False, EmbeddingWitness(WitnessKind.SELF_INTERSECTION, s0, t0))


def embedding_oracle_numeric(phi: PolyMap3, grid_n: int = 400, box=20, *, max_starts: int = 40) -> bool:
    """Floating-point brute force: ``False`` only when a near-exact zero of ``(F, G, H)`` is found.

    The quotient ``|phi(s) - phi(t)| / |s - t|`` extends to the diagonal as ``|phi'(t)|``,
    so one norm on the grid covers both failure modes. Grid minima are polished with
    a least-squares solve and accepted only if the residual is tiny relative to the
    coefficient scale.
    """
    if grid_n < 100:
        raise ValueError("grid_n must be at least 100")
    box = float(box)
    dds = phi.divided_differences()
    if all(p.is_zero() for p in dds):
        return False
    scale = max((abs(float(c)) for p in dds for c in p.terms.values()), default=1.0)
    polys = [[(i, j, float(c)) for (i, j), c in p.terms.items()] for p in dds if not p.is_zero()]

    def resid(x: np.ndarray) -> np.ndarray:
        s, t = x
        return np.array([sum(c * s**i * t**j for i, j, c in p) for p in polys]) / scale

    def jac(x: np.ndarray) -> np.ndarray:
        s, t = x
        rows = []
        for p in polys:
            ds = sum(c * i * s ** (i - 1) * t**j for i, j, c in p if i)
            dt = sum(c * j * s**i * t ** (j - 1) for i, j, c in p if j)
            rows.append([ds, dt])
        return np.array(rows) / scale

    axis = np.linspace(-box, box, grid_n)
    S, T = np.meshgrid(axis, axis, indexing="ij")
    top = max(max(i for p in polys for i, _, _ in p), max(j for p in polys for _, j, _ in p))
    s_pow = [np.ones_like(S)]
    t_pow = [np.ones_like(T)]
    for _ in range(top):
        s_pow.append(s_pow[-1] * S)
        t_pow.append(t_pow[-1] * T)
    # each component normalised by its size on the box so no single one dominates
    vals = np.zeros_like(S)
    for p in polys:
        v = np.zeros_like(S)
        for i, j, c in p:
            v += c * s_pow[i] * t_pow[j]
        vals += (v / (np.max(np.abs(v)) + 1e-300)) ** 2
    local = vals == minimum_filter(vals, size=5, mode="nearest")
    idx = np.argwhere(local)
    order = np.argsort(vals[local])[:max_starts]
    for i, j in idx[order]:
        x0 = np.array([S[i, j], T[i, j]])
        sol = least_squares(resid, x0, jac=jac, bounds=([-box, -box], [box, box]), xtol=1e-15, ftol=1e-15, gtol=1e-15)
        if np.max(np.abs(resid(sol.x))) < 1e-9:
            return False
    return True


# -- spaces -----------------------------------------------------------------


@dataclass(frozen=True)
class SpaceMembership:
    d: int
    in_A: bool
    in_B: bool
    in_C: bool
    is_embedding: bool
    in_O: bool
    in_P: bool
    in_Q: bool

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def _degree_flags(phi: PolyMap3, d: int) -> tuple[bool, bool, bool]:
    df, dg, dh = phi.degree_sequence().as_tuple()
    in_a = df <= d - 2 and dg <= d - 1 and dh <= d
    in_b = df < dg < dh <= d
    in_c = df == d - 2 and dg == d - 1 and dh == d
    return in_a, in_b, in_c


def classify(phi: PolyMap3, d: int, *, embedding: bool | None = None) -> SpaceMembership:
    """Membership in ``A_d, B_d, C_d`` and their embedding subsets ``O_d, P_d, Q_d``."""
    if d < 2:
        raise ValueError("d must be at least 2")
    in_a, in_b, in_c = _degree_flags(phi, d)
    emb = is_embedding(phi).is_embedding if embedding is None else embedding
    return SpaceMembership(d, in_a, in_b, in_c, emb, in_a and emb, in_b and emb, in_c and emb)


@dataclass(frozen=True)
class SignClass:
    e1: int
    e2: int
    e3: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.e1, self.e2, self.e3)


def sign_class(phi: PolyMap3, d: int) -> SignClass:
    """Signs of the leading coefficients ``a_{d-2}, b_{d-1}, c_d``."""
    if not _degree_flags(phi, d)[2]:
        raise NotInCd(f"degree sequence {phi.degree_sequence().as_tuple()} is not ({d - 2}, {d - 1}, {d})")
    return SignClass(*(1 if p.lc() > 0 else -1 for p in phi.components))


# -- affine actions -------------------------------------------------------


def mirror(phi: PolyMap3) -> PolyMap3:
    """``(f, -g, -h)``: flips the last two leading-coefficient signs."""
    return PolyMap3(phi.f, -phi.g, -phi.h)


def compose_source_affine(phi: PolyMap3, alpha, beta) -> PolyMap3:
    """``t -> phi(alpha t + beta)``."""
    alpha, beta = as_fraction(alpha), as_fraction(beta)
    if alpha == 0:
        raise ZeroScale("alpha must be nonzero")
    return phi.map_components(lambda p: p.shift_scale(alpha, beta))


def det3(m: Matrix3) -> Fraction:
    (a, b, c), (d, e, f), (g, h, i) = [[as_fraction(x) for x in row] for row in m]
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def compose_target_affine(phi: PolyMap3, M: Matrix3, v: Sequence = (0, 0, 0)) -> PolyMap3:
    """``t -> M phi(t) + v`` for a nonsingular rational matrix ``M``."""
    if det3(M) == 0:
        raise SingularMatrix("matrix is singular")
    comps = phi.components
    out = []
    for row, vi in zip(M, v):
        acc = UniPoly([as_fraction(vi)])
        for m, p in zip(row, comps):
            acc = acc + p * as_fraction(m)
        out.append(acc)
    return PolyMap3(*out)


# -- coefficient chart and metric ---------------------------------------------


def coeff_vector(phi: PolyMap3, d: int) -> list[Fraction]:
    """``(a_0..a_{d-2}, b_0..b_{d-1}, c_0..c_d)``, zero-padded; length ``3d``."""
    if not _degree_flags(phi, d)[0]:
        raise NotInAd(f"degree sequence {phi.degree_sequence().as_tuple()} exceeds caps for d={d}")
    out: list[Fraction] = []
    for p, n in zip(phi.components, (d - 1, d, d + 1)):
        out.extend(p.coeff(i) for i in range(n))
    return out


def from_coeff_vector(vec: Sequence, d: int) -> PolyMap3:
    vec = [as_fraction(x) for x in vec]
    if len(vec) != 3 * d:
        raise ValueError(f"expected {3 * d} coordinates, got {len(vec)}")
    return PolyMap3(UniPoly(vec[: d - 1]), UniPoly(vec[d - 1 : 2 * d - 1]), UniPoly(vec[2 * d - 1 :]))


def metric_rho_squared(phi: PolyMap3, psi: PolyMap3, d: int) -> Fraction:
    return sum(((a - b) ** 2 for a, b in zip(coeff_vector(phi, d), coeff_vector(psi, d))), Fraction(0))


def metric_rho(phi: PolyMap3, psi: PolyMap3, d: int) -> float:
    """Euclidean distance of coefficient vectors; compare via ``metric_rho_squared`` for exactness."""
    return math.sqrt(metric_rho_squared(phi, psi, d))


def rho_at_most(phi: PolyMap3, psi: PolyMap3, d: int, bound) -> bool:
    """Exact test ``rho(phi, psi) <= bound`` for a nonnegative rational bound."""
    bound = as_fraction(bound)
    return bound >= 0 and metric_rho_squared(phi, psi, d) <= bound * bound


# -- tails --------------------------------------------------------------------


def _ratio_to_float(num: Fraction, den: Fraction) -> float:
    return float(Fraction(num) / Fraction(den))


def tail_angle(phi: PolyMap3, t) -> float:
    """Angle between the position ``phi(t)`` and the velocity ``phi'(t)``."""
    t = as_fraction(t)
    p = phi(t)
    v = phi.derivative()(t)
    np_, nv = sum(x * x for x in p), sum(x * x for x in v)
    if np_ == 0 or nv == 0:
        raise ZeroVector("position or velocity vanishes")
    dot = sum(a * b for a, b in zip(p, v))
    # cos^2 exactly, then the sign; avoids overflow for huge |t|
    cos2 = _ratio_to_float(dot * dot, np_ * nv)
    c = math.sqrt(min(cos2, 1.0))
    return math.acos(c if dot >= 0 else -c)


FIGURE_EIGHT = PolyMap3.from_coeffs(
    ["51.84", "-164.016", "-31.92", "8.5", "1"],
    ["-50.2762", "160.508", "32.439", "-29.11", "-1.5", "1"],
    ["0", "-35.8427", "187.195", "11.2832", "-19.1167", "-0.48", "0.5"],
)
