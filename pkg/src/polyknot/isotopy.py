"""One-parameter families of polynomial maps and their sample-based validation.

A :class:`CoefficientPath` is a closed-form family ``s -> phi_s`` for ``s`` in ``[0, 1]``
whose coefficients are polynomial (or, for retractions, algebraic) in ``s``.
Sampling it and running the exact embedding check at each sample certifies the
path at those samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Sequence

from .errors import (
    DegenerateLinearPart,
    EndpointMismatch,
    NonpositiveScale,
    NotInCd,
    PreconditionB1Zero,
)
from .knotspace import (
    EmbeddingWitness,
    PolyMap3,
    SpaceMembership,
    classify,
    compose_source_affine,
    is_embedding,
    rho_at_most,
)
from .polycore import UniPoly, as_fraction, divided_difference, refine, sturm_isolate
from .polycore.algebraic import RealAlgebraic
from .polycore.solve import _exact_fibre_test, common_real_zeros


class PathKind(str, Enum):
    SHRINK = "SHRINK"
    RETRACT = "RETRACT"
    REPARAM = "REPARAM"
    TARGET_AFFINE = "TARGET_AFFINE"
    LAMBDA_TRANSLATE = "LAMBDA_TRANSLATE"
    GAMMA_SHRINK = "GAMMA_SHRINK"
    OMEGA_BRIDGE = "OMEGA_BRIDGE"
    LINEAR_INTERP = "LINEAR_INTERP"
    CONCAT = "CONCAT"


def _scaled_powers(p: UniPoly, weights) -> UniPoly:
    """Multiply the coefficient of ``t**i`` by ``weights(i)``."""
    return UniPoly([c * weights(i) for i, c in enumerate(p.coeffs)])


@dataclass(frozen=True)
class CoefficientPath:
    """A family ``s -> phi_s`` on ``[0, 1]``; ``reverse`` runs it backwards."""

    kind: PathKind
    params: dict = field(compare=False)
    reverse: bool = False

    def __call__(self, s) -> PolyMap3:
        s = as_fraction(s)
        if not 0 <= s <= 1:
            raise ValueError("path parameter must lie in [0, 1]")
        return _EVAL[self.kind](self.params, 1 - s if self.reverse else s)

    at = __call__

    @property
    def start(self) -> PolyMap3:
        return self(0)

    @property
    def end(self) -> PolyMap3:
        return self(1)

    def reversed(self) -> CoefficientPath:
        return CoefficientPath(self.kind, self.params, not self.reverse)

    def is_constant(self) -> bool:
        return self.params.get("constant", False)

    def describe(self) -> dict:
        out: dict[str, Any] = {"kind": self.kind.value, "reverse": self.reverse}
        if self.kind is PathKind.CONCAT:
            out["children"] = [c.describe() for c in self.params["children"]]
        return out


# -- closed forms -------------------------------------------------------------


def _eval_shrink(params: dict, s: Fraction) -> PolyMap3:
    # constant term scaled by s, t**i (i >= 1) by s**(i - 1)
    return params["phi"].map_components(lambda p: _scaled_powers(p, lambda i: s if i == 0 else s ** (i - 1)))


def _eval_retract(params: dict, s: Fraction) -> PolyMap3:
    mu = s + (1 - s) * params["inv_norm"]
    return params["phi"].map_components(
        lambda p: _scaled_powers(p, lambda i: s if i == 0 else mu * s ** (i - 1))
    )


def _eval_reparam(params: dict, s: Fraction) -> PolyMap3:
    a, b = params["alpha"], params["beta"]
    return compose_source_affine(params["phi"], 1 - s + a * s, b * s)


def _eval_target_affine(params: dict, s: Fraction) -> PolyMap3:
    (a1, a2, a3), (b1, b2, b3), (g1, g2, g3) = params["alpha"], params["beta"], params["gamma"]
    f, g, h = params["phi"].components
    return PolyMap3(
        f * (1 - s + a1 * s) + g1 * s,
        f * (b1 * s) + g * (1 - s + a2 * s) + g2 * s,
        f * (b2 * s) + g * (b3 * s) + h * (1 - s + a3 * s) + g3 * s,
    )


def _eval_lambda(params: dict, s: Fraction) -> PolyMap3:
    f, g, h = params["phi"].components
    a0, b0, b1, c0, c1 = params["a0"], params["b0"], params["b1"], params["c0"], params["c1"]
    shift = (g * c1 - b0 * c1 + b1 * c0) * (s / b1)
    return PolyMap3(f - a0 * s, g - b0 * s, h - shift)


def _eval_gamma(params: dict, s: Fraction) -> PolyMap3:
    f, g, h = params["phi"].components
    return PolyMap3(
        _scaled_powers(f, lambda i: s**i if i >= 1 else 0),
        _scaled_powers(g, lambda i: s ** (i - 1) if i >= 1 else 0),
        _scaled_powers(h, lambda i: s ** (i - 2) if i >= 2 else 0),
    )


def _eval_omega(params: dict, s: Fraction) -> PolyMap3:
    b1, c2 = params["b1"], params["c2"]
    w = s * (1 - s)
    return PolyMap3(
        UniPoly([0, w]),
        UniPoly([0, b1 * s + 1 - s, w]),
        UniPoly([0, 0, c2 * s + 1 - s, w]),
    )


def _eval_linear(params: dict, s: Fraction) -> PolyMap3:
    return params["a"].scale(1 - s) + params["b"].scale(s)


def _eval_concat(params: dict, s: Fraction) -> PolyMap3:
    children = params["children"]
    k = len(children)
    i = min(int(s * k), k - 1)
    return children[i](s * k - i)


_EVAL = {
    PathKind.SHRINK: _eval_shrink,
    PathKind.RETRACT: _eval_retract,
    PathKind.REPARAM: _eval_reparam,
    PathKind.TARGET_AFFINE: _eval_target_affine,
    PathKind.LAMBDA_TRANSLATE: _eval_lambda,
    PathKind.GAMMA_SHRINK: _eval_gamma,
    PathKind.OMEGA_BRIDGE: _eval_omega,
    PathKind.LINEAR_INTERP: _eval_linear,
    PathKind.CONCAT: _eval_concat,
}


# -- constructors -------------------------------------------------------------


def _linear_part(phi: PolyMap3) -> tuple[Fraction, Fraction, Fraction]:
    return tuple(p.coeff(1) for p in phi.components)


def _is_linear_knot(phi: PolyMap3) -> bool:
    return all(p.degree() <= 1 and p.coeff(0) == 0 for p in phi.components)


def shrink_isotopy(phi: PolyMap3) -> CoefficientPath:
    """``F_s(t) = s phi(0) + phi'(0) t + sum_i c_i s**(i-1) t**i``; ``F_1 = phi``, ``F_0`` linear."""
    if not any(_linear_part(phi)):
        raise DegenerateLinearPart("phi'(0) = 0")
    return CoefficientPath(PathKind.SHRINK, {"phi": phi, "constant": _is_linear_knot(phi)})


def gamma_d(phi: PolyMap3) -> tuple[tuple[Fraction, Fraction, Fraction], Fraction]:
    """Unit direction of ``phi'(0)`` as ``(v, N)``: the direction is ``v / sqrt(N)``, ``N = |v|**2``."""
    v = _linear_part(phi)
    n = sum(x * x for x in v)
    if n == 0:
        raise DegenerateLinearPart("phi'(0) = 0")
    return v, n


def upsilon_d(x: Sequence) -> PolyMap3:
    """The linear knot ``t -> x t``."""
    return PolyMap3(*(UniPoly([0, as_fraction(c)]) for c in x))


def rational_sqrt(n: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or ``None`` if irrational."""
    a, b = math.isqrt(n.numerator), math.isqrt(n.denominator)
    if a * a == n.numerator and b * b == n.denominator:
        return Fraction(a, b)
    return None


def inverse_sqrt_approx(n: Fraction, bits: int = 96) -> Fraction:
    """Rational approximation of ``1 / sqrt(n)`` with relative error below ``2**-bits``."""
    exact = rational_sqrt(n)
    if exact is not None:
        return 1 / exact
    scale = 1 << (2 * bits)
    root = math.isqrt(n.numerator * n.denominator * scale)
    # sqrt(p/q) = sqrt(p q) / q
    return Fraction(n.denominator * (1 << bits), root)


def retraction_path(phi: PolyMap3, d: int | None = None) -> CoefficientPath:
    """``H_s = s phi(0) + mu(s) (phi'(0) t + sum_i c_i s**(i-1) t**i)``, ``mu(s) = s + (1 - s)/|phi'(0)|``.

    ``H_1 = phi`` and ``H_0`` is the linear knot along the unit direction of ``phi'(0)``.
    When ``|phi'(0)|`` is irrational, ``1/|phi'(0)|`` is replaced by a close rational;
    :func:`gamma_d` gives the exact direction as ``(v, N)``.
    """
    v, n = gamma_d(phi)
    root = rational_sqrt(n)
    inv = 1 / root if root is not None else inverse_sqrt_approx(n)
    constant = _is_linear_knot(phi) and n == 1
    return CoefficientPath(
        PathKind.RETRACT,
        {"phi": phi, "inv_norm": inv, "radicand": n, "direction": v, "exact": root is not None, "constant": constant},
    )


def reparam_path(phi: PolyMap3, alpha, beta) -> CoefficientPath:
    """``s -> phi((1 - s + alpha s) t + beta s)`` from ``phi`` to ``phi(alpha t + beta)``."""
    alpha, beta = as_fraction(alpha), as_fraction(beta)
    if alpha <= 0:
        raise NonpositiveScale("alpha must be positive")
    return CoefficientPath(
        PathKind.REPARAM, {"phi": phi, "alpha": alpha, "beta": beta, "constant": alpha == 1 and beta == 0}
    )


def target_affine_path(phi: PolyMap3, alpha: Sequence, beta: Sequence = (0, 0, 0), gamma: Sequence = (0, 0, 0)) -> CoefficientPath:
    """Lower-triangular target family from ``phi`` to
    ``(a1 f + g1, a2 g + b1 f + g2, a3 h + b2 f + b3 g + g3)``."""
    alpha = tuple(as_fraction(a) for a in alpha)
    beta = tuple(as_fraction(b) for b in beta)
    gamma = tuple(as_fraction(c) for c in gamma)
    if any(a <= 0 for a in alpha):
        raise NonpositiveScale("all alpha must be positive")
    constant = alpha == (1, 1, 1) and not any(beta) and not any(gamma)
    return CoefficientPath(
        PathKind.TARGET_AFFINE, {"phi": phi, "alpha": alpha, "beta": beta, "gamma": gamma, "constant": constant}
    )


def linear_interp(a: PolyMap3, b: PolyMap3) -> CoefficientPath:
    return CoefficientPath(PathKind.LINEAR_INTERP, {"a": a, "b": b, "constant": a == b})


def lambda_translate(phi: PolyMap3) -> CoefficientPath:
    """Target shear-translation killing ``a_0, b_0, c_0, c_1``; needs ``b_1 != 0``."""
    f, g, h = phi.components
    b1 = g.coeff(1)
    if b1 == 0:
        raise PreconditionB1Zero("coefficient of t in g is zero")
    params = {
        "phi": phi,
        "a0": f.coeff(0),
        "b0": g.coeff(0),
        "b1": b1,
        "c0": h.coeff(0),
        "c1": h.coeff(1),
    }
    params["constant"] = not any(params[k] for k in ("a0", "b0", "c0", "c1"))
    return CoefficientPath(PathKind.LAMBDA_TRANSLATE, params)


def gamma_shrink(omega: PolyMap3) -> CoefficientPath:
    """From ``(0, b_1 t, c_2 t**2)`` at ``s = 0`` to ``omega`` at ``s = 1``.

    ``omega`` must have ``a_0 = b_0 = c_0 = c_1 = 0``.
    """
    f, g, h = omega.components
    if f.coeff(0) or g.coeff(0) or h.coeff(0) or h.coeff(1):
        raise ValueError("omega must have vanishing a0, b0, c0 and c1")
    return CoefficientPath(PathKind.GAMMA_SHRINK, {"phi": omega})


def omega_bridge(b1, c2) -> CoefficientPath:
    """From ``(0, t, t**2)`` at ``s = 0`` to ``(0, b1 t, c2 t**2)`` at ``s = 1``."""
    return CoefficientPath(PathKind.OMEGA_BRIDGE, {"b1": as_fraction(b1), "c2": as_fraction(c2)})


def concat(paths: Sequence[CoefficientPath]) -> CoefficientPath:
    """Join paths end to start, each child taking an equal share of ``[0, 1]``."""
    paths = list(paths)
    if not paths:
        raise ValueError("nothing to concatenate")
    if len(paths) == 1:
        return paths[0]
    for i, (p, q) in enumerate(zip(paths, paths[1:])):
        if p.end != q.start:
            raise EndpointMismatch(f"path {i} ends at {p.end} but path {i + 1} starts at {q.start}")
    return CoefficientPath(PathKind.CONCAT, {"children": tuple(paths)})


# -- validation ---------------------------------------------------------------


@dataclass(frozen=True)
class PathReport:
    n_samples: int
    failures: list[tuple[Fraction, EmbeddingWitness | None]]
    space_preserved: bool
    space_failures: list[Fraction] = field(default_factory=list)
    required_space: str | None = None

    @property
    def ok(self) -> bool:
        return not self.failures and self.space_preserved

    def to_dict(self) -> dict:
        return {
            "n_samples": self.n_samples,
            "required_space": self.required_space,
            "failures": [
                {"s": str(s), "witness": w.to_dict() if w is not None else None} for s, w in self.failures
            ],
            "space_preserved": self.space_preserved,
            "space_failures": [str(s) for s in self.space_failures],
        }


def _space_flag(m: SpaceMembership, space: str | None) -> bool:
    if space is None or space == "none":
        return True
    return {"O": m.in_O, "P": m.in_P, "Q": m.in_Q}[space]


def sample_parameters(n: int) -> list[Fraction]:
    if n < 2:
        raise ValueError("need at least two samples")
    return [Fraction(k, n - 1) for k in range(n)]


def validate_path(p: CoefficientPath, n: int = 101, d: int | None = None, required_space: str | None = None) -> PathReport:
    """Run the embedding check and the classifier at ``s = k/(n-1)``."""
    if required_space is not None and required_space not in ("O", "P", "Q", "none"):
        raise ValueError("required_space must be O, P, Q or none")
    if p.is_constant():
        samples = [(s, p.start) for s in sample_parameters(n)]
        res = is_embedding(p.start)
        verdicts = [res] * n
    else:
        samples = [(s, p(s)) for s in sample_parameters(n)]
        verdicts = [is_embedding(phi) for _, phi in samples]
    failures, space_failures = [], []
    for (s, phi), res in zip(samples, verdicts):
        if not res.is_embedding:
            failures.append((s, res.witness))
        if d is not None and not _space_flag(classify(phi, d, embedding=res.is_embedding), required_space):
            space_failures.append(s)
    return PathReport(n, failures, not space_failures, space_failures, required_space)


# -- canonical chain to (0, t, t^2) -------------------------------------------------


def nudge_interp(
    phi: PolyMap3, direction: PolyMap3, d: int, *, n: int = 11, space: str = "Q", max_halvings: int = 40
) -> CoefficientPath:
    """Linear step from ``phi`` to ``phi + eps * direction``, halving ``eps`` until every sample passes."""
    eps = Fraction(1)
    for _ in range(max_halvings):
        path = linear_interp(phi, phi + direction.scale(eps))
        if validate_path(path, n, d, space).ok:
            return path
        eps /= 2
    raise RuntimeError("no admissible step found")  # pragma: no cover - openness guarantees success


def nudge_b1(phi: PolyMap3, d: int, **kw) -> CoefficientPath:
    """Validated step making the coefficient of ``t`` in ``g`` nonzero."""
    return nudge_interp(phi, PolyMap3(UniPoly(), UniPoly([0, 1]), UniPoly()), d, **kw)


def canonical_path_Pd(phi: PolyMap3, d: int, *, nudge_samples: int = 11) -> CoefficientPath:
    """Path through ``P_d`` from ``phi`` (in ``Q_d`` with ``b_1 != 0``) to ``(0, t, t**2)``."""
    if d < 3:
        raise ValueError("d must be at least 3")
    if phi.g.coeff(1) == 0:
        raise PreconditionB1Zero("coefficient of t in g is zero; apply nudge_b1 first")
    stages = [lambda_translate(phi)]
    tau = stages[0].end
    omega = tau
    if tau.h.coeff(2) == 0:
        step = nudge_interp(tau, PolyMap3(UniPoly(), UniPoly(), UniPoly([0, 0, 1])), d, n=nudge_samples)
        stages.append(step)
        omega = step.end
    stages.append(gamma_shrink(omega).reversed())
    stages.append(omega_bridge(omega.g.coeff(1), omega.h.coeff(2)).reversed())
    return concat(stages)


# -- density ------------------------------------------------------------------


def _min_abs_at_roots(value: UniPoly, where: UniPoly) -> Fraction | None:
    """Rigorous lower bound of ``|value|`` over real roots of ``where`` at which ``value != 0``."""
    if where.is_zero() or where.degree() <= 0:
        return None
    best: Fraction | None = None
    for r in sturm_isolate(where):
        x = RealAlgebraic(r.poly, r)
        if x.is_zero(value):
            continue
        while True:
            iv = value(x.interval())
            if iv.excludes_zero():
                lb = iv.abs_lower()
                break
            x.refine((x.hi - x.lo) / 4)
            if x.is_rational:
                lb = abs(value(x.lo))
                break
        best = lb if best is None else min(best, lb)
    return best


def _min_abs_at_zeros(f_dd, system) -> Fraction | None:
    """Lower bound of ``|f_dd|`` over the off-diagonal common zeros of ``system`` where it is nonzero."""
    best: Fraction | None = None
    for z in common_real_zeros(system, symmetric=True, allow_curve=False):
        si, ti = z.s, z.t
        if si == ti:
            continue
        if si.is_exact and ti.is_exact:
            v = abs(f_dd(si.lo, ti.lo))
            if v == 0:
                continue
            lb = v
        elif _exact_fibre_test(list(system) + [f_dd], si.poly, si, ti):
            continue
        else:
            while True:
                iv = f_dd.eval_box(si.as_interval(), ti.as_interval())
                if iv.excludes_zero():
                    lb = iv.abs_lower()
                    break
                si = refine(None, si, si.width / 4)
                ti = refine(None, ti, ti.width / 4)
        best = lb if best is None else min(best, lb)
    return best


@dataclass(frozen=True)
class DensifyReport:
    psi: PolyMap3
    m1: Fraction | None
    r: Fraction
    m2: Fraction | None
    s: Fraction
    rho_squared: Fraction


def _half_min(m: Fraction | None, eps: Fraction) -> Fraction:
    return (eps / 2 if m is None else min(m, eps / 2)) / 2


def densify_report(phi: PolyMap3, d: int, eps) -> DensifyReport:
    eps = as_fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if not classify(phi, d, embedding=True).in_C:
        raise NotInCd(f"degree sequence {phi.degree_sequence().as_tuple()} is not ({d - 2}, {d - 1}, {d})")
    f, g, h = phi.components
    if d <= 3:
        # f is constant or linear with nonzero slope: already an embedding
        return DensifyReport(phi, None, Fraction(0), None, Fraction(0), Fraction(0))
    m1 = _min_abs_at_roots(h.derivative(), g.derivative())
    r = _half_min(m1, eps)
    h_hat = h + UniPoly([0, r / 2])
    m2 = _min_abs_at_zeros(divided_difference(f), [divided_difference(g), divided_difference(h_hat)])
    s = _half_min(m2, eps)
    f_hat = f + UniPoly([0, s / 2])
    psi = PolyMap3(f_hat, g, h_hat)
    return DensifyReport(psi, m1, r, m2, s, (r / 2) ** 2 + (s / 2) ** 2)


def densify_to_Q(phi: PolyMap3, d: int, eps) -> PolyMap3:
    """An embedding in ``Q_d`` within coefficient distance ``eps / 2`` of ``phi`` (``phi`` in ``C_d``)."""
    rep = densify_report(phi, d, eps)
    assert rho_at_most(phi, rep.psi, d, as_fraction(eps) / 2)
    return rep.psi
