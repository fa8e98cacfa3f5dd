"""End-to-end acceptance criteria; each test records one PASS/FAIL line in the summary."""

from __future__ import annotations

import functools
import math
import random
import time
from fractions import Fraction

import pytest
from conftest import ACCEPTANCE_LINES, DATA
from helpers import random_int_map, random_target_affine, state_sum_jones

from polyknot.cli import parse_knot_file
from polyknot.diagram import LaurentPoly, determinant, invariant_constancy_check, jones, knot_diagram
from polyknot.isotopy import (
    canonical_path_Pd,
    densify_to_Q,
    gamma_d,
    linear_interp,
    retraction_path,
    sample_parameters,
    shrink_isotopy,
    upsilon_d,
    validate_path,
)
from polyknot.knotspace import (
    PolyMap3,
    WitnessKind,
    classify,
    embedding_oracle_numeric,
    is_embedding,
    mirror,
    rho_at_most,
    sign_class,
    tail_angle,
)
from polyknot.polycore import UniPoly, divided_difference, eval_bi


def criterion(number: int, title: str):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            start = time.perf_counter()
            try:
                fn(*args, **kwargs)
            except BaseException as exc:
                ACCEPTANCE_LINES.append(f"FAIL criterion {number}: {title} ({type(exc).__name__}: {exc})")
                raise
            ACCEPTANCE_LINES.append(f"PASS criterion {number}: {title} [{time.perf_counter() - start:.1f}s]")

        return run

    return wrap


@pytest.fixture(scope="module")
def knot():
    return parse_knot_file((DATA / "figure_eight.json").read_text())[0]


@pytest.fixture(scope="module")
def references():
    from conftest import load_pd_codes

    return load_pd_codes()


def as_q_terms(p: LaurentPoly) -> dict[int, int]:
    return dict(p.terms)


def timed_check(phi):
    start = time.perf_counter()
    res = is_embedding(phi)
    assert time.perf_counter() - start < 10
    return res


@criterion(1, "embedding gate")
def test_criterion_1_embedding_gate(knot):
    assert timed_check(knot).is_embedding
    res = timed_check(PolyMap3.from_coeffs([1], [1], [0, 1, "-1/2"]))
    assert not res.is_embedding
    w = res.witness.refine(Fraction(1, 10**6))
    assert w.kind is WitnessKind.CRITICAL_POINT
    assert w.s0.lo <= 1 <= w.s0.hi and w.s0.width <= Fraction(1, 10**6)
    res = timed_check(PolyMap3.from_coeffs([1], [0, 1, 0, -1], [0, 0, 1, 0, -1]))
    assert not res.is_embedding
    w = res.witness
    assert w.kind is WitnessKind.SELF_INTERSECTION
    assert w.s0.lo <= 0 <= w.s0.hi and w.t0.lo <= 1 <= w.t0.hi


@criterion(2, "numeric oracle never contradicts the checker")
def test_criterion_2_oracle_equivalence():
    rng = random.Random(2024)
    contradictions = []
    for _ in range(200):
        phi = random_int_map(rng, max_degree=5, bound=3)
        if not embedding_oracle_numeric(phi) and is_embedding(phi).is_embedding:
            contradictions.append(str(phi))
    assert contradictions == []


@criterion(3, "densify lands in Q_4 within 1/20")
def test_criterion_3_density():
    phi = PolyMap3.from_coeffs([0, 0, 1], [0, 0, 0, 1], [0, 0, 0, 0, 1])
    psi = densify_to_Q(phi, 4, Fraction(1, 10))
    assert classify(psi, 4).in_Q
    assert rho_at_most(phi, psi, 4, Fraction(1, 20))


@criterion(4, "shrink isotopy in O_6 with endpoint invariants")
def test_criterion_4_shrink(knot, references):
    path = shrink_isotopy(knot)
    rep = validate_path(path, 101, 6, "O")
    assert rep.failures == [] and rep.space_preserved
    top = knot_diagram(path(1), 1)
    assert as_q_terms(jones(top)) == state_sum_jones(references["4_1"]) == {-2: 1, -1: -1, 0: 1, 1: -1, 2: 1}
    assert determinant(top) == 5
    bottom = knot_diagram(path(0), 1)
    assert as_q_terms(jones(bottom)) == state_sum_jones(references["unknot"]) == {0: 1}
    assert determinant(bottom) == 1


@criterion(5, "sign class obstruction on Q_6")
def test_criterion_5_sign_class(knot):
    assert sign_class(knot, 6).as_tuple() == (1, 1, 1)
    assert sign_class(mirror(knot), 6).as_tuple() == (1, -1, -1)
    rng = random.Random(5)
    for _ in range(20):
        path = random_target_affine(rng, knot)
        rep = validate_path(path, 11, 6, "Q")
        assert rep.ok
        assert len({sign_class(path(s), 6) for s in sample_parameters(11)}) == 1
    li = linear_interp(knot, mirror(knot))
    rep = validate_path(li, 101, 6, "Q")
    assert not rep.ok
    assert Fraction(1, 2) in rep.space_failures


@criterion(6, "Jones polynomial constant along Q_6 paths")
def test_criterion_6_invariance(knot):
    rng = random.Random(6)
    checked = 0
    while checked < 10:
        path = random_target_affine(rng, knot)
        if not validate_path(path, 11, 6, "Q").ok:
            continue
        assert invariant_constancy_check(path, 11, 6)
        checked += 1


@criterion(7, "canonical path through P_6 to (0, t, t^2)")
def test_criterion_7_canonical(knot):
    path = canonical_path_Pd(knot, 6)
    first, *rest = path.params["children"]
    assert validate_path(first, 101, 6, "Q").ok
    for stage in rest:
        assert validate_path(stage, 101, 6, "P").ok
    assert path(1) == PolyMap3.from_coeffs([0], [0, 1], [0, 0, 1])
    assert path(0) == knot


@criterion(8, "tails meet large spheres transversally")
def test_criterion_8_tails(knot):
    assert tail_angle(knot, 1000) < 0.1
    assert tail_angle(knot, -1000) > math.pi - 0.1
    for k in range(25):
        t = Fraction(round(10 ** (2 + 4 * k / 24)))
        for sgn in (1, -1):
            assert abs(math.cos(tail_angle(knot, sgn * t))) >= 0.9


def power_sum(a: Fraction, b: Fraction, m: int) -> Fraction:
    return sum((a ** (m - i) * b**i for i in range(m + 1)), Fraction(0))


@criterion(9, "algebraic property suites")
def test_criterion_9_algebra():
    rng = random.Random(9)

    def rat(lo=-6, hi=6):
        return Fraction(rng.randint(lo * 12, hi * 12), rng.randint(1, 12))

    for _ in range(100):
        p = UniPoly([rat() for _ in range(rng.randint(1, 9))])
        gamma = divided_difference(p)
        s, t = rat(), rat()
        assert eval_bi(gamma, s, t) * (s - t) == p(s) - p(t)
        diag = sum((UniPoly.monomial(i + j, c) for (i, j), c in gamma.terms.items()), UniPoly())
        assert diag == p.derivative()

    for _ in range(500):
        a = b = Fraction(0)
        while a == 0 or b == 0:
            a, b = rat(), rat()
        n = 2 * rng.randint(1, 5)
        k = rng.randint(1, n)
        sn = power_sum(a, b, n)
        assert 0 < 1 / sn <= max(1 / a**n, 1 / b**n)
        ratio = power_sum(a, b, k) / sn
        if k % 2 == 0:
            assert 0 < ratio <= max(1 / a ** (n - k), 1 / b ** (n - k))
        else:
            assert abs(ratio) < min(1 / abs(a ** (n - k)), 1 / abs(b ** (n - k)))

    points = []
    for u in range(-3, 4):
        for w in range(1, 4):
            x, y = Fraction(u, 2), Fraction(w, 3)
            r = x * x + y * y
            points.append((2 * x / (1 + r), 2 * y / (1 + r), (r - 1) / (1 + r)))
    for x in points[:20]:
        assert sum(c * c for c in x) == 1
        v, norm2 = gamma_d(upsilon_d(x))
        assert norm2 == 1 and tuple(v) == x
        assert retraction_path(upsilon_d(x))(0) == upsilon_d(x)
