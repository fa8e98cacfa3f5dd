from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest
from helpers import random_int_map

from polyknot.errors import NotInAd, NotInCd, SingularMatrix, ZeroScale, ZeroVector
from polyknot.knotspace import (
    FIGURE_EIGHT,
    PolyMap3,
    WitnessKind,
    classify,
    coeff_vector,
    compose_source_affine,
    compose_target_affine,
    embedding_oracle_numeric,
    from_coeff_vector,
    is_embedding,
    metric_rho_squared,
    mirror,
    rho_at_most,
    sign_class,
    tail_angle,
)

CRITICAL = PolyMap3.from_coeffs([1], [1], [0, 1, "-1/2"])
DOUBLE = PolyMap3.from_coeffs([1], [0, 1, 0, -1], [0, 0, 1, 0, -1])


def test_fixture_matches_constant(fig8):
    assert fig8 == FIGURE_EIGHT


def test_embedding_examples(fig8):
    assert is_embedding(PolyMap3.from_coeffs([0], [0], [0, 1]))
    assert is_embedding(fig8)
    assert not is_embedding(PolyMap3.from_coeffs([0, 0, 1], [0, 0, 0, 1], [0]))  # cusp at 0
    assert not is_embedding(PolyMap3.from_coeffs([1], [2], [3]))


def test_critical_point_witness():
    res = is_embedding(CRITICAL)
    assert not res.is_embedding
    w = res.witness.refine(Fraction(1, 10**6))
    assert w.kind is WitnessKind.CRITICAL_POINT
    assert w.s0.lo <= 1 <= w.s0.hi and w.s0.width <= Fraction(1, 10**6)


def test_self_intersection_witness():
    res = is_embedding(DOUBLE)
    w = res.witness.refine(Fraction(1, 10**6))
    assert w.kind is WitnessKind.SELF_INTERSECTION
    assert w.s0.lo <= 0 <= w.s0.hi and w.t0.lo <= 1 <= w.t0.hi
    assert DOUBLE(0) == DOUBLE(1)


def test_witnesses_are_near_zeros_of_the_system():
    rng = random.Random(7)
    found = 0
    while found < 20:
        phi = random_int_map(rng)
        res = is_embedding(phi)
        if res.is_embedding:
            continue
        found += 1
        w = res.witness.refine(Fraction(1, 10**6))
        s, t = w.midpoint()
        scale = max(1, *(abs(c) for p in phi.components for c in p.coeffs))
        for gamma in phi.divided_differences():
            assert abs(gamma.eval_float(float(s), float(t))) < 1e-3 * scale


def test_checker_agrees_with_numeric_oracle():
    rng = random.Random(11)
    for _ in range(60):
        phi = random_int_map(rng)
        if not embedding_oracle_numeric(phi):
            assert not is_embedding(phi)


def embedding_pool():
    from conftest import load_knot

    pool = [load_knot(n)[0] for n in ("figure_eight.json", "trefoil.json", "unknot_line.json")]
    rng = random.Random(3)
    while len(pool) < 12:
        phi = random_int_map(rng)
        if is_embedding(phi):
            pool.append(phi)
    return pool


EMBEDDINGS = embedding_pool()


@pytest.mark.parametrize("seed", range(50))
def test_embedding_invariant_under_affine_changes(seed):
    rng = random.Random(seed)
    phi = EMBEDDINGS[seed % len(EMBEDDINGS)]
    alpha = Fraction(rng.randint(1, 9), rng.randint(1, 4))
    beta = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
    assert is_embedding(compose_source_affine(phi, alpha, beta))
    assert is_embedding(compose_source_affine(phi, -alpha, beta))
    M = [[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)]
    for i in range(3):
        M[i][i] += 7
    assert is_embedding(compose_target_affine(phi, M, (1, -2, 3)))


@pytest.mark.parametrize("seed", range(10))
def test_non_embedding_invariant_under_affine_changes(seed):
    rng = random.Random(500 + seed)
    phi = random_int_map(rng)
    while is_embedding(phi):
        phi = random_int_map(rng)
    assert not is_embedding(compose_source_affine(phi, Fraction(-3, 2), 2))
    assert not is_embedding(compose_target_affine(phi, [[2, 1, 0], [0, 1, 0], [1, 0, 3]], (0, 5, 0)))


def test_affine_errors(fig8):
    with pytest.raises(ZeroScale):
        compose_source_affine(fig8, 0, 1)
    with pytest.raises(SingularMatrix):
        compose_target_affine(fig8, [[1, 0, 0], [2, 0, 0], [0, 0, 1]])


def test_classify_examples(fig8):
    m = classify(fig8, 6)
    assert (m.in_A, m.in_B, m.in_C, m.in_O, m.in_P, m.in_Q) == (True,) * 6
    m = classify(PolyMap3.from_coeffs([0], [0], [0, 1]), 2)
    assert m.in_A and not m.in_B and not m.in_C and m.in_O
    m = classify(CRITICAL, 3)
    assert m.in_A and not m.is_embedding and not m.in_O


@pytest.mark.parametrize("seed", range(20))
def test_classify_containments(seed):
    rng = random.Random(100 + seed)
    phi = random_int_map(rng)
    m = classify(phi, 7)
    assert not m.in_C or m.in_B
    assert not m.in_B or m.in_A
    assert m.in_O == (m.in_A and m.is_embedding)
    assert m.in_P == (m.in_B and m.is_embedding)
    assert m.in_Q == (m.in_C and m.is_embedding)


def test_sign_class_and_mirror(fig8, trefoil):
    for phi, d in ((fig8, 6), (trefoil, 5)):
        e1, e2, e3 = sign_class(phi, d).as_tuple()
        assert sign_class(mirror(phi), d).as_tuple() == (e1, -e2, -e3)
    assert sign_class(fig8, 6).as_tuple() == (1, 1, 1)
    assert sign_class(mirror(fig8), 6).as_tuple() == (1, -1, -1)
    assert is_embedding(mirror(fig8))
    with pytest.raises(NotInCd):
        sign_class(fig8, 7)


def test_coefficient_chart_round_trip(fig8):
    vec = coeff_vector(fig8, 6)
    assert len(vec) == 18
    assert from_coeff_vector(vec, 6) == fig8
    with pytest.raises(NotInAd):
        coeff_vector(fig8, 5)


def test_metric():
    a = PolyMap3.from_coeffs([0], [0], [0, 1])
    b = PolyMap3.from_coeffs([0], [0, "3/10"], [0, 1, 0, "4/10"])
    assert metric_rho_squared(a, b, 3) == Fraction(1, 4)
    assert rho_at_most(a, b, 3, Fraction(1, 2))
    assert not rho_at_most(a, b, 3, Fraction(49, 100))


def test_tail_angles(fig8, trefoil):
    assert tail_angle(PolyMap3.from_coeffs([0], [0], [0, 1]), 5) == 0
    for k in range(25):
        t = Fraction(round(10 ** (2 + 4 * k / 24)))
        for sgn in (1, -1):
            assert abs(math.cos(tail_angle(trefoil, sgn * t))) >= 0.9
    assert tail_angle(fig8, 1000) < 0.1
    assert tail_angle(fig8, -1000) > math.pi - 0.1
    for k in range(25):
        t = Fraction(10) ** (2 + Fraction(4 * k, 24))
        for sgn in (1, -1):
            assert abs(math.cos(tail_angle(fig8, sgn * Fraction(round(t))))) >= 0.9
    with pytest.raises(ZeroVector):
        tail_angle(PolyMap3.from_coeffs([0], [0], [0, 1]), 0)


def test_mirror_basics(fig8):
    assert mirror(mirror(fig8)) == fig8
    assert compose_target_affine(fig8, [[1, 0, 0], [0, -1, 0], [0, 0, -1]]) == mirror(fig8)
    assert metric_rho_squared(fig8, mirror(fig8), 6) == metric_rho_squared(mirror(fig8), fig8, 6) > 0


def test_midpoint_to_mirror_is_not_an_embedding(fig8):
    mid = (fig8 + mirror(fig8)).scale(Fraction(1, 2))
    assert mid.g.is_zero() and mid.h.is_zero()
    assert not is_embedding(mid)
