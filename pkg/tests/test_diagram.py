from __future__ import annotations

import random

import pytest
from helpers import pd_writhe, state_sum_bracket, state_sum_jones

from polyknot.diagram import (
    KnotDiagram,
    LaurentPoly,
    Visit,
    bracket_from_pd,
    canonical_gauss,
    determinant,
    find_crossings,
    invariant_constancy_check,
    gauss_code,
    jones,
    jones_from_bracket,
    kauffman_bracket,
    knot_diagram,
    parse_gauss,
    rational_rotation,
    writhe,
)
from polyknot.errors import IrregularProjection, NonIntegerExponent, TooManyCrossings
from polyknot.knotspace import PolyMap3, compose_target_affine, det3, mirror

FIG8_JONES = {-2: 1, -1: -1, 0: 1, 1: -1, 2: 1}
TREFOIL_JONES = {1: 1, 3: 1, 4: -1}


def q_terms(p: LaurentPoly) -> dict[int, int]:
    return dict(p.terms)


@pytest.mark.parametrize("name", ["unknot", "3_1", "4_1"])
def test_bracket_matches_state_sum_oracle(pd_codes, name):
    pd = pd_codes[name]
    assert dict(bracket_from_pd(pd).terms) == state_sum_bracket(pd)


def test_oracle_reference_values(pd_codes):
    assert state_sum_jones(pd_codes["unknot"]) == {0: 1}
    assert state_sum_jones(pd_codes["3_1"]) == TREFOIL_JONES
    assert state_sum_jones(pd_codes["4_1"]) == FIG8_JONES


@pytest.mark.parametrize("axis", [1, 2, 3])
def test_figure_eight_diagram(fig8, pd_codes, axis):
    D = knot_diagram(fig8, axis)
    D.validate()
    assert q_terms(jones(D)) == state_sum_jones(pd_codes["4_1"])
    assert determinant(D) == 5
    # the PD code emitted for the diagram agrees with the oracle too
    assert jones_from_bracket(bracket_from_pd(D.pd_code()), writhe(D)) == jones(D)
    assert pd_writhe(D.pd_code()) == writhe(D)


def test_trefoil_diagram(trefoil, pd_codes):
    D = knot_diagram(trefoil, 1)
    assert D.n_crossings == 3
    assert writhe(D) == 3
    assert q_terms(jones(D)) == state_sum_jones(pd_codes["3_1"])
    assert kauffman_bracket(D) == bracket_from_pd(pd_codes["3_1"])
    assert determinant(D) == 3
    assert canonical_gauss(gauss_code(D)) == "O1+U2+O3+U1+O2+U3+"


def test_unknot_diagrams():
    line = PolyMap3.from_coeffs([0], [0], [0, 1])
    D = knot_diagram(line, 1)
    assert D.n_crossings == 0 and jones(D) == LaurentPoly.one("q") and determinant(D) == 1


def test_gauss_round_trip(trefoil):
    code = gauss_code(knot_diagram(trefoil, 1))
    assert gauss_code(KnotDiagram.from_gauss(parse_gauss(code))) == code
    assert canonical_gauss("U1-O2-U3+O1-U2-O3+") == canonical_gauss("O1-U3+O2-U1-O3+U2-")


def test_kink_changes_bracket_not_jones(trefoil):
    D = knot_diagram(trefoil, 1)
    n = D.n_crossings
    for sign, factor in ((1, LaurentPoly.monomial(3, -1)), (-1, LaurentPoly.monomial(-3, -1))):
        kinked = KnotDiagram.from_gauss(list(D.traversal) + [Visit(n, True, sign), Visit(n, False, sign)])
        assert kauffman_bracket(kinked) == kauffman_bracket(D) * factor
        assert writhe(kinked) == writhe(D) + sign
        assert jones(kinked) == jones(D)


def test_reflection_inverts_q(fig8, trefoil):
    reflect = [[1, 0, 0], [0, 1, 0], [0, 0, -1]]
    for phi in (fig8, trefoil):
        assert jones(knot_diagram(compose_target_affine(phi, reflect), 1)) == jones(knot_diagram(phi, 1)).invert_variable()
    jt = jones(knot_diagram(trefoil, 1))
    assert jt != jt.invert_variable()


def test_mirror_map_is_a_rotation(trefoil):
    # (f, -g, -h) has determinant +1, so the knot type is unchanged
    assert det3([[1, 0, 0], [0, -1, 0], [0, 0, -1]]) == 1
    assert jones(knot_diagram(mirror(trefoil), 1)) == jones(knot_diagram(trefoil, 1))


@pytest.mark.parametrize("seed", range(5))
def test_projection_independence(fig8, seed):
    R = rational_rotation(random.Random(seed))
    assert det3(R) == 1
    D = knot_diagram(compose_target_affine(fig8, R), 1)
    assert q_terms(jones(D)) == FIG8_JONES


@pytest.mark.parametrize("axis", [1, 2, 3])
def test_crossing_count_bound(fig8, trefoil, axis):
    for phi in (fig8, trefoil):
        P, Q = [p for i, p in enumerate(phi.components) if i != axis - 1]
        # Bezout bound of the two divided differences, halved for the (s, t) symmetry
        assert len(find_crossings(phi, axis)) <= (P.degree() - 1) * (Q.degree() - 1) // 2


def test_irregular_projections():
    cusp = PolyMap3.from_coeffs([0, 1], [0, 0, 1], [0, 0, 0, 1])  # (g, h) = (t^2, t^3)
    with pytest.raises(IrregularProjection):
        find_crossings(cusp, 1)
    flat = PolyMap3.from_coeffs([0, 1], [0, 0, 1], [0, 0, 1])  # (g, h) traces a doubled arc
    with pytest.raises(IrregularProjection):
        find_crossings(flat, 1)


def test_limits_and_exponents():
    twists = [Visit(k, True, 1) for k in range(25)] + [Visit(k, False, 1) for k in range(25)]
    with pytest.raises(TooManyCrossings):
        kauffman_bracket(KnotDiagram.from_gauss(twists))
    with pytest.raises(NonIntegerExponent):
        jones_from_bracket(LaurentPoly.monomial(2), 0)


def test_determinant_is_mirror_invariant(fig8, trefoil):
    reflect = [[1, 0, 0], [0, 1, 0], [0, 0, -1]]
    for phi in (fig8, trefoil):
        assert determinant(knot_diagram(compose_target_affine(phi, reflect), 1)) == determinant(knot_diagram(phi, 1))


def test_constancy_check_examples(fig8, trefoil):
    from polyknot.isotopy import linear_interp, shrink_isotopy, target_affine_path

    assert invariant_constancy_check(target_affine_path(fig8, (2, 2, 2)), 11, 6)
    assert invariant_constancy_check(linear_interp(trefoil, trefoil), 5, 5)
    # the shrink family leaves Q_6, and its endpoints differ in knot type
    assert not invariant_constancy_check(shrink_isotopy(fig8), 2, 6)
