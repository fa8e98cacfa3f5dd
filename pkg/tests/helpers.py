from __future__ import annotations

import random
from fractions import Fraction

from polyknot.isotopy import target_affine_path
from polyknot.knotspace import PolyMap3


def random_int_map(rng: random.Random, max_degree: int = 5, bound: int = 3) -> PolyMap3:
    comps = []
    for _ in range(3):
        deg = rng.randint(0, max_degree)
        comps.append([rng.randint(-bound, bound) for _ in range(deg + 1)])
    return PolyMap3.from_coeffs(*comps)


def random_rational(rng: random.Random, lo: Fraction, hi: Fraction, den: int = 8) -> Fraction:
    return lo + (hi - lo) * Fraction(rng.randint(0, den), den)


def random_target_affine(rng: random.Random, phi: PolyMap3):
    """Lower-triangular target path with positive diagonal, staying in ``Q_d``."""
    alpha = [random_rational(rng, Fraction(1, 2), Fraction(2)) for _ in range(3)]
    beta = [random_rational(rng, Fraction(-1), Fraction(1)) for _ in range(3)]
    gamma = [random_rational(rng, Fraction(-2), Fraction(2)) for _ in range(3)]
    return target_affine_path(phi, alpha, beta, gamma)


def state_sum_bracket(pd):
    """Kauffman bracket by brute force over all ``2**n`` smoothings, as ``{A-exponent: coeff}``."""
    from itertools import product

    n = len(pd)
    labels = sorted({e for x in pd for e in x})
    out: dict[int, int] = {}
    for state in product((0, 1), repeat=n):
        parent = {e: e for e in labels}

        def find(e):
            while parent[e] != e:
                parent[e] = parent[parent[e]]
                e = parent[e]
            return e

        for (a, b, c, d), choice in zip(pd, state):
            pairs = ((a, b), (c, d)) if choice == 0 else ((a, d), (b, c))
            for x, y in pairs:
                parent[find(x)] = find(y)
        loops = len({find(e) for e in labels}) if labels else 1
        a_exp = state.count(0) - state.count(1)
        # delta**(loops - 1) with delta = -A**2 - A**-2
        poly = {a_exp: 1}
        for _ in range(loops - 1):
            nxt: dict[int, int] = {}
            for e, c in poly.items():
                for de in (2, -2):
                    nxt[e + de] = nxt.get(e + de, 0) - c
            poly = nxt
        for e, c in poly.items():
            out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


def pd_writhe(pd) -> int:
    return sum(1 if (x[1] - x[3] == 1 or x[3] - x[1] > 1) else -1 for x in pd)


def state_sum_jones(pd) -> dict[int, int]:
    """Jones polynomial as ``{q-exponent: coeff}`` from the brute-force bracket."""
    w = pd_writhe(pd)
    out: dict[int, int] = {}
    sign = -1 if w % 2 else 1
    for e, c in state_sum_bracket(pd).items():
        a_exp = e - 3 * w
        assert a_exp % 4 == 0
        out[-a_exp // 4] = sign * c
    return out
