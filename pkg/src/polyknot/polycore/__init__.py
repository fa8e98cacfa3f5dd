"""Exact polynomial arithmetic, resultants and certified real-root isolation."""

from __future__ import annotations

from .bi import BiPoly, divided_difference, eval_bi
from .interval import Interval
from .resultant import resultant_eliminate
from .roots import RootInterval, count_real_roots, refine, sturm_isolate
from .uni import NEG_INF, UniPoly, as_fraction


def degree(p: UniPoly) -> int | float:
    """Index of the top nonzero coefficient; ``-inf`` for the zero polynomial."""
    return p.degree()


__all__ = [
    "NEG_INF",
    "BiPoly",
    "Interval",
    "RootInterval",
    "UniPoly",
    "as_fraction",
    "count_real_roots",
    "degree",
    "divided_difference",
    "eval_bi",
    "refine",
    "resultant_eliminate",
    "sturm_isolate",
]
