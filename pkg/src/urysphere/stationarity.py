"""Uniqueness of extensions and stationarity of types.

A 1-type over C extends uniquely to one more point b exactly when
d_max(a, b / C) already equals the largest base-distance gap
max over c of |d(a, c) - d(b, c)|; by the endpoint characterization this
simultaneously decides unique extension and unique nonforking extension.
A tuple's type is stationary exactly when every coordinate lies in the
metric closure of C, which at finite scale means distance zero to some base
point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .independence import d_max
from .metric import ZERO, FiniteMetricSpace, Label


def dstar_min(
    space: FiniteMetricSpace, a: Label, b: Label, base: Iterable[Label]
) -> Fraction:
    """Largest gap |d(a, c) - d(b, c)| over the base; 0 when the base is empty."""
    space.index(a)
    space.index(b)
    value = ZERO
    for c in space.subset(base):
        gap = abs(space.dist(a, c) - space.dist(b, c))
        if gap > value:
            value = gap
    return value


def has_unique_extension(
    space: FiniteMetricSpace, a: Label, b: Label, base: Iterable[Label]
) -> bool:
    """Whether tp(a / base) extends uniquely (equivalently: uniquely without
    forking) to the base plus b."""
    return d_max(space, a, b, base) == dstar_min(space, a, b, base)


def is_stationary(
    space: FiniteMetricSpace, tuple_points: Sequence[Label], base: Iterable[Label]
) -> bool:
    """Whether the tuple's type over the base is stationary.

    Finite sets are metrically closed, so this asks every coordinate to be
    at distance zero from some base point (pseudometric twins count).
    """
    cs = space.subset(base)
    return all(
        any(space.dist(a, c) == ZERO for c in cs) for a in tuple_points
    )


def unique_extension_to(
    space: FiniteMetricSpace,
    tuple_points: Sequence[Label],
    base: Iterable[Label],
    b_set: Iterable[Label],
) -> bool:
    """Whether the tuple's type over the base extends uniquely to B.

    Requires base inside B; the n-type extends uniquely exactly when each
    coordinate extends uniquely to the base plus each single point of B.
    """
    cs = space.subset(base)
    bs = space.subset(b_set)
    missing = set(cs) - set(bs)
    if missing:
        raise ValueError(f"base point {sorted(missing)[0]!r} not contained in B")
    return all(
        has_unique_extension(space, a, b, cs) for a in tuple_points for b in bs
    )
