"""Shared fixtures: canonical hand-checked configurations and random corpora."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import NamedTuple

import pytest

from urysphere import FiniteMetricSpace, Label, PartialSemimetric
from urysphere.generate import (
    random_metric_space,
    random_partial_semimetric,
    random_roles,
)

CORPUS_SEED = 20260810
# 200 spaces, all on the 1/12 grid, sizes skewed small to keep sweeps fast
CORPUS_SIZES = [3] * 80 + [4] * 70 + [5] * 50
PARTIAL_SIZES = [3] * 40 + [4] * 40 + [5] * 30 + [6] * 10


class Instance(NamedTuple):
    space: FiniteMetricSpace
    a_set: tuple[Label, ...]
    b_set: tuple[Label, ...]
    base: tuple[Label, ...]


@pytest.fixture(scope="session")
def corpus() -> list[Instance]:
    rng = random.Random(CORPUS_SEED)
    instances = []
    for size in CORPUS_SIZES:
        space = random_metric_space(rng, size, denominator=12)
        a, b, c = random_roles(rng, space)
        instances.append(Instance(space, a, b, c))
    return instances


@pytest.fixture(scope="session")
def corpus_partials() -> list[PartialSemimetric]:
    rng = random.Random(CORPUS_SEED + 1)
    return [
        random_partial_semimetric(rng, size, denominator=12)
        for size in PARTIAL_SIZES
    ]


@pytest.fixture
def three_point_space() -> FiniteMetricSpace:
    """b1, b2 at 3/5 with a base point c; endpoints 1/5 and 9/10 over {c}."""
    return FiniteMetricSpace.from_distances(
        ("b1", "b2", "c"),
        {
            ("b1", "b2"): Fraction(3, 5),
            ("b1", "c"): Fraction(2, 5),
            ("b2", "c"): Fraction(1, 2),
        },
    )


@pytest.fixture
def dividing_space() -> FiniteMetricSpace:
    """The dividing probe: a hugs b1 and b2 too tightly for their distance.

    Deliberately violates the ambient triangle inequality (d(b1, b2) = 3/5
    exceeds 1/10 + 1/10); the endpoint formulas and the oracle still agree
    that a depends on b1 b2 over {c}.
    """
    return FiniteMetricSpace.from_distances(
        ("a", "b1", "b2", "c"),
        {
            ("b1", "b2"): Fraction(3, 5),
            ("b1", "c"): Fraction(2, 5),
            ("b2", "c"): Fraction(1, 2),
            ("a", "b1"): Fraction(1, 10),
            ("a", "b2"): Fraction(1, 10),
            ("a", "c"): Fraction(2, 5),
        },
    )


@pytest.fixture
def extension_space() -> FiniteMetricSpace:
    """One point a, one target b_star, B = {b}, empty base."""
    return FiniteMetricSpace.from_distances(
        ("a", "b", "bstar"),
        {
            ("a", "b"): Fraction(1, 2),
            ("b", "bstar"): Fraction(3, 5),
            ("a", "bstar"): Fraction(3, 5),
        },
    )
