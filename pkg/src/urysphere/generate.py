"""Seeded random generators for desk-scale test corpora.

Spaces come from completing random partial assignments on a bounded-
denominator grid, so they are valid by construction and stay on the grid.
Templates mix several always-valid families with light rejection sampling
near the cyclic/non-cyclic boundary.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .indiscernibles import SequenceTemplate, sopn_witness, validate_template
from .metric import FiniteMetricSpace, Label, PartialSemimetric, ZERO, path_completion


def random_partial_semimetric(
    rng: random.Random,
    size: int,
    denominator: int = 12,
    pair_prob: float = 0.5,
    prefix: str = "p",
) -> PartialSemimetric:
    points = tuple(f"{prefix}{i}" for i in range(size))
    pairs = {}
    for i in range(size):
        for j in range(i + 1, size):
            if rng.random() < pair_prob:
                pairs[(points[i], points[j])] = Fraction(
                    rng.randint(0, denominator), denominator
                )
    return PartialSemimetric.from_pairs(points, pairs)


def random_metric_space(
    rng: random.Random,
    size: int,
    denominator: int = 12,
    pair_prob: float = 0.75,
    prefix: str = "p",
) -> FiniteMetricSpace:
    """A valid (pseudo)metric space on the grid, via random partial + completion."""
    partial = random_partial_semimetric(rng, size, denominator, pair_prob, prefix)
    return path_completion(partial)


def random_roles(
    rng: random.Random, space: FiniteMetricSpace
) -> tuple[tuple[Label, ...], tuple[Label, ...], tuple[Label, ...]]:
    """Random (A, B, C) subsets; biased toward configurations where
    independence has a chance of holding (A empty or inside C now and then)."""
    pts = list(space.points)

    def sample(k_max: int) -> tuple[Label, ...]:
        k = rng.randint(0, min(k_max, len(pts)))
        return space.subset(rng.sample(pts, k))

    c = sample(2)
    b = sample(3)
    style = rng.random()
    if style < 0.2:
        a: tuple[Label, ...] = ()
    elif style < 0.4 and c:
        a = space.subset(rng.sample(c, rng.randint(1, len(c))))
    else:
        a = sample(2)
    return a, b, c


def _banded_template(rng: random.Random, k: int, denominator: int) -> SequenceTemplate:
    # all entries in [t, 2t]: every triangle holds automatically
    lo_num = rng.choice([i for i in range(3, denominator // 2 + 1)])
    hi_num = min(denominator, 2 * lo_num)

    def draw() -> Fraction:
        return Fraction(rng.randint(lo_num, hi_num), denominator)

    delta = [[ZERO] * k for _ in range(k)]
    eps = [[draw() for _ in range(k)] for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            delta[i][j] = delta[j][i] = draw()
    return SequenceTemplate(
        tuple(tuple(row) for row in delta), tuple(tuple(row) for row in eps)
    )


def _constant_template(rng: random.Random, k: int, denominator: int) -> SequenceTemplate:
    space = random_metric_space(rng, k, denominator)
    rows = space.matrix
    return SequenceTemplate(rows, rows)


def _perturbed_sopn(rng: random.Random, denominator: int) -> SequenceTemplate | None:
    n = rng.randint(2, 4)
    base = sopn_witness(n)
    step = Fraction(1, denominator)

    def jiggle(v: Fraction) -> Fraction:
        moved = v + rng.choice([-step, ZERO, step])
        return min(Fraction(1), max(ZERO, moved))

    eps = tuple(tuple(jiggle(v) for v in row) for row in base.eps)
    delta = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            delta[i][j] = delta[j][i] = jiggle(base.delta[i][j])
    template = SequenceTemplate(tuple(tuple(row) for row in delta), eps)
    return template if validate_template(template) else None


def _raw_template(rng: random.Random, k: int, denominator: int) -> SequenceTemplate | None:
    def draw() -> Fraction:
        return Fraction(rng.randint(0, denominator), denominator)

    delta = [[ZERO] * k for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            delta[i][j] = delta[j][i] = draw()
    eps = tuple(tuple(draw() for _ in range(k)) for _ in range(k))
    template = SequenceTemplate(tuple(tuple(row) for row in delta), eps)
    return template if validate_template(template) else None


def random_valid_template(
    rng: random.Random, max_k: int = 4, denominator: int = 12
) -> SequenceTemplate:
    """A random template passing validation, from a mix of families."""
    while True:
        style = rng.random()
        if style < 0.35:
            return _banded_template(rng, rng.randint(1, max_k), denominator)
        if style < 0.55:
            return _constant_template(rng, rng.randint(1, max_k), denominator)
        if style < 0.8:
            candidate = _perturbed_sopn(rng, denominator)
        else:
            candidate = _raw_template(rng, rng.randint(1, 2), denominator)
        if candidate is not None:
            return candidate
