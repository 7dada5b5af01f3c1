"""The d_max/d_min calculus and the dividing independence predicate.

For points b1, b2 and a finite base set C,

    d_max(b1, b2 / C) = min over c in C of d(b1, c) (+) d(b2, c)   (1 if C empty)
    d_min(b1, b2 / C) = max( max over c of |d(b1, c) - d(b2, c)|,  d(b1, b2) / 3 )

and the achievable cross-copy distances of C-indiscernible sequences through
(b1, b2) form exactly the interval [d_min, d_max].  A set A is independent
from B over C precisely when adjoining A to C moves neither endpoint for any
pair from B; dividing and forking coincide here, so one predicate serves for
both.  Since all base sets are finite, the extrema are attained and every
comparison is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable

from .metric import (
    ONE,
    ZERO,
    FiniteMetricSpace,
    Label,
    TriangleViolation,
    _trusted_space,
    as_dist,
    fresh_label,
    truncated_add,
)


@dataclass(frozen=True)
class Interval:
    """A closed rational interval; empty when lo > hi."""

    lo: Fraction
    hi: Fraction

    @classmethod
    def empty(cls) -> Interval:
        return cls(ONE, ZERO)

    @property
    def is_empty(self) -> bool:
        return self.lo > self.hi

    def __contains__(self, value: object) -> bool:
        return self.lo <= value <= self.hi  # type: ignore[operator]

    def grid_points(self, denominator: int) -> tuple[Fraction, ...]:
        """The grid {0, 1/q, ..., 1} intersected with the interval."""
        if denominator < 1:
            raise ValueError("grid denominator must be positive")
        return tuple(
            g
            for k in range(denominator + 1)
            if (g := Fraction(k, denominator)) in self
        )


def d_max(space: FiniteMetricSpace, b1: Label, b2: Label, base: Iterable[Label]) -> Fraction:
    """Least truncated two-leg detour from b1 to b2 through the base; 1 if empty."""
    space.index(b1)
    space.index(b2)
    cs = space.subset(base)
    if not cs:
        return ONE
    return min(truncated_add(space.dist(b1, c), space.dist(b2, c)) for c in cs)


def d_min(space: FiniteMetricSpace, b1: Label, b2: Label, base: Iterable[Label]) -> Fraction:
    """Largest base-distance gap between b1 and b2, at least a third of d(b1, b2)."""
    value = space.dist(b1, b2) / 3
    for c in space.subset(base):
        gap = abs(space.dist(b1, c) - space.dist(b2, c))
        if gap > value:
            value = gap
    return value


def gamma_interval(
    space: FiniteMetricSpace, b1: Label, b2: Label, base: Iterable[Label]
) -> Interval:
    """The interval of cross-copy distances realizable by indiscernible sequences.

    Always nonempty: d_min <= d(b1, b2) <= d_max.
    """
    return Interval(d_min(space, b1, b2, base), d_max(space, b1, b2, base))


def divides_pair(
    space: FiniteMetricSpace, a: Label, b1: Label, b2: Label, base: Iterable[Label]
) -> bool:
    """True when the type of ``a`` over base + {b1, b2} divides over the base.

    The point depends exactly when one of the four endpoint inequalities
    fails for some choice of i, j in {1, 2} (the i = j instances included;
    (j, i) duplicates (i, j) and is skipped).
    """
    cs = space.subset(base)
    for bi, bj in ((b1, b1), (b1, b2), (b2, b2)):
        if truncated_add(space.dist(a, bi), space.dist(a, bj)) < d_max(space, bi, bj, cs):
            return True
        if abs(space.dist(a, bi) - space.dist(a, bj)) > d_min(space, bi, bj, cs):
            return True
    return False


@dataclass(frozen=True)
class IndependenceCertificate:
    """The first violated endpoint equation, for reproducible failure reports."""

    pair: tuple[Label, Label]
    equation: str  # "d_max" or "d_min"
    lhs: Fraction  # value over A union C
    rhs: Fraction  # value over C alone

    def to_json(self) -> dict:
        return {
            "pair": list(self.pair),
            "equation": self.equation,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
        }


@dataclass(frozen=True)
class IndependenceVerdict:
    independent: bool
    certificate: IndependenceCertificate | None

    def __bool__(self) -> bool:
        return self.independent


class DependenceError(ValueError):
    """An operation required independence that does not hold."""

    def __init__(self, message: str, certificate: IndependenceCertificate | None = None):
        super().__init__(message)
        self.certificate = certificate


def independent(
    space: FiniteMetricSpace,
    a_set: Iterable[Label],
    b_set: Iterable[Label],
    base: Iterable[Label],
) -> IndependenceVerdict:
    """Decide independence of A from B over C by endpoint preservation.

    True iff for every pair b1, b2 from B (repetitions included) both
    d_max and d_min computed over A united with C equal their values over C.
    Enlarging the base can only shrink d_max and grow d_min, so equality is
    the only passing outcome; the first failure is returned as a certificate,
    with distinct pairs examined before the degenerate b1 = b2 ones.
    """
    a = space.subset(a_set)
    b = space.subset(b_set)
    c = space.subset(base)
    ac = space.subset(a + c)
    pairs = [p for p in combinations_with_replacement(b, 2) if p[0] != p[1]] + [
        (x, x) for x in b
    ]
    for b1, b2 in pairs:
        hi_c = d_max(space, b1, b2, c)
        hi_ac = d_max(space, b1, b2, ac)
        if hi_ac != hi_c:
            return IndependenceVerdict(
                False, IndependenceCertificate((b1, b2), "d_max", hi_ac, hi_c)
            )
        lo_c = d_min(space, b1, b2, c)
        lo_ac = d_min(space, b1, b2, ac)
        if lo_ac != lo_c:
            return IndependenceVerdict(
                False, IndependenceCertificate((b1, b2), "d_min", lo_ac, lo_c)
            )
    return IndependenceVerdict(True, None)


def independent_pairwise(
    space: FiniteMetricSpace,
    a_set: Iterable[Label],
    b_set: Iterable[Label],
    base: Iterable[Label],
) -> bool:
    """Independence tested point by point: no single a depends on any pair from B.

    Equivalent to :func:`independent`; kept as a structurally different
    cross-check and exercised against it in the test suite.
    """
    a = space.subset(a_set)
    b = space.subset(b_set)
    c = space.subset(base)
    return not any(
        divides_pair(space, x, b1, b2, c)
        for x in a
        for b1, b2 in combinations_with_replacement(b, 2)
    )


@dataclass(frozen=True)
class GammaWitness:
    """A candidate indiscernible-sequence space at cross-copy distance gamma.

    ``space`` always carries the construction; ``valid`` records whether it
    satisfies every triangle, so callers may probe gamma outside the
    achievable interval and observe exactly where the construction breaks.
    """

    space: FiniteMetricSpace
    valid: bool
    violation: TriangleViolation | None
    copy_pairs: tuple[tuple[Label, Label], ...]
    base: tuple[Label, ...]


def build_gamma_witness(
    space: FiniteMetricSpace,
    b1: Label,
    b2: Label,
    base: Iterable[Label],
    gamma: Fraction | int | str,
    copies: int = 3,
) -> GammaWitness:
    """Lay out ``copies`` copies of (b1, b2) over the base at distance gamma.

    Within a copy the original distance is kept; distinct copies sit at
    gamma across indices and at min(d_max(b_i, b_i / C), d(b1, b2) (+) gamma,
    gamma (+) gamma) along the same index; every copy keeps the original
    distances to the base.  For gamma inside the achievable interval this is
    a valid space; outside, the violation shows up by three copies.
    """
    g = as_dist(gamma)
    if copies < 2:
        raise ValueError("need at least two copies")
    cs = space.subset(base)
    within = space.dist(b1, b2)
    doubled = truncated_add(g, g)
    stretched = truncated_add(within, g)
    same = (
        min(d_max(space, b1, b1, cs), stretched, doubled),
        min(d_max(space, b2, b2, cs), stretched, doubled),
    )

    taken = set(cs)
    copy_pairs: list[tuple[Label, Label]] = []
    for level in range(copies):
        first = fresh_label(f"{b1}@{level}", taken)
        taken.add(first)
        second = fresh_label(f"{b2}@{level}", taken)
        taken.add(second)
        copy_pairs.append((first, second))

    # assemble the matrix directly: base block, base columns, copy blocks
    nc = len(cs)
    n = nc + 2 * copies
    columns = (
        [space.dist(b1, c) for c in cs],
        [space.dist(b2, c) for c in cs],
    )
    rows = [[ZERO] * n for _ in range(n)]
    for i in range(nc):
        for j in range(i + 1, nc):
            rows[i][j] = rows[j][i] = space.dist(cs[i], cs[j])
    for level in range(copies):
        for side in range(2):
            p = nc + 2 * level + side
            for j in range(nc):
                rows[p][j] = rows[j][p] = columns[side][j]
        p, q = nc + 2 * level, nc + 2 * level + 1
        rows[p][q] = rows[q][p] = within
        for earlier in range(level):
            ep, eq = nc + 2 * earlier, nc + 2 * earlier + 1
            rows[ep][p] = rows[p][ep] = same[0]
            rows[eq][q] = rows[q][eq] = same[1]
            rows[ep][q] = rows[q][ep] = g
            rows[eq][p] = rows[p][eq] = g

    points = cs + tuple(lbl for pair in copy_pairs for lbl in pair)
    candidate = _trusted_space(points, tuple(tuple(row) for row in rows))
    violation = candidate.triangle_violation()
    return GammaWitness(
        space=candidate,
        valid=violation is None,
        violation=violation,
        copy_pairs=tuple(copy_pairs),
        base=cs,
    )
