"""Indiscernible-sequence templates, n-cyclicity, and canonical witnesses.

An indiscernible sequence of k-tuples is determined, up to isometry, by the
within-tuple distances ``delta[i][j]`` and the cross-tuple distances
``eps[i][j]`` between an earlier copy's i-th and a later copy's j-th point
(the same for every ordered pair of copies).  Three copies see every possible
triangle shape, so a template describes an actual sequence exactly when its
three-copy unfolding is a metric space.

The sequence is n-cyclic when its two-copy pattern can be amalgamated around
an n-cycle.  That reduces to a tropical condition: along every directed walk
of n-1 steps in ``eps`` the reversed endpoint entry must not exceed the walk
length, decidable through (min, truncated-plus) matrix powers.  Failures of
cyclicity witness the strong order properties; the explicit families that
realize them are provided as generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import lcm
from typing import Iterable, Sequence

from .metric import (
    ONE,
    ZERO,
    FiniteMetricSpace,
    PartialSemimetric,
    Label,
    TriangleViolation,
    as_dist,
    truncated_add,
)

Matrix = tuple[tuple[Fraction, ...], ...]


def _coerce_matrix(rows: Sequence[Sequence[Fraction | int | str]]) -> Matrix:
    return tuple(tuple(as_dist(v) for v in row) for row in rows)


@dataclass(frozen=True)
class SequenceTemplate:
    """Order-invariant distance data (delta, eps) of a sequence of k-tuples.

    ``delta`` must be symmetric with a zero diagonal; ``eps`` is arbitrary in
    [0, 1] and need not be symmetric (its diagonal is the distance between
    corresponding points of two copies, which is free data).  Whether the
    template describes a realizable sequence is decided separately by
    :func:`validate_template`.
    """

    delta: Matrix
    eps: Matrix

    def __post_init__(self) -> None:
        k = len(self.delta)
        if k < 1:
            raise ValueError("tuple length must be at least 1")
        if any(len(row) != k for row in self.delta) or len(self.eps) != k or any(
            len(row) != k for row in self.eps
        ):
            raise ValueError("delta and eps must be square matrices of equal size")
        for i in range(k):
            if self.delta[i][i] != ZERO:
                raise ValueError("delta must vanish on the diagonal")
            for j in range(i + 1, k):
                if self.delta[i][j] != self.delta[j][i]:
                    raise ValueError("delta must be symmetric")

    @classmethod
    def from_rows(
        cls,
        delta: Sequence[Sequence[Fraction | int | str]],
        eps: Sequence[Sequence[Fraction | int | str]],
    ) -> SequenceTemplate:
        return cls(_coerce_matrix(delta), _coerce_matrix(eps))

    @property
    def k(self) -> int:
        return len(self.delta)

    def unfold(self, copies: int = 3) -> FiniteMetricSpace:
        """The total space on ``copies`` copies: delta within, eps across.

        Points are labelled ``x{l}_{i}`` with copy index l and coordinate i,
        both 1-based; for copies l < m the distance from x{l}_i to x{m}_j is
        eps[i][j].
        """
        if copies < 1:
            raise ValueError("need at least one copy")
        k = self.k
        labels = [
            [f"x{l}_{i}" for i in range(1, k + 1)] for l in range(1, copies + 1)
        ]
        points = tuple(lbl for row in labels for lbl in row)
        dists: dict[tuple[Label, Label], Fraction] = {}
        for l in range(copies):
            for i in range(k):
                for j in range(i + 1, k):
                    dists[(labels[l][i], labels[l][j])] = self.delta[i][j]
                for m in range(l + 1, copies):
                    for j in range(k):
                        dists[(labels[l][i], labels[m][j])] = self.eps[i][j]
        return FiniteMetricSpace.from_distances(points, dists)


@dataclass(frozen=True)
class TemplateCheck:
    valid: bool
    violation: TriangleViolation | None

    def __bool__(self) -> bool:
        return self.valid


def validate_template(template: SequenceTemplate) -> TemplateCheck:
    """Whether the template describes a realizable indiscernible sequence.

    Distances in any unfolding depend only on the relative order of the copy
    indices involved, and a triangle touches at most three copies, so the
    three-copy unfolding already exhibits every triangle shape of every
    longer unfolding.
    """
    violation = template.unfold(3).triangle_violation()
    return TemplateCheck(violation is None, violation)


# ---------------------------------------------------------------------------
# tropical machinery


def min_plus_identity(k: int) -> Matrix:
    """Zero-step walks: 0 on the diagonal, the empty infimum 1 elsewhere."""
    return tuple(
        tuple(ZERO if i == j else ONE for j in range(k)) for i in range(k)
    )


def min_plus_product(a: Matrix, b: Matrix) -> Matrix:
    """Matrix product over (min, truncated +)."""
    k = len(a)
    return tuple(
        tuple(
            min(truncated_add(a[i][h], b[h][j]) for h in range(k))
            for j in range(k)
        )
        for i in range(k)
    )


def min_plus_power(matrix: Matrix, exponent: int) -> Matrix:
    """The exponent-fold tropical power; entry (i, j) is the cheapest walk
    of exactly ``exponent`` steps from i to j (vertices may repeat)."""
    if exponent < 0:
        raise ValueError("exponent must be nonnegative")
    result = min_plus_identity(len(matrix))
    for _ in range(exponent):
        result = min_plus_product(matrix, result)
    return result


def is_n_cyclic(template: SequenceTemplate, n: int) -> bool:
    """Whether the two-copy pattern amalgamates around an n-cycle.

    Holds iff for all indices i, j the reversed entry eps[j][i] is at most
    the cheapest (n-1)-step walk from i to j.  For n = 1 there are no steps,
    so the condition degenerates to a vanishing eps diagonal.
    """
    if n < 1:
        raise ValueError("cycle length must be at least 1")
    power = min_plus_power(template.eps, n - 1)
    k = template.k
    return all(
        template.eps[j][i] <= power[i][j] for i in range(k) for j in range(k)
    )


def find_violating_cycle(template: SequenceTemplate, n: int) -> tuple[int, ...] | None:
    """A 1-based index cycle (i_1, ..., i_n) breaking n-cyclicity, or None."""
    if n < 1:
        raise ValueError("cycle length must be at least 1")
    k = template.k
    powers = [min_plus_identity(k)]
    for _ in range(n - 1):
        powers.append(min_plus_product(template.eps, powers[-1]))
    for i in range(k):
        for j in range(k):
            if template.eps[j][i] > powers[n - 1][i][j]:
                walk = [i]
                u = i
                for remaining in range(n - 1, 0, -1):
                    u = next(
                        h
                        for h in range(k)
                        if truncated_add(template.eps[u][h], powers[remaining - 1][h][j])
                        == powers[remaining][u][j]
                    )
                    walk.append(u)
                return tuple(v + 1 for v in walk)
    return None


def cyclicity_oracle(template: SequenceTemplate, n: int) -> bool:
    """n-cyclicity by enumerating all k**n index tuples.

    Checks eps[i_n][i_1] <= truncated sum of eps along i_1, ..., i_n for
    every tuple; the empty sum (n = 1) is 0.  Runs on integers over a common
    denominator, which is exact.
    """
    if n < 1:
        raise ValueError("cycle length must be at least 1")
    k = template.k
    den = 1
    for row in template.eps:
        for v in row:
            den = lcm(den, v.denominator)
    scaled = [[int(v * den) for v in row] for row in template.eps]
    for tup in product(range(k), repeat=n):
        total = 0
        for a, b in zip(tup, tup[1:]):
            total += scaled[a][b]
        if scaled[tup[-1]][tup[0]] > min(den, total):
            return False
    return True


# ---------------------------------------------------------------------------
# the n-cycle amalgam


def amalgam_space(template: SequenceTemplate, n: int) -> PartialSemimetric:
    """The partial space whose consistency is n-cyclicity of the template.

    Points x{l}_{i} for copies l = 1..n carry delta within a copy, eps
    between adjacent copies, and the reversed orientation eps[j][i] on the
    wrap-around pair of copies (1, n).  For n = 2 the adjacent and
    wrap-around constraints land on the same point pairs; where they
    disagree, the second value is rerouted to a zero-distance twin point,
    which encodes the conflicting pair of constraints faithfully inside a
    single-valued partial space.
    """
    if n < 2:
        raise ValueError("need at least two copies to amalgamate")
    k = template.k
    labels = [[f"x{l}_{i}" for i in range(1, k + 1)] for l in range(1, n + 1)]
    points: list[Label] = [lbl for row in labels for lbl in row]

    constraints: list[tuple[Label, Label, Fraction]] = []
    for l in range(n):
        for i in range(k):
            for j in range(i + 1, k):
                constraints.append((labels[l][i], labels[l][j], template.delta[i][j]))
    for l in range(n - 1):
        for i in range(k):
            for j in range(k):
                constraints.append((labels[l][i], labels[l + 1][j], template.eps[i][j]))
    for i in range(k):
        for j in range(k):
            constraints.append((labels[0][i], labels[n - 1][j], template.eps[j][i]))

    # constraints always list the earlier copy first, so (x, y) is canonical
    table: dict[tuple[Label, Label], Fraction] = {}
    twins = 0
    for x, y, v in constraints:
        current = table.get((x, y))
        if current is None:
            table[(x, y)] = v
        elif current != v:
            twins += 1
            twin = f"{y}~{twins}"
            points.append(twin)
            table[(y, twin)] = ZERO
            table[(x, twin)] = v
    return PartialSemimetric.from_pairs(tuple(points), table)


# ---------------------------------------------------------------------------
# witness families


def sopn_witness(n: int) -> SequenceTemplate:
    """The length-n template that is (n+1)-cyclic but not n-cyclic.

    With 1-based indices, eps[i][j] = (j - i + 1)/n for i <= j and
    (i - j)/n for i > j; delta matches eps above the diagonal.
    """
    if n < 1:
        raise ValueError("n must be at least 1")

    def eps_entry(i: int, j: int) -> Fraction:
        return Fraction(j - i + 1, n) if i <= j else Fraction(i - j, n)

    eps = tuple(
        tuple(eps_entry(i, j) for j in range(1, n + 1)) for i in range(1, n + 1)
    )
    delta = tuple(
        tuple(
            ZERO if i == j else Fraction(abs(j - i) + 1, n)
            for j in range(1, n + 1)
        )
        for i in range(1, n + 1)
    )
    return SequenceTemplate(delta, eps)


def tp2_array(rows: int, cols: int) -> FiniteMetricSpace:
    """The array witnessing the tree property of the second kind.

    Points a{m}_{i} sit at distance 1 within a row and 2/3 across rows, a
    valid metric.  A new point at distance 1/3 from two cells of one row is
    contradictory, while distance 1/3 to one cell per row is realizable.
    """
    if rows < 1 or cols < 1:
        raise ValueError("array dimensions must be positive")
    labels = [[f"a{m}_{i}" for i in range(1, cols + 1)] for m in range(1, rows + 1)]
    points = tuple(lbl for row in labels for lbl in row)
    across = Fraction(2, 3)
    dists: dict[tuple[Label, Label], Fraction] = {}
    for m in range(rows):
        for i in range(cols):
            for j in range(i + 1, cols):
                dists[(labels[m][i], labels[m][j])] = ONE
            for m2 in range(m + 1, rows):
                for j in range(cols):
                    dists[(labels[m][i], labels[m2][j])] = across
    return FiniteMetricSpace.from_distances(points, dists)
