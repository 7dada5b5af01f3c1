"""Exact arithmetic and finite (partial) metric spaces of diameter at most 1.

Every distance is a nonnegative rational bounded by 1, held exactly as a
``fractions.Fraction``; no operation ever rounds.  Sums of distances are
truncated at 1 (``a (+) b = min(1, a + b)``), which keeps a diameter-1 space
closed under path-length calculations.  Two conventions apply throughout:
the infimum of an empty set of distances is 1 and the supremum is 0.

A partial space may leave pairs undefined.  Completing one sends every pair
to the cheapest chain of defined distances connecting it, and to 1 when no
chain exists.  Pseudometrics (distinct labels at distance zero) are legal
everywhere; callers who need a genuine metric can quotient explicitly with
:func:`quotient_by_zero_distances`, which is never applied implicitly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

Label = str

ZERO = Fraction(0)
ONE = Fraction(1)

# Scaled integer sums must stay inside int64 for the numpy kernels; larger
# common denominators fall back to pure-Python big integers.
_INT64_SAFE_DEN = 1 << 60


class UnknownLabelError(KeyError):
    """A label does not name a point of the space at hand."""

    def __str__(self) -> str:  # KeyError quotes its payload; keep it readable
        return self.args[0] if self.args else ""


def as_dist(value: Fraction | int | str) -> Fraction:
    """Coerce ``value`` to an exact rational and require it to lie in [0, 1]."""
    d = Fraction(value)
    if not ZERO <= d <= ONE:
        raise ValueError(f"distance {d} outside [0, 1]")
    return d


def truncated_add(r: Fraction, s: Fraction) -> Fraction:
    """min(1, r + s), the additive operation for diameter-1 spaces."""
    return min(ONE, r + s)


def dotminus(r: Fraction, s: Fraction) -> Fraction:
    """max(0, r - s)."""
    return max(ZERO, r - s)


def truncated_sum(values: Iterable[Fraction]) -> Fraction:
    """Truncated sum of a chain of distances; 0 for the empty chain."""
    return min(ONE, sum(values, start=ZERO))


def fresh_label(base: str, taken: Iterable[str]) -> Label:
    """Deterministically derive a label not present in ``taken``."""
    used = set(taken)
    label = base
    while label in used:
        label += "'"
    return label


# ---------------------------------------------------------------------------
# scaled-integer kernels
#
# All hot-path checks run on integer matrices over a common denominator,
# which is exact and lets numpy do the O(n^3) work.  Truncation at 1 never
# needs explicit handling here: values start <= den and relaxations only
# take minima, so a comparison against a plain integer sum is equivalent to
# one against the truncated sum.


def _common_denominator(values: Iterable[Fraction]) -> int:
    den = 1
    for v in values:
        den = lcm(den, v.denominator)
    return den


def _int_rows(rows: Sequence[Sequence[Fraction]], den: int) -> list[list[int]]:
    # den is a multiple of every denominator, so this is exact integer math
    return [[v.numerator * (den // v.denominator) for v in row] for row in rows]


def _closure_int(rows: list[list[int]], den: int) -> list[list[int]]:
    """All-pairs min-plus closure of a scaled matrix (Floyd-Warshall)."""
    n = len(rows)
    if den <= _INT64_SAFE_DEN:
        arr = np.array(rows, dtype=np.int64)
        for k in range(n):
            np.minimum(arr, arr[:, k][:, None] + arr[k, :][None, :], out=arr)
        return arr.tolist()
    out = [row[:] for row in rows]
    for k in range(n):
        rk = out[k]
        for i in range(n):
            dik = out[i][k]
            ri = out[i]
            for j in range(n):
                s = dik + rk[j]
                if s < ri[j]:
                    ri[j] = s
    return out


def _triangle_violation_int(rows: list[list[int]], den: int) -> tuple[int, int, int] | None:
    """First (i, k, j) with d(i,j) > d(i,k) + d(k,j), or None."""
    n = len(rows)
    if n < 3:
        return None
    if den <= _INT64_SAFE_DEN:
        arr = np.array(rows, dtype=np.int64)
        paths = (arr[:, :, None] + arr[None, :, :]).min(axis=1)
        bad = arr > paths
        if not bad.any():
            return None
        i, j = (int(v) for v in np.argwhere(bad)[0])
        k = min(range(n), key=lambda h: rows[i][h] + rows[h][j])
        return i, k, j
    for i in range(n):
        ri = rows[i]
        for j in range(n):
            dij = ri[j]
            for k in range(n):
                if dij > ri[k] + rows[k][j]:
                    return i, k, j
    return None


def _trusted_space(
    points: tuple[Label, ...], matrix: tuple[tuple[Fraction, ...], ...]
) -> FiniteMetricSpace:
    """Construct a space skipping constructor validation.

    Only for internal callers whose matrices are symmetric, zero-diagonal and
    range-correct by construction; public entry points keep the checks.
    """
    space = object.__new__(FiniteMetricSpace)
    object.__setattr__(space, "points", points)
    object.__setattr__(space, "matrix", matrix)
    return space


# ---------------------------------------------------------------------------
# total spaces


@dataclass(frozen=True)
class TriangleViolation:
    """d(x, y) exceeds the truncated one-stop path through ``via``."""

    x: Label
    via: Label
    y: Label
    lhs: Fraction  # d(x, y)
    rhs: Fraction  # d(x, via) (+) d(via, y)


@dataclass(frozen=True)
class FiniteMetricSpace:
    """A total symmetric distance assignment on finitely many labelled points.

    The constructor enforces symmetry, a zero diagonal, and the [0, 1] range,
    but not the triangle inequality: candidate spaces built by the witness
    generators are deliberately allowed to be invalid and are interrogated
    through :meth:`triangle_violation`.
    """

    points: tuple[Label, ...]
    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.points)
        if len(set(self.points)) != n:
            raise ValueError("point labels must be distinct")
        if len(self.matrix) != n or any(len(row) != n for row in self.matrix):
            raise ValueError("distance matrix shape does not match point count")
        for i in range(n):
            if self.matrix[i][i] != ZERO:
                raise ValueError(f"nonzero self-distance at {self.points[i]!r}")
            for j in range(i + 1, n):
                v = self.matrix[i][j]
                if v != self.matrix[j][i]:
                    raise ValueError(
                        f"asymmetric distances for ({self.points[i]!r}, {self.points[j]!r})"
                    )
                if not ZERO <= v <= ONE:
                    raise ValueError(f"distance {v} outside [0, 1]")

    @classmethod
    def from_distances(
        cls,
        points: Iterable[Label],
        distances: Mapping[tuple[Label, Label], Fraction | int | str],
    ) -> FiniteMetricSpace:
        """Build from a pair map; every unordered pair of distinct points is required.

        Diagonal entries may be supplied but must be zero.  A pair given in
        both orientations must agree.
        """
        pts = tuple(points)
        index = {p: i for i, p in enumerate(pts)}
        if len(index) != len(pts):
            raise ValueError("point labels must be distinct")
        n = len(pts)
        grid: list[list[Fraction | None]] = [[None] * n for _ in range(n)]
        for i in range(n):
            grid[i][i] = ZERO
        for (x, y), raw in distances.items():
            if x not in index:
                raise UnknownLabelError(f"unknown label {x!r}")
            if y not in index:
                raise UnknownLabelError(f"unknown label {y!r}")
            v = as_dist(raw)
            i, j = index[x], index[y]
            if i == j:
                if v != ZERO:
                    raise ValueError(f"nonzero self-distance at {x!r}")
                continue
            current = grid[i][j]
            if current is not None and current != v:
                raise ValueError(f"conflicting distances for ({x!r}, {y!r})")
            grid[i][j] = grid[j][i] = v
        for i in range(n):
            for j in range(i + 1, n):
                if grid[i][j] is None:
                    raise ValueError(f"missing distance for ({pts[i]!r}, {pts[j]!r})")
        return cls(pts, tuple(tuple(row) for row in grid))  # type: ignore[arg-type]

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def __iter__(self) -> Iterator[Label]:
        return iter(self.points)

    @cached_property
    def _index(self) -> dict[Label, int]:
        return {p: i for i, p in enumerate(self.points)}

    def index(self, label: Label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabelError(f"unknown label {label!r}") from None

    def dist(self, x: Label, y: Label) -> Fraction:
        return self.matrix[self.index(x)][self.index(y)]

    def subset(self, labels: Iterable[Label]) -> tuple[Label, ...]:
        """Validate ``labels`` and return them deduplicated, in point order."""
        picked = sorted({self.index(x) for x in labels})
        return tuple(self.points[i] for i in picked)

    @cached_property
    def _violation(self) -> TriangleViolation | None:
        den = _common_denominator(itertools.chain.from_iterable(self.matrix))
        hit = _triangle_violation_int(_int_rows(self.matrix, den), den)
        if hit is None:
            return None
        i, k, j = hit
        return TriangleViolation(
            x=self.points[i],
            via=self.points[k],
            y=self.points[j],
            lhs=self.matrix[i][j],
            rhs=truncated_add(self.matrix[i][k], self.matrix[k][j]),
        )

    def triangle_violation(self) -> TriangleViolation | None:
        """A witness triple breaking the triangle inequality, if any."""
        return self._violation

    @property
    def is_metric(self) -> bool:
        """True when every triangle holds (the space may still be a pseudometric)."""
        return self._violation is None

    def restrict(self, labels: Iterable[Label]) -> FiniteMetricSpace:
        """The induced subspace on ``labels`` (deduplicated, point order kept)."""
        keep = [self.index(x) for x in self.subset(labels)]
        rows = tuple(tuple(self.matrix[i][j] for j in keep) for i in keep)
        return _trusted_space(tuple(self.points[i] for i in keep), rows)

    def with_point(
        self, label: Label, distances: Mapping[Label, Fraction | int | str]
    ) -> FiniteMetricSpace:
        """Adjoin a fresh point with the given distances to every existing point."""
        if label in self._index:
            raise ValueError(f"label {label!r} already present")
        missing = [p for p in self.points if p not in distances]
        if missing:
            raise ValueError(f"no distance given from {label!r} to {missing[0]!r}")
        extra = [x for x in distances if x not in self._index]
        if extra:
            raise UnknownLabelError(f"unknown label {extra[0]!r}")
        column = [as_dist(distances[p]) for p in self.points]
        rows = [
            tuple(row) + (column[i],) for i, row in enumerate(self.matrix)
        ]
        rows.append(tuple(column) + (ZERO,))
        return _trusted_space(self.points + (label,), tuple(rows))

    def to_partial(self) -> PartialSemimetric:
        """The same distances viewed as a (fully defined) partial space."""
        n = len(self.points)
        entries = tuple(
            (i, j, self.matrix[i][j])
            for i in range(n)
            for j in range(i + 1, n)
        )
        return PartialSemimetric(self.points, entries)


# ---------------------------------------------------------------------------
# partial spaces


@dataclass(frozen=True)
class PartialSemimetric:
    """A symmetric partially-defined distance function, zero on the diagonal.

    Diagonal pairs are always part of the domain (with value 0) and are kept
    implicit; ``entries`` stores off-diagonal domain pairs as index triples
    ``(i, j, value)`` with ``i < j``, sorted.
    """

    points: tuple[Label, ...]
    entries: tuple[tuple[int, int, Fraction], ...]

    def __post_init__(self) -> None:
        n = len(self.points)
        if len(set(self.points)) != n:
            raise ValueError("point labels must be distinct")
        seen: set[tuple[int, int]] = set()
        previous: tuple[int, int] | None = None
        for i, j, v in self.entries:
            if not (0 <= i < j < n):
                raise ValueError(f"bad index pair ({i}, {j})")
            if (i, j) in seen:
                raise ValueError(f"duplicate entry ({i}, {j})")
            if previous is not None and (i, j) < previous:
                raise ValueError("entries must be sorted")
            if not ZERO <= v <= ONE:
                raise ValueError(f"distance {v} outside [0, 1]")
            seen.add((i, j))
            previous = (i, j)

    @classmethod
    def from_pairs(
        cls,
        points: Iterable[Label],
        pairs: Mapping[tuple[Label, Label], Fraction | int | str],
    ) -> PartialSemimetric:
        """Build from a label-pair map; symmetric duplicates must agree."""
        pts = tuple(points)
        index = {p: i for i, p in enumerate(pts)}
        if len(index) != len(pts):
            raise ValueError("point labels must be distinct")
        table: dict[tuple[int, int], Fraction] = {}
        for (x, y), raw in pairs.items():
            if x not in index:
                raise UnknownLabelError(f"unknown label {x!r}")
            if y not in index:
                raise UnknownLabelError(f"unknown label {y!r}")
            v = as_dist(raw)
            i, j = index[x], index[y]
            if i == j:
                if v != ZERO:
                    raise ValueError(f"nonzero self-distance at {x!r}")
                continue
            key = (i, j) if i < j else (j, i)
            if key in table and table[key] != v:
                raise ValueError(f"conflicting distances for ({x!r}, {y!r})")
            table[key] = v
        entries = tuple((i, j, table[(i, j)]) for i, j in sorted(table))
        return cls(pts, entries)

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, label: object) -> bool:
        return label in self._index

    @cached_property
    def _index(self) -> dict[Label, int]:
        return {p: i for i, p in enumerate(self.points)}

    @cached_property
    def _table(self) -> dict[tuple[int, int], Fraction]:
        return {(i, j): v for i, j, v in self.entries}

    @cached_property
    def _neighbors(self) -> tuple[tuple[int, ...], ...]:
        """Off-diagonal domain neighbours of each point, by index."""
        adj: list[list[int]] = [[] for _ in self.points]
        for i, j, _ in self.entries:
            adj[i].append(j)
            adj[j].append(i)
        return tuple(tuple(sorted(nbrs)) for nbrs in adj)

    def index(self, label: Label) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabelError(f"unknown label {label!r}") from None

    def defined(self, x: Label, y: Label) -> bool:
        i, j = self.index(x), self.index(y)
        return i == j or ((min(i, j), max(i, j)) in self._table)

    def get(self, x: Label, y: Label) -> Fraction | None:
        """The assigned distance, 0 on the diagonal, None outside the domain."""
        i, j = self.index(x), self.index(y)
        if i == j:
            return ZERO
        return self._table.get((min(i, j), max(i, j)))

    def pairs(self) -> Iterator[tuple[Label, Label, Fraction]]:
        """Off-diagonal domain pairs as labelled triples."""
        for i, j, v in self.entries:
            yield self.points[i], self.points[j], v


# ---------------------------------------------------------------------------
# completion, consistency, transitivity


def path_completion(partial: PartialSemimetric) -> FiniteMetricSpace:
    """Complete a partial space to the cheapest-chain pseudometric.

    Every pair gets the minimum truncated chain length over sequences whose
    consecutive pairs are all defined; pairs with no connecting chain get 1
    (the empty infimum).  The result always satisfies the triangle inequality
    and never exceeds the assigned value on a defined pair.
    """
    n = len(partial.points)
    den = _common_denominator(v for _, _, v in partial.entries)
    rows = [[den] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = 0
    for i, j, v in partial.entries:
        rows[i][j] = rows[j][i] = int(v * den)
    closed = _closure_int(rows, den)
    matrix = tuple(
        tuple(Fraction(closed[i][j], den) for j in range(n)) for i in range(n)
    )
    return _trusted_space(partial.points, matrix)


@dataclass(frozen=True)
class ConsistencyCheck:
    """Outcome of a consistency test, with a short chain as counterexample.

    ``witness`` is a sequence (x_0, ..., x_m) of points, consecutive pairs
    all defined, whose truncated chain length undercuts the assigned
    distance between x_0 and x_m.
    """

    consistent: bool
    witness: tuple[Label, ...] | None
    completion: FiniteMetricSpace

    def __bool__(self) -> bool:
        return self.consistent


def is_consistent(partial: PartialSemimetric) -> ConsistencyCheck:
    """Decide whether some pseudometric extends the partial assignment.

    Equivalent to the completion agreeing with the assignment on every
    defined pair; on failure the returned check carries a violating chain.
    """
    completion = path_completion(partial)
    for x, y, v in partial.pairs():
        if completion.dist(x, y) < v:
            chain = _cheapest_chain(partial, partial.index(x), partial.index(y))
            return ConsistencyCheck(False, chain, completion)
    return ConsistencyCheck(True, None, completion)


def _cheapest_chain(partial: PartialSemimetric, start: int, end: int) -> tuple[Label, ...]:
    """Reconstruct a cheapest defined chain between two points.

    Only called for pairs whose completion undercuts the assignment, so a
    chain of defined pairs with finite weight is guaranteed to exist.
    """
    n = len(partial.points)
    den = _common_denominator(v for _, _, v in partial.entries)
    missing = den * (n + 2)
    dist = [[missing] * n for _ in range(n)]
    via = [[-1] * n for _ in range(n)]
    for i in range(n):
        dist[i][i] = 0
    for i, j, v in partial.entries:
        dist[i][j] = dist[j][i] = int(v * den)
    for k in range(n):
        for i in range(n):
            dik = dist[i][k]
            for j in range(n):
                s = dik + dist[k][j]
                if s < dist[i][j]:
                    dist[i][j] = s
                    via[i][j] = k

    def unfold(i: int, j: int) -> list[int]:
        k = via[i][j]
        if k < 0:
            return [i, j]
        return unfold(i, k)[:-1] + unfold(k, j)

    return tuple(partial.points[i] for i in unfold(start, end))


def check_m_transitive(partial: PartialSemimetric, m: int) -> bool:
    """Direct enumeration of all defined chains with ``m`` steps.

    Checks that no chain (x_0, ..., x_m) with every consecutive pair and the
    endpoint pair defined undercuts the assigned endpoint distance.  This is
    the brute-force counterpart of :func:`is_consistent`: consistency holds
    exactly when the check passes for every m up to the number of points.
    Branches whose running length already reaches the largest assigned
    distance from the start point are pruned; they cannot produce a
    violation.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    n = len(partial.points)
    den = _common_denominator(v for _, _, v in partial.entries)
    weight: dict[tuple[int, int], int] = {}
    for i, j, v in partial.entries:
        w = int(v * den)
        weight[(i, j)] = weight[(j, i)] = w
    neighbors = partial._neighbors

    for start in range(n):
        targets = {start: 0}
        for j in neighbors[start]:
            targets[j] = weight[(start, j)]
        bound = max(targets.values())
        if bound == 0:
            continue

        def walk(u: int, depth: int, total: int) -> bool:
            if depth == m:
                goal = targets.get(u)
                return goal is not None and total < goal
            nxt = depth + 1
            # zero-weight self-step: chains may repeat a point in place
            if total < bound and walk(u, nxt, total):
                return True
            for v in neighbors[u]:
                t = total + weight[(u, v)]
                if t < bound and walk(v, nxt, t):
                    return True
            return False

        if walk(start, 0, 0):
            return False
    return True


def quotient_by_zero_distances(
    space: FiniteMetricSpace,
) -> tuple[FiniteMetricSpace, dict[Label, Label]]:
    """Collapse zero-distance classes of a valid space to their first points.

    Returns the quotient space and the label -> representative map.  Requires
    the triangle inequality, which makes zero-distance an equivalence
    relation; the quotient is then a genuine metric on the representatives.
    """
    if not space.is_metric:
        raise ValueError("cannot quotient a space violating the triangle inequality")
    n = len(space.points)
    rep = list(range(n))
    for i in range(n):
        for j in range(i + 1, n):
            if space.matrix[i][j] == ZERO and rep[j] == j:
                rep[j] = rep[i]
    keep = [i for i in range(n) if rep[i] == i]
    rows = tuple(tuple(space.matrix[i][j] for j in keep) for i in keep)
    quotient = FiniteMetricSpace(tuple(space.points[i] for i in keep), rows)
    mapping = {space.points[i]: space.points[rep[i]] for i in range(n)}
    return quotient, mapping
