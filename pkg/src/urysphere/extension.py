"""Nonforking extension of types by one new point.

Given B with base C inside it and a target point b_*, each point b of B
contributes the bounds delta_b = d_min(b_*, b / C) and eps_b =
d_max(b_*, b / C).  For a point a independent from B over C, the admissible
distances from a fresh copy of a to b_* form the interval

    [ max(L(a), d_max(b_*, b_* / C) / 2),  U(a) ]

with U(a) = min over b of d(a, b) (+) delta_b and L(a) = max over b of
max(eps_b -. d(a, b), d(a, b) -. delta_b).  Choosing any gamma in this
interval, in particular the canonical gamma = U(a), yields a copy of a over
B that is independent from B together with b_* over C; doing so for every
point of a set A simultaneously is the one-point extension step, which is
all that iterated extension ever needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable

from .independence import (
    DependenceError,
    Interval,
    d_max,
    d_min,
    independent,
)
from .metric import (
    ONE,
    ZERO,
    FiniteMetricSpace,
    Label,
    as_dist,
    dotminus,
    fresh_label,
    truncated_add,
)


class InvalidGammaError(ValueError):
    """A requested target distance lies outside the admissible interval."""

    def __init__(self, gamma: Fraction, interval: Interval):
        super().__init__(
            f"gamma {gamma} outside admissible interval [{interval.lo}, {interval.hi}]"
        )
        self.gamma = gamma
        self.interval = interval


@dataclass(frozen=True)
class ExtensionOutcome:
    """An extended space plus the chosen target distance per source point."""

    space: FiniteMetricSpace
    assignments: tuple[tuple[Label, Label, Fraction], ...]  # (source, copy, gamma)


@dataclass(frozen=True)
class ExtensionProblem:
    """A configuration (A, B, C, b_*) inside one ambient space.

    ``B`` is normalized to contain ``C`` on creation (enlarging B by C
    changes no independence statement).  The ambient space must satisfy the
    triangle inequality; with that, a point of B equal to b_* is harmless:
    the bounds then pin the admissible interval to the recorded distance.
    """

    space: FiniteMetricSpace
    a_set: tuple[Label, ...]
    b_set: tuple[Label, ...]
    base: tuple[Label, ...]
    b_star: Label

    @classmethod
    def create(
        cls,
        space: FiniteMetricSpace,
        a_set: Iterable[Label],
        b_set: Iterable[Label],
        base: Iterable[Label],
        b_star: Label,
    ) -> ExtensionProblem:
        if not space.is_metric:
            raise ValueError("ambient space violates the triangle inequality")
        space.index(b_star)
        a = space.subset(a_set)
        c = space.subset(base)
        b = space.subset(tuple(b_set) + c)
        return cls(space, a, b, c, b_star)

    def delta(self, b: Label) -> Fraction:
        """d_min(b_*, b / C), the slack below the recorded distance."""
        return self._bounds[b][0]

    def epsilon(self, b: Label) -> Fraction:
        """d_max(b_*, b / C), the stretch above it."""
        return self._bounds[b][1]

    @cached_property
    def _bounds(self) -> dict[Label, tuple[Fraction, Fraction]]:
        return {
            b: (
                d_min(self.space, self.b_star, b, self.base),
                d_max(self.space, self.b_star, b, self.base),
            )
            for b in self.b_set
        }

    @cached_property
    def half(self) -> Fraction:
        """Least gamma whose doubled truncated value reaches d_max(b_*, b_* / C)."""
        return d_max(self.space, self.b_star, self.b_star, self.base) / 2

    def upper(self, a: Label) -> Fraction:
        """U(a): cheapest detour to b_* through B; 1 when B is empty."""
        self.space.index(a)
        if not self.b_set:
            return ONE
        return min(
            truncated_add(self.space.dist(a, b), self.delta(b)) for b in self.b_set
        )

    def lower(self, a: Label) -> Fraction:
        """L(a): largest forced distance to b_*; 0 when B is empty."""
        self.space.index(a)
        value = ZERO
        for b in self.b_set:
            d = self.space.dist(a, b)
            value = max(value, dotminus(self.epsilon(b), d), dotminus(d, self.delta(b)))
        return value

    def admissible_gammas(self, a: Label) -> Interval:
        """All target distances extending tp(a/B) independently over C.

        Nonempty whenever {a} is independent from B over C; an empty result
        is therefore reported as a violation of that precondition, with the
        certificate attached.
        """
        interval = Interval(max(self.lower(a), self.half), self.upper(a))
        if interval.is_empty:
            verdict = independent(self.space, (a,), self.b_set, self.base)
            if not verdict:
                raise DependenceError(
                    f"{a!r} is not independent from B over the base; "
                    "no admissible extension distance exists",
                    verdict.certificate,
                )
            raise AssertionError(
                "empty admissible interval despite independence"
            )  # unreachable: independence forces L <= U and half <= U
        return interval

    def candidate_extension(self, a: Label, gamma: Fraction | int | str) -> tuple[FiniteMetricSpace, Label]:
        """The unvalidated one-point extension: a copy of a over B at distance gamma.

        Returns the space on B, b_* and the fresh copy, plus the copy's
        label.  No admissibility gate: oracles probe gamma freely and judge
        the result by triangle validity and independence.

        When b_* lies in B, the copy's type over B already pins its distance
        to b_*; a probe gamma that disagrees with the recorded distance is
        then routed through a zero-distance twin of b_*, so the candidate
        carries both constraints and the triangle check rejects it exactly
        when they conflict.
        """
        g = as_dist(gamma)
        self.space.index(a)
        base_space = self.space.restrict(self.b_set + (self.b_star,))
        copy = fresh_label(f"{a}'", base_space.points)
        dists: dict[Label, Fraction] = {
            b: self.space.dist(a, b) for b in base_space.points
        }
        if self.b_star in self.b_set and g != dists[self.b_star]:
            twin = fresh_label(f"{self.b_star}~", base_space.points)
            base_space = base_space.with_point(
                twin, {b: self.space.dist(self.b_star, b) for b in base_space.points}
            )
            dists[twin] = g
        else:
            dists[self.b_star] = g
        return base_space.with_point(copy, dists), copy

    def extend_one(self, a: Label, gamma: Fraction | int | str) -> ExtensionOutcome:
        """Extend tp(a/B) by d(copy, b_*) = gamma for an admissible gamma."""
        g = as_dist(gamma)
        interval = self.admissible_gammas(a)
        if g not in interval:
            raise InvalidGammaError(g, interval)
        space, copy = self.candidate_extension(a, g)
        return ExtensionOutcome(space, ((a, copy, g),))

    def extend_all(self) -> ExtensionOutcome:
        """Extend every point of A at once, each at its canonical gamma = U(a).

        Requires A independent from B over C; the result is a valid space in
        which the copies remain independent from B plus b_* over C.
        """
        verdict = independent(self.space, self.a_set, self.b_set, self.base)
        if not verdict:
            raise DependenceError(
                "A is not independent from B over the base", verdict.certificate
            )
        base_points = self.space.subset(self.b_set + (self.b_star,))
        taken = set(base_points)
        copies: dict[Label, Label] = {}
        for a in self.a_set:
            copies[a] = fresh_label(f"{a}'", taken)
            taken.add(copies[a])

        dists: dict[tuple[Label, Label], Fraction] = {}
        for i, x in enumerate(base_points):
            for y in base_points[i + 1 :]:
                dists[(x, y)] = self.space.dist(x, y)
        uppers = {a: self.upper(a) for a in self.a_set}
        for a in self.a_set:
            for b in self.b_set:
                dists[(copies[a], b)] = self.space.dist(a, b)
            if self.b_star in self.b_set:
                # forced: independence makes U(a) equal the recorded distance
                assert uppers[a] == self.space.dist(a, self.b_star)
            dists[(copies[a], self.b_star)] = uppers[a]
        for i, a1 in enumerate(self.a_set):
            for a2 in self.a_set[i + 1 :]:
                dists[(copies[a1], copies[a2])] = self.space.dist(a1, a2)

        points = base_points + tuple(copies[a] for a in self.a_set)
        space = FiniteMetricSpace.from_distances(points, dists)
        assignments = tuple((a, copies[a], uppers[a]) for a in self.a_set)
        return ExtensionOutcome(space, assignments)
