"""Brute-force verification of the closed-form predicates.

Every oracle here decides its question by actually building the witness
configurations and checking them for consistency, never by evaluating the
endpoint formulas it is meant to confirm (the endpoints appear only to pick
which gammas to probe).  Disagreement between an oracle and its closed-form
counterpart on any instance is a build-failing event.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .extension import ExtensionProblem
from .independence import (
    DependenceError,
    build_gamma_witness,
    d_max,
    d_min,
    independent,
)
from .metric import FiniteMetricSpace, Label, fresh_label


def divides_oracle(
    space: FiniteMetricSpace, a: Label, b1: Label, b2: Label, base: Iterable[Label]
) -> bool:
    """Decide dividing by constructing three-copy sequences and testing them.

    Probes the endpoints of the achievable cross-copy interval and their
    midpoint; both failure conditions are monotone in the cross-copy
    distance, so an extremal gamma already exhibits any failure.  The point
    ``a`` is adjoined to each candidate sequence with its original distances
    to the pair and to the base, and dividing holds exactly when some
    candidate fails a triangle.
    """
    cs = space.subset(base)
    lo = d_min(space, b1, b2, cs)
    hi = d_max(space, b1, b2, cs)
    samples = {lo, (lo + hi) / 2, hi}
    for gamma in sorted(samples):
        witness = build_gamma_witness(space, b1, b2, cs, gamma, copies=3)
        label = fresh_label("x*", witness.space.points)
        dists: dict[Label, Fraction] = {c: space.dist(a, c) for c in witness.base}
        for first, second in witness.copy_pairs:
            dists[first] = space.dist(a, b1)
            dists[second] = space.dist(a, b2)
        amalgam = witness.space.with_point(label, dists)
        if amalgam.triangle_violation() is not None:
            return True
    return False


def interval_oracle(
    space: FiniteMetricSpace,
    b1: Label,
    b2: Label,
    base: Iterable[Label],
    grid_denominator: int,
) -> tuple[Fraction, ...]:
    """All grid gammas whose four-copy witness construction is consistent.

    Sweeps {0, 1/q, ..., 1} and keeps the gammas producing a valid space;
    the result must coincide with the closed-form interval intersected with
    the grid, which the acceptance suite asserts.
    """
    if grid_denominator < 1:
        raise ValueError("grid denominator must be positive")
    cs = space.subset(base)
    return tuple(
        gamma
        for k in range(grid_denominator + 1)
        if build_gamma_witness(
            space, b1, b2, cs, (gamma := Fraction(k, grid_denominator)), copies=4
        ).valid
    )


def extension_oracle(
    problem: ExtensionProblem, a: Label, grid_denominator: int
) -> tuple[Fraction, ...]:
    """All grid gammas admitting a valid, independent one-point extension.

    For each grid gamma the candidate extension is built outright and kept
    when it is a metric space in which the copy is independent from B plus
    b_* over the base; must match the closed-form admissible interval on the
    grid.  Requires {a} independent from B over the base.
    """
    if grid_denominator < 1:
        raise ValueError("grid denominator must be positive")
    verdict = independent(problem.space, (a,), problem.b_set, problem.base)
    if not verdict:
        raise DependenceError(
            f"{a!r} is not independent from B over the base", verdict.certificate
        )
    targets = problem.b_set + (problem.b_star,)
    good: list[Fraction] = []
    for k in range(grid_denominator + 1):
        gamma = Fraction(k, grid_denominator)
        candidate, copy = problem.candidate_extension(a, gamma)
        if candidate.triangle_violation() is not None:
            continue
        if independent(candidate, (copy,), targets, problem.base):
            good.append(gamma)
    return tuple(good)
