"""The U/L bounds, admissible intervals, and one-point extensions."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from urysphere import (
    DependenceError,
    ExtensionProblem,
    InvalidGammaError,
    d_max,
    dstar_min,
    independent,
    truncated_add,
)
from urysphere.generate import random_metric_space, random_roles

F = Fraction


@pytest.fixture
def simple_problem(extension_space) -> ExtensionProblem:
    return ExtensionProblem.create(extension_space, ("a",), ("b",), (), "bstar")


@pytest.fixture
def dependent_problem() -> ExtensionProblem:
    """A valid space in which a depends on b1 b2 over {c}: 1/5 < 9/10."""
    from urysphere import FiniteMetricSpace

    space = FiniteMetricSpace.from_distances(
        ("a", "b1", "b2", "c"),
        {
            ("a", "b1"): F(1, 10),
            ("a", "b2"): F(1, 10),
            ("a", "c"): F(2, 5),
            ("b1", "b2"): F(1, 5),
            ("b1", "c"): F(2, 5),
            ("b2", "c"): F(1, 2),
        },
    )
    return ExtensionProblem.create(space, ("a",), ("b1", "b2"), ("c",), "b1")


def test_three_point_bounds(simple_problem):
    # delta_b = d(bstar, b)/3 = 1/5 over the empty base, eps_b = 1
    assert simple_problem.delta("b") == F(1, 5)
    assert simple_problem.epsilon("b") == 1
    assert simple_problem.upper("a") == F(7, 10)
    assert simple_problem.lower("a") == F(1, 2)
    assert simple_problem.half == F(1, 2)


def test_three_point_admissible_interval(simple_problem):
    interval = simple_problem.admissible_gammas("a")
    assert (interval.lo, interval.hi) == (F(1, 2), F(7, 10))


def test_empty_b_and_base_interval():
    space = random_metric_space(random.Random(41), 3)
    prob = ExtensionProblem.create(space, (), (), (), space.points[0])
    a = space.points[1]
    assert prob.upper(a) == 1
    assert prob.lower(a) == 0
    interval = prob.admissible_gammas(a)
    assert (interval.lo, interval.hi) == (F(1, 2), F(1))


def test_upper_bounded_by_own_slack():
    rng = random.Random(42)
    for _ in range(20):
        space = random_metric_space(rng, rng.randint(3, 5))
        pts = space.points
        b_star = rng.choice(pts)
        b_set = tuple(p for p in pts if rng.random() < 0.6)
        prob = ExtensionProblem.create(space, (), b_set, (), b_star)
        for a in prob.b_set:
            assert prob.upper(a) <= prob.delta(a)


def test_degeneration_when_b_equals_base():
    rng = random.Random(43)
    for _ in range(25):
        space = random_metric_space(rng, rng.randint(2, 5))
        pts = space.points
        base = tuple(p for p in pts if rng.random() < 0.5)
        b_star = rng.choice(pts)
        prob = ExtensionProblem.create(space, (), base, base, b_star)
        for a in pts:
            assert prob.upper(a) == d_max(space, a, b_star, base)
            assert prob.lower(a) == dstar_min(space, a, b_star, base)


def test_extend_one_at_upper_endpoint(simple_problem):
    outcome = simple_problem.extend_one("a", F(7, 10))
    copy = outcome.assignments[0][1]
    assert outcome.space.is_metric
    assert independent(outcome.space, (copy,), ("b", "bstar"), ())
    assert outcome.space.dist(copy, "bstar") == F(7, 10)
    assert outcome.space.dist(copy, "b") == F(1, 2)


def test_extend_one_at_half_endpoint(simple_problem):
    outcome = simple_problem.extend_one("a", F(1, 2))
    copy = outcome.assignments[0][1]
    assert outcome.space.is_metric
    assert independent(outcome.space, (copy,), ("b", "bstar"), ())


def test_gamma_above_upper_is_rejected_and_dependent(simple_problem):
    gamma = F(7, 10) + F(1, 100)
    with pytest.raises(InvalidGammaError):
        simple_problem.extend_one("a", gamma)
    # the unguarded candidate survives the triangle check but loses independence
    candidate, copy = simple_problem.candidate_extension("a", gamma)
    assert candidate.triangle_violation() is None
    verdict = independent(candidate, (copy,), ("b", "bstar"), ())
    assert not verdict
    assert verdict.certificate is not None
    assert verdict.certificate.equation == "d_min"


def test_extend_all_empty_a(extension_space):
    prob = ExtensionProblem.create(extension_space, (), ("b",), (), "bstar")
    outcome = prob.extend_all()
    assert outcome.space.points == ("b", "bstar")
    assert outcome.assignments == ()


def test_extend_all_singleton_matches_extend_one(simple_problem):
    all_out = simple_problem.extend_all()
    one_out = simple_problem.extend_one("a", simple_problem.upper("a"))
    assert all_out.space == one_out.space
    assert all_out.assignments == one_out.assignments


def test_extend_all_postconditions_on_random_instances():
    rng = random.Random(44)
    checked = 0
    for _ in range(120):
        space = random_metric_space(rng, rng.randint(3, 5))
        a, b, c = random_roles(rng, space)
        if not independent(space, a, b, c):
            continue
        b_star = rng.choice(space.points)
        prob = ExtensionProblem.create(space, a, b, c, b_star)
        outcome = prob.extend_all()
        assert outcome.space.triangle_violation() is None
        copies = tuple(copy for _, copy, _ in outcome.assignments)
        assert independent(outcome.space, copies, prob.b_set + (b_star,), prob.base)
        checked += 1
    assert checked > 20


def test_extend_all_requires_independence(dependent_problem):
    with pytest.raises(DependenceError) as info:
        dependent_problem.extend_all()
    assert info.value.certificate is not None
    assert info.value.certificate.pair == ("b1", "b2")


def test_bounds_inequalities_under_independence():
    rng = random.Random(45)
    for _ in range(80):
        space = random_metric_space(rng, rng.randint(3, 5))
        a_set, b, c = random_roles(rng, space)
        b_star = rng.choice(space.points)
        prob = ExtensionProblem.create(space, a_set, b, c, b_star)
        for a in space.points:
            if not independent(space, (a,), prob.b_set, prob.base):
                continue
            upper, lower = prob.upper(a), prob.lower(a)
            assert lower <= upper
            assert d_max(space, b_star, b_star, prob.base) <= truncated_add(upper, upper)
            # gaps to B are always forced below L, and U never beats the direct route
            gap = max(
                (abs(space.dist(a, x) - space.dist(b_star, x)) for x in prob.b_set),
                default=F(0),
            )
            assert gap <= lower
            assert upper <= d_max(space, a, b_star, prob.b_set)


def test_copy_distance_spread_between_independent_points():
    rng = random.Random(46)
    for _ in range(80):
        space = random_metric_space(rng, rng.randint(3, 5))
        _, b, c = random_roles(rng, space)
        b_star = rng.choice(space.points)
        prob = ExtensionProblem.create(space, (), b, c, b_star)
        pts = space.points
        a1, a2 = rng.choice(pts), rng.choice(pts)
        if not independent(space, (a1, a2), prob.b_set, prob.base):
            continue
        u1, u2 = prob.upper(a1), prob.upper(a2)
        assert abs(u1 - u2) <= space.dist(a1, a2) <= truncated_add(u1, u2)


def test_admissible_interval_reports_dependence(dependent_problem):
    with pytest.raises(DependenceError):
        dependent_problem.admissible_gammas("a")


def test_create_normalizes_and_validates(extension_space):
    prob = ExtensionProblem.create(extension_space, (), ("b",), ("b",), "bstar")
    assert prob.b_set == ("b",) and prob.base == ("b",)
    prob2 = ExtensionProblem.create(extension_space, (), (), ("b",), "bstar")
    assert prob2.b_set == ("b",)  # base folded into B
    bad = extension_space.with_point("w", {"a": 1, "b": 1, "bstar": F(1, 100)})
    with pytest.raises(ValueError):
        ExtensionProblem.create(bad, (), ("b",), (), "bstar")
