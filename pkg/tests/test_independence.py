"""Endpoint calculus, the dividing predicate, and the canonical witnesses."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations_with_replacement

import pytest

from urysphere import (
    FiniteMetricSpace,
    build_gamma_witness,
    d_max,
    d_min,
    divides_pair,
    dotminus,
    gamma_interval,
    independent,
    independent_pairwise,
    truncated_add,
)
from urysphere.generate import random_metric_space

F = Fraction


def test_d_max_examples(three_point_space):
    sp = three_point_space
    assert d_max(sp, "b1", "b2", ()) == 1
    assert d_max(sp, "b1", "b2", ("c",)) == F(9, 10)
    assert d_max(sp, "c", "c", ("c",)) == 0


def test_d_min_examples(three_point_space):
    sp = three_point_space
    assert d_min(sp, "b1", "b2", ()) == F(3, 5) / 3
    assert d_min(sp, "b1", "b1", ("c",)) == 0
    assert d_min(sp, "b1", "b2", ("c",)) == F(1, 5)


def test_gamma_interval_examples(three_point_space):
    sp = three_point_space
    both = gamma_interval(sp, "b1", "b1", ("c",))
    assert (both.lo, both.hi) == (F(0), truncated_add(F(2, 5), F(2, 5)))
    interval = gamma_interval(sp, "b1", "b2", ("c",))
    assert (interval.lo, interval.hi) == (F(1, 5), F(9, 10))
    flipped = gamma_interval(sp, "b2", "b1", ("c",))
    assert interval == flipped


def test_sandwich_and_symmetry_on_random_spaces():
    rng = random.Random(21)
    for _ in range(40):
        sp = random_metric_space(rng, rng.randint(2, 5))
        pts = sp.points
        b1, b2 = rng.choice(pts), rng.choice(pts)
        base = tuple(p for p in pts if rng.random() < 0.5)
        lo = d_min(sp, b1, b2, base)
        hi = d_max(sp, b1, b2, base)
        assert lo <= sp.dist(b1, b2) <= hi
        assert lo == d_min(sp, b2, b1, base)
        assert hi == d_max(sp, b2, b1, base)


def test_endpoints_monotone_in_base():
    rng = random.Random(22)
    for _ in range(30):
        sp = random_metric_space(rng, rng.randint(3, 5))
        pts = sp.points
        b1, b2 = rng.choice(pts), rng.choice(pts)
        small = tuple(p for p in pts if rng.random() < 0.4)
        big = sp.subset(small + tuple(p for p in pts if rng.random() < 0.4))
        assert d_max(sp, b1, b2, big) <= d_max(sp, b1, b2, small)
        assert d_min(sp, b1, b2, big) >= d_min(sp, b1, b2, small)


def test_forkprops_inequalities_on_random_spaces():
    rng = random.Random(23)
    for _ in range(30):
        sp = random_metric_space(rng, rng.randint(3, 5))
        pts = sp.points
        base = tuple(p for p in pts if rng.random() < 0.5)
        for b1 in pts:
            for b2 in pts:
                for b3 in pts:
                    gap = max(
                        (abs(sp.dist(b2, c) - sp.dist(b3, c)) for c in base),
                        default=F(0),
                    )
                    assert d_max(sp, b1, b2, base) <= truncated_add(
                        d_max(sp, b1, b3, base), gap
                    )
                    assert d_min(sp, b1, b2, base) <= truncated_add(
                        d_min(sp, b1, b3, base), d_min(sp, b2, b3, base)
                    )


def test_divides_pair_base_point_never_depends():
    rng = random.Random(24)
    for _ in range(30):
        sp = random_metric_space(rng, rng.randint(2, 5))
        pts = sp.points
        base = tuple(p for p in pts if rng.random() < 0.6)
        for a in base:
            b1, b2 = rng.choice(pts), rng.choice(pts)
            assert not divides_pair(sp, a, b1, b2, base)


def test_divides_pair_spec_examples(dividing_space):
    assert divides_pair(dividing_space, "a", "b1", "b2", ("c",))
    flat = FiniteMetricSpace.from_distances(
        ("a", "b1", "b2"),
        {("a", "b1"): F(1, 2), ("a", "b2"): F(1, 2), ("b1", "b2"): F(3, 5)},
    )
    assert not divides_pair(flat, "a", "b1", "b2", ())


def test_independent_trivial_cases(three_point_space):
    sp = three_point_space
    assert independent(sp, ("c",), ("b1", "b2"), ("c",))  # A inside C
    assert independent(sp, ("b1",), (), ("c",))  # empty B


def test_independent_certificate(dividing_space):
    verdict = independent(dividing_space, ("a",), ("b1", "b2"), ("c",))
    assert not verdict
    cert = verdict.certificate
    assert cert is not None
    assert cert.pair == ("b1", "b2")
    assert cert.equation == "d_max"
    assert (cert.lhs, cert.rhs) == (F(1, 5), F(9, 10))
    assert cert.to_json() == {
        "pair": ["b1", "b2"],
        "equation": "d_max",
        "lhs": "1/5",
        "rhs": "9/10",
    }


def test_independent_agrees_with_pairwise_form():
    rng = random.Random(25)
    for _ in range(60):
        sp = random_metric_space(rng, rng.randint(2, 5))
        pts = sp.points
        a = tuple(p for p in pts if rng.random() < 0.4)
        b = tuple(p for p in pts if rng.random() < 0.5)
        c = tuple(p for p in pts if rng.random() < 0.4)
        assert bool(independent(sp, a, b, c)) == independent_pairwise(sp, a, b, c)


def test_witness_constant_sequence_pattern():
    sp = FiniteMetricSpace.from_distances(
        ("b1", "b2"), {("b1", "b2"): F(2, 5)}
    )
    w = build_gamma_witness(sp, "b1", "b2", (), F(2, 5), copies=2)
    assert w.valid
    assert len(w.space.points) == 4


def test_witness_flags_at_interval_boundary(three_point_space):
    sp = three_point_space
    assert build_gamma_witness(sp, "b1", "b2", ("c",), F(1, 5), copies=4).valid
    bad = build_gamma_witness(sp, "b1", "b2", ("c",), F(1, 10), copies=3)
    assert not bad.valid
    assert bad.violation is not None


def test_witness_soundness_on_random_spaces():
    rng = random.Random(26)
    for _ in range(15):
        sp = random_metric_space(rng, rng.randint(2, 4))
        pts = sp.points
        b1, b2 = rng.choice(pts), rng.choice(pts)
        base = tuple(p for p in pts if rng.random() < 0.5)
        interval = gamma_interval(sp, b1, b2, base)
        for k in range(13):
            gamma = F(k, 12)
            inside = gamma in interval
            for copies in (3, 6) if inside else (3,):
                w = build_gamma_witness(sp, b1, b2, base, gamma, copies=copies)
                assert w.valid == inside


def test_witness_keeps_base_distances(three_point_space):
    w = build_gamma_witness(three_point_space, "b1", "b2", ("c",), F(1, 2), copies=3)
    assert w.base == ("c",)
    for first, second in w.copy_pairs:
        assert w.space.dist(first, "c") == F(2, 5)
        assert w.space.dist(second, "c") == F(1, 2)
        assert w.space.dist(first, second) == F(3, 5)


def test_witness_handles_equal_endpoints(three_point_space):
    w = build_gamma_witness(three_point_space, "b1", "b1", ("c",), F(1, 5), copies=3)
    assert w.valid
    # both halves of each copy collapse onto b1's position
    for first, second in w.copy_pairs:
        assert w.space.dist(first, second) == 0


def test_interval_is_symmetric_under_pair_swap():
    rng = random.Random(27)
    for _ in range(30):
        sp = random_metric_space(rng, rng.randint(2, 5))
        for b1, b2 in combinations_with_replacement(sp.points, 2):
            assert gamma_interval(sp, b1, b2, ()) == gamma_interval(sp, b2, b1, ())


def test_dotminus_interacts_with_endpoints(three_point_space):
    # d_min never exceeds d_max, so their dotminus gap is well-defined
    sp = three_point_space
    gap = dotminus(
        d_max(sp, "b1", "b2", ("c",)), d_min(sp, "b1", "b2", ("c",))
    )
    assert gap == F(7, 10)


def test_witness_rejects_bad_arguments(three_point_space):
    with pytest.raises(ValueError):
        build_gamma_witness(three_point_space, "b1", "b2", (), F(1, 2), copies=1)
    with pytest.raises(ValueError):
        build_gamma_witness(three_point_space, "b1", "b2", (), F(3, 2))
