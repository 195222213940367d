from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mintime import Dynamics, HPolyhedron, PolyhedralCone, PolyhedralUnion, Target, fixture
from mintime.geometry.polyhedra import as_union
from mintime.scenes import random_convex_scene, random_scene
from mintime.subdiff import (
    EXACT,
    UPPER,
    RegimeError,
    ball_complement_enlargement_normal_cone,
    eps_gauge_subdiff_contains,
    eps_normal_contains,
    enlargement_normal_cone,
    enlargement_normal_cone_explicit,
    frechet_normal_cone,
    gauge_subdifferential,
    limiting_normal_cone,
    normal_cone_representation_check,
    subdiff,
    support_level_set,
    two_sided_support_bound,
)
from mintime.verify import probe_points

HALF = Fraction(1, 2)
ZERO2 = as_union(PolyhedralCone.zero(2))


def ray(*d):
    return as_union(PolyhedralCone.generated_by(2, [d]))


def test_box_corner_normal_cone_is_quadrant():
    omega = Target.convex(HPolyhedron.box([0, 0], [1, 1]))
    N = frechet_normal_cone(omega, (1, 1))
    assert N.equals(PolyhedralCone.generated_by(2, [(1, 0), (0, 1)]))
    assert frechet_normal_cone(omega, (HALF, HALF)).equals(PolyhedralCone.zero(2))


def test_nonconvex_corner_limiting_vs_regular():
    omega = fixture("segment-box-complement").target
    assert frechet_normal_cone(omega, (1, 1)).equals(PolyhedralCone.zero(2))
    assert limiting_normal_cone(omega, (1, 1)).equals(ray(-1, 0).union(ray(0, -1)))
    assert limiting_normal_cone(omega, (1, 0)).equals(ray(-1, 0))


def test_limiting_cone_outside_target_is_an_error():
    with pytest.raises(RegimeError):
        limiting_normal_cone(fixture("segment-box").target, (3, 3))


def test_eps_normals_at_a_boundary_point():
    omega = Target.convex(HPolyhedron.box([0, 0], [1, 1]))
    assert eps_normal_contains(omega, (1, HALF), (2, 0), 0)
    assert not eps_normal_contains(omega, (1, HALF), (1, Fraction(1, 5)), Fraction(1, 10))
    assert eps_normal_contains(omega, (1, HALF), (1, Fraction(1, 10)), Fraction(1, 10))
    assert not eps_normal_contains(omega, (3, 3), (0, 0), 1)


def test_support_level_sets_of_segment_dynamics():
    F = fixture("segment-box").dynamics
    C = support_level_set(F, "C")
    assert C.contains((1, 7)) and C.contains((-1, 0)) and not C.contains((Fraction(3, 2), 0))
    S = support_level_set(F, "S")
    assert S.contains((-1, 4)) and not S.contains((HALF, 0))
    P = support_level_set(F, "F+")
    assert P.contains((0, -2)) and not P.contains((1, 0))


def test_irrational_bound_brackets_level_set():
    F = Dynamics([(1, 1), (-1, 0)])
    C = support_level_set(F, "C", Fraction(1, 10))
    assert not C.exact
    assert C.contains((0, 0)) is True
    with pytest.raises(ValueError):
        C.set


def test_two_sided_support_bound():
    F = fixture("segment-box").dynamics
    assert two_sided_support_bound(F, (-1, 3), 0) is True
    assert two_sided_support_bound(F, (-HALF, 0), 0) is False
    assert two_sided_support_bound(F, (-HALF, 0), HALF) is True


def test_gauge_subdifferential_of_segment():
    F = fixture("segment-box").dynamics
    D = gauge_subdifferential(F, (2, 0))
    assert D.contains((1, 5)) and not D.contains((HALF, 0))
    assert eps_gauge_subdiff_contains(F, (2, 0), (Fraction(9, 10), 0), Fraction(1, 10))
    with pytest.raises(ValueError):
        gauge_subdifferential(F, (0, 1))


def test_exactness_flags_and_sources():
    s = fixture("segment-box-complement")
    res = subdiff(s.dynamics, s.target, (1, 0), "basic")
    assert res.exactness == EXACT and "limiting normal cone" in res.source
    res = subdiff(s.dynamics, s.target, (HALF, HALF), "basic")
    assert res.exactness == UPPER and res.set.equals(as_union(HPolyhedron.point((-1, 0))))
    assert res.hypotheses["convex_target"] is False


def test_regime_errors():
    s = fixture("segment-box")
    with pytest.raises(RegimeError):
        subdiff(s.dynamics, s.target, (0, 0), "one-sided")
    with pytest.raises(ValueError):
        subdiff(s.dynamics, s.target, (0, 0), "proximal")


def test_ball_complement_normal_cone_cases():
    assert ball_complement_enlargement_normal_cone((0, 0)).equals(ZERO2)
    assert ball_complement_enlargement_normal_cone((HALF, 0)).equals(ray(-1, 0))
    assert ball_complement_enlargement_normal_cone((0, 1)).equals(ray(0, -1))
    assert ball_complement_enlargement_normal_cone((2, 0)).equals(ZERO2)


def test_one_sided_sets_at_smooth_point():
    s = fixture("segment-box")
    res = subdiff(s.dynamics, s.target, (2, HALF), "one-sided", lipschitz=True)
    assert res.exact and res.set.equals(as_union(HPolyhedron.point((1, 0))))
    res = subdiff(s.dynamics, s.target, (2, HALF), "one-sided")
    assert res.exactness == UPPER


@settings(max_examples=12, deadline=None)
@given(st.integers(0, 5000))
def test_convex_enlargement_cone_two_routes(seed):
    # Minkowski-sum formula and explicit enlargement must agree
    s = random_convex_scene(random.Random(seed), seed)
    for x in probe_points(s):
        if s.target.contains(x) or s.T(x) == float("inf"):
            continue
        assert enlargement_normal_cone(s.dynamics, s.target, x).equals(
            enlargement_normal_cone_explicit(s.dynamics, s.target, x)
        )


@settings(max_examples=12, deadline=None)
@given(st.integers(0, 5000))
def test_normal_cone_generated_by_subdifferential(seed):
    s = random_scene(random.Random(seed), seed)
    for x in probe_points(s):
        if s.target.contains(x):
            assert normal_cone_representation_check(s.dynamics, s.target, x)


@settings(max_examples=12, deadline=None)
@given(st.integers(0, 5000))
def test_singular_set_inside_basic_recession(seed):
    # singular elements are limits of scaled basic elements, so they lie in the positive dual cone
    s = random_scene(random.Random(seed), seed)
    P = support_level_set(s.dynamics, "F+").set
    for x in probe_points(s):
        if s.T(x) == float("inf"):
            continue
        assert subdiff(s.dynamics, s.target, x, "singular").set.is_subset(P)


def test_wrong_set_is_detected():
    # a perturbed golden must not compare equal
    s = fixture("segment-box-complement")
    res = subdiff(s.dynamics, s.target, (1, 0), "basic")
    wrong = as_union(HPolyhedron.from_vrep([(-1, 0), (Fraction(1, 100), 0)], dim=2))
    assert not res.set.equals(wrong)
    assert not res.set.equals(PolyhedralUnion(2, []))
