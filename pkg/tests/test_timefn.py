from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mintime import Dynamics, EmptyProjection, HPolyhedron, Interval, Target, fixture
from mintime.geometry.polyhedra import PolyhedralUnion
from mintime.geometry.rational import INF, DimensionError, add, norm_sq, scale, sub, upper, vec
from mintime.scenes import random_point, random_scene
from mintime.timefn import (
    convexity_concavity_probe,
    enlargement,
    gauge_representation_value,
    in_enlargement,
    minimal_time,
    projection_set,
    time_value,
)
from mintime.verify import probe_points

HALF = Fraction(1, 2)
small = st.fractions(min_value=-3, max_value=3, max_denominator=4)
seeds = st.integers(min_value=0, max_value=10_000)

# minimal times on random scenes (random.Random(7), scenes 0..3, first three probe points);
# cross-checked against a floating-point LP solver before freezing
FROZEN_TIMES = [
    (0, ("-13/4", "9/4"), "29/94"),
    (0, ("-13/4", "-1/2"), "0"),
    (0, ("-7/2", "-2"), "13/2"),
    (1, ("4", "5/2"), "5/3"),
    (1, ("-3/2", "5/4"), "3/2"),
    (1, ("-7/4", "15/4"), "5/2"),
    (2, ("3/2", "-3/2"), "1/4"),
    (2, ("-9/4", "15/4"), "67/6"),
    (2, ("-13/4", "-3/4"), "91/18"),
    (3, ("-4", "15/4"), "35/18"),
    (3, ("-5/4", "0"), "3/7"),
    (3, ("1/2", "-4"), "18/7"),
]


def _scene(seed):
    return random_scene(random.Random(seed), seed)


def test_frozen_random_times():
    rng = random.Random(7)
    scenes = [random_scene(rng, i) for i in range(4)]
    for idx, x, t in FROZEN_TIMES:
        x = vec(x)
        assert x in probe_points(scenes[idx])[:3]
        assert scenes[idx].T(x) == Fraction(t)


# ---------------------------------------------------------------------------
# dynamics


def test_segment_gauge_and_support():
    F = Dynamics([(-1, 0), (1, 0)])
    assert F.gauge((3, 0)) == 3
    assert F.gauge((0, 1)) == INF
    assert F.support((2, 5)) == 2
    assert F.contains_origin and not F.origin_interior


def test_ball_gauge_is_interval():
    F = Dynamics.ball(2)
    g = F.gauge((1, 1))
    assert isinstance(g, Interval) and g.lo**2 <= HALF <= g.hi**2
    assert F.gauge((0, 6)) == 3


def test_dynamics_validation():
    with pytest.raises(ValueError):
        Dynamics([])
    with pytest.raises(DimensionError):
        Dynamics([(1, 0), (1,)])
    with pytest.raises(ValueError):
        Dynamics.ball(0)


dyn = st.lists(st.tuples(small, small), min_size=1, max_size=5).map(Dynamics)


@settings(max_examples=40, deadline=None)
@given(dyn, st.tuples(small, small), st.fractions(min_value=0, max_value=5, max_denominator=3))
def test_gauge_positively_homogeneous(F, u, t):
    g = F.gauge(u)
    gt = F.gauge(scale(t, u))
    if t == 0:
        assert gt == 0
    elif g == INF:
        assert gt == INF
    else:
        assert gt == t * g


@settings(max_examples=40, deadline=None)
@given(dyn, st.tuples(small, small), st.tuples(small, small))
def test_gauge_subadditive(F, u, v):
    gu, gv, guv = F.gauge(u), F.gauge(v), F.gauge(add(u, v))
    if gu != INF and gv != INF:
        assert guv != INF and guv <= gu + gv


@settings(max_examples=40, deadline=None)
@given(dyn, st.tuples(small, small), st.tuples(small, small))
def test_support_lipschitz_in_dual(F, a, b):
    # |sigma(a) - sigma(b)| <= |F| |a - b|, compared in squares
    diff = abs(F.support(a) - F.support(b))
    assert diff * diff <= F.bound_sq() * norm_sq(sub(a, b))


# ---------------------------------------------------------------------------
# minimal time


def test_fixture_values():
    sbc = fixture("segment-box-complement")
    assert sbc.T((HALF, HALF)) == HALF
    assert sbc.T((0, 0)) == 1
    assert sbc.T((0, HALF)) == 1
    assert sbc.T((Fraction(3, 4), HALF)) == Fraction(1, 4)
    sb = fixture("segment-box")
    assert sb.T((2, HALF)) == 1
    assert sb.T((0, 0)) == 0
    assert fixture("unit-interval-halfline").T((1,)) == INF


def test_witness_lands_in_target():
    sb = fixture("segment-box")
    t, w = minimal_time(sb.dynamics, sb.target, (2, HALF))
    assert t == 1 and w.w == (1, HALF)
    assert w.verify(sb.dynamics, sb.target, (2, HALF))


def test_ball_dynamics_distance():
    F = Dynamics.ball(1)
    omega = Target.convex(HPolyhedron.box([0, 0], [1, 1]))
    assert time_value(F, omega, (4, 5)) == 5
    t = time_value(F, omega, (2, 2))
    assert isinstance(t, Interval) and t.lo**2 <= 2 <= t.hi**2


def test_projection_errors():
    s = fixture("unit-interval-halfline")
    with pytest.raises(EmptyProjection):
        projection_set(s.dynamics, s.target, (1,))


def test_projection_set_of_segment_box():
    s = fixture("segment-box")
    proj = projection_set(s.dynamics, s.target, (2, HALF))
    assert proj.is_singleton() and proj.points() == [(1, HALF)]


def test_enlargement_rejects_negative_radius():
    s = fixture("segment-box")
    with pytest.raises(ValueError):
        enlargement(s.dynamics, s.target, -1)


def test_segment_box_is_not_convex_in_value():
    s = fixture("segment-box-complement")
    rep = convexity_concavity_probe(s.dynamics, s.target, [((-HALF, 0), (HALF, 0))], [HALF])
    assert not rep.ok and rep.violations[0][3] == 1


@settings(max_examples=25, deadline=None)
@given(seeds, st.tuples(small, small))
def test_zero_time_iff_in_target(seed, x):
    s = _scene(seed)
    assert (s.T(x) == 0) == s.target.contains(x)


@settings(max_examples=25, deadline=None)
@given(seeds, st.tuples(small, small))
def test_witness_certifies_value(seed, x):
    s = _scene(seed)
    t, w = minimal_time(s.dynamics, s.target, x)
    if t == INF:
        assert w is None
    else:
        assert w.t == t and w.verify(s.dynamics, s.target, x)


@settings(max_examples=20, deadline=None)
@given(seeds, st.tuples(small, small))
def test_larger_target_reaches_no_later(seed, x):
    s = _scene(seed)
    extra = HPolyhedron.box([-HALF, -HALF], [HALF, HALF])
    bigger = Target(PolyhedralUnion(2, list(s.target.pieces) + [extra]))
    t, tb = s.T(x), time_value(s.dynamics, bigger, x)
    assert t == INF or tb <= t


@settings(max_examples=20, deadline=None)
@given(seeds, st.tuples(small, small))
def test_closed_form_matches_lp(seed, x):
    s = _scene(seed)
    t = s.T(x)
    assert s.T_closed(x) == t
    tf = float(s.T_float(np.array([[float(c) for c in x]]))[0])
    assert (tf == np.inf) if t == INF else abs(tf - float(t)) <= 1e-9


@settings(max_examples=15, deadline=None)
@given(seeds, st.tuples(small, small), st.sampled_from([Fraction(1, 4), Fraction(1), Fraction(2)]))
def test_enlargement_is_sublevel_set(seed, x, r):
    s = _scene(seed)
    omega_r = enlargement(s.dynamics, s.target, r)
    assert omega_r.contains(x) == in_enlargement(s.dynamics, s.target, r, x)


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_gauge_program_matches_time(seed):
    s = _scene(seed)
    x = random_point(random.Random(seed))
    assert gauge_representation_value(s.dynamics, s.target, x) == s.T(x)


def test_lsc_sample_upper_bound():
    # approaching the discontinuity from the reachable side keeps values at or above T
    s = fixture("segment-box-complement")
    assert all(upper(s.T((Fraction(1, 2**k), 1))) >= s.T((0, 1)) for k in range(1, 6))
