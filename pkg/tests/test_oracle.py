from __future__ import annotations

import json
from fractions import Fraction

import numpy as np
import pytest

from mintime import Dynamics, HPolyhedron, Target, UnsupportedDimension, fixture
from mintime import oracle
from mintime.geometry.polyhedra import as_union
from mintime.scenes import Scene
import mintime.verify as verify
from mintime.subdiff import EXACT, SubdiffResult, subdiff
from mintime.verify import Context, _concordance, _near

HALF = Fraction(1, 2)


@pytest.fixture(scope="module")
def plan():
    return oracle.SamplingPlan()


def halfline_scene(speed):
    # T(x) = max(0, -x / speed): affine with slope -1/speed left of the target
    return Scene("halfline", Dynamics([(speed,)]), Target.convex(HPolyhedron(1, [((-1,), 0)])), [(-1,)])


def test_plan_overrides_from_environment():
    env = {oracle.ENV_VAR: json.dumps({"directions": 32, "dual_step": "1/2", "radii": ["1/4", "1/8"]})}
    p = oracle.SamplingPlan.from_env(env)
    assert p.directions == 32 and p.dual_step == HALF and p.radii == (Fraction(1, 4), Fraction(1, 8))
    assert oracle.SamplingPlan.from_env({}) == oracle.SamplingPlan()
    with pytest.raises(ValueError):
        p.with_overrides({"nonsense": 1})
    with pytest.raises(ValueError):
        p.with_overrides({"radii": ["1/8", "1/4"]})


def test_dual_grid_dimensions(plan):
    assert len(plan.dual_grid(1)) == 17
    assert len(plan.dual_grid(2)) == 17 * 17
    with pytest.raises(UnsupportedDimension):
        plan.dual_grid(3)


def test_frechet_verdicts_at_smooth_point(plan):
    s = fixture("segment-box")
    v = oracle.sampled_frechet_subdiff(s, (2, HALF), 0, [(1, 0), (0, 0), (1, HALF)], plan)
    assert v.verdicts == [oracle.MEMBER, oracle.NON_MEMBER, oracle.NON_MEMBER]


def test_eps_enlarges_membership(plan):
    s = fixture("segment-box")
    near = (Fraction(9, 10), 0)
    assert oracle.sampled_frechet_subdiff(s, (2, HALF), 0, [near], plan).verdicts == [oracle.NON_MEMBER]
    assert oracle.sampled_frechet_subdiff(s, (2, HALF), HALF, [near], plan).verdicts == [oracle.MEMBER]


def test_frechet_members_lie_in_limiting_cloud(plan):
    s = fixture("segment-box-complement")
    for x in s.points:
        members = oracle.sampled_frechet_subdiff(s, x, 0, plan=plan).members()
        cloud = oracle.sampled_limiting_subdiff(s, x, plan)
        assert set(members) <= set(cloud.points)


def test_calmness_verdicts_at_fixture_points(plan):
    s = fixture("segment-box-complement")
    assert oracle.calmness_probe(s, (1, 0), plan=plan).lipschitz
    assert not oracle.calmness_probe(s, (0, 1), plan=plan).lipschitz


@pytest.mark.parametrize("speed", [1, 2, Fraction(1, 3)])
def test_calmness_constant_of_affine_scene(plan, speed):
    est = oracle.calmness_probe(halfline_scene(speed), (-1,), plan=plan)
    assert est.lipschitz
    assert abs(float(est.kappa) - 1 / float(speed)) <= 1e-9


def test_calmness_constant_shrinks_with_window(plan):
    s = fixture("segment-box")
    kappas = [oracle.calmness_probe(s, (1, 0), w, plan).kappa for w in (Fraction(1, 4), Fraction(1, 64), Fraction(1, 1024))]
    assert kappas == sorted(kappas, reverse=True)


def test_definitional_subgradient_examples():
    s = fixture("segment-box")
    assert oracle.definitional_convex_subgradient_check(s, (1, 0), (1, 0))
    assert not oracle.definitional_convex_subgradient_check(s, (1, 0), (0, 1))
    assert oracle.definitional_convex_subgradient_check(s, (0, 0), (0, 0))
    with pytest.raises(ValueError):
        oracle.definitional_convex_subgradient_check(fixture("segment-box-complement"), (1, 0), (0, 0))


def test_batch_verdicts_match_exact_check(plan):
    s = fixture("segment-box")
    grid = plan.dual_grid(2)[::7]
    basic = oracle.convex_subgradient_verdicts(s, (2, HALF), grid)
    exact = [oracle.definitional_convex_subgradient_check(s, (2, HALF), g) for g in grid]
    assert [v == oracle.MEMBER for v in basic] == exact


def test_ball_cloud_is_a_circle(plan):
    cloud = oracle.sampled_limiting_subdiff(fixture("ball-complement"), (0, 0), plan)
    norms = np.linalg.norm(cloud.as_array(), axis=1)
    assert np.abs(norms - 1).max() <= 1e-3
    assert cloud.directions() >= 64


# ---------------------------------------------------------------------------
# the oracle must reject wrong answers


def test_mutated_convex_set_is_rejected(plan):
    s = fixture("segment-box")
    grid = plan.dual_grid(2)
    verdicts = oracle.convex_subgradient_verdicts(s, (1, 0), grid)
    right = subdiff(s.dynamics, s.target, (1, 0), "basic").set
    wrong = as_union(HPolyhedron.from_vrep([(0, 0), (Fraction(5, 4), 0)], dim=2))
    agree = lambda S: all((v == oracle.MEMBER) == S.contains(g) for g, v in zip(grid, verdicts))  # noqa: E731
    assert agree(right)
    assert not agree(wrong)


def test_mutated_estimate_fails_concordance(plan, monkeypatch):
    s = fixture("segment-box-complement")
    ctx = Context(plan=plan)
    assert all(c.passed for c in _concordance(s, ctx, "oracle-concordance"))
    point = SubdiffResult(as_union(HPolyhedron.point((0, 0))), EXACT, "mutant")
    monkeypatch.setattr(verify, "_estimates", lambda scene, x: (point, point))
    assert not all(c.passed for c in _concordance(s, ctx, "oracle-concordance"))


def test_near_uses_distance_tolerance():
    U = as_union(HPolyhedron.point((0, 0)))
    assert _near(U, (Fraction(1, 2000), 0), Fraction(1, 1000))
    assert not _near(U, (Fraction(1, 500), 0), Fraction(1, 1000))
