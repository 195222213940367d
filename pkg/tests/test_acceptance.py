"""Acceptance checks: one test per criterion, each printing a single PASS/FAIL line."""

from __future__ import annotations

from fractions import Fraction

import pytest

from mintime import verify
from mintime.scenes import LIPSCHITZ_POINTS, fixture

HALF = Fraction(1, 2)
IDENTITY_SUITES = "enlargement-identity,shifted-argument,gauge-representation,projection-linearity,convexity,concavity"


@pytest.fixture
def report_line(capsys):
    def emit(label: str, checks: list) -> list:
        failed = [c for c in checks if not c.passed]
        status = "PASS" if checks and not failed else "FAIL"
        with capsys.disabled():
            print(f"\n[{status}] {label}: {len(checks)} checks, {len(failed)} failed")
        return failed

    return emit


def _at(check, x) -> bool:
    return check.detail.get("x") == tuple(Fraction(c) for c in x)


def test_segment_box_complement_goldens(report_line):
    checks = verify.run([fixture("segment-box-complement")], "goldens").checks
    checks = [c for c in checks if c.tag != "projection set" and not (c.tag.endswith("subdifferential") and _at(c, (HALF, HALF)))]
    assert len(checks) == 5
    assert not report_line("segment / box-complement goldens", checks)


def test_projection_goldens(report_line):
    checks = verify.run([fixture("segment-box-complement")], "goldens").checks
    checks = [c for c in checks if c.tag == "projection set" or (c.tag.endswith("subdifferential") and _at(c, (HALF, HALF)))]
    assert len(checks) == 3
    assert not report_line("projection and smooth-point goldens", checks)


def test_segment_box_goldens(report_line):
    checks = verify.run([fixture("segment-box")], "goldens").checks
    assert len(checks) == 8
    assert not report_line("segment / box goldens", checks)


def test_ball_complement_counterexample(report_line):
    checks = verify.run([fixture("ball-complement")], "goldens").checks
    assert {c.tag for c in checks} == {
        "enlargement normal cone at the origin is trivial",
        "limiting cloud on the unit circle",
        "one-sided cloud is empty",
    }
    assert not report_line("ball-complement counterexample", checks)


def test_identity_suite(report_line):
    scenes = verify.fixture_scenes() + verify.random_scenes("polyhedral", 100, seed=0)
    checks = verify.run(scenes, IDENTITY_SUITES).checks
    tags = {c.tag for c in checks}
    assert "chord violation witnessed on a nonconvex target" in tags
    assert "reverse chord inequality on the convex complement" in tags
    assert "no chord violations on a convex target" in tags
    assert not report_line("identity suite (fixtures + 100 random scenes)", checks)


def test_eps_bound_suite(report_line):
    checks = verify.run(verify.fixture_scenes(), "eps-inset,eps-outset").checks
    tags = {c.tag for c in checks}
    assert {"two-sided support bound", "perturbed normal witness within reach", "enlargement estimate of eps-subgradients"} <= tags
    assert not report_line("eps-subgradient bounds on fixtures", checks)


def test_convex_equivalence(report_line):
    checks = verify.run(verify.random_scenes("convex", 50, seed=0), "convex-sets").checks
    assert any(c.tag == "projection chain holds with equality" for c in checks)
    assert not report_line("convex formula sets vs subgradient inequality (50 scenes)", checks)


def test_oracle_concordance(report_line):
    scenes = [fixture("segment-box-complement")] + verify.random_scenes("two-box", 20, seed=0)
    checks = verify.run(scenes, "oracle-concordance").checks
    assert any(c.tag == "exact basic set reproduced by the sampled cloud" for c in checks)
    assert not report_line("sampled clouds inside estimate sets (fixture + 20 two-box scenes)", checks)


def test_lipschitz_characterization(report_line):
    checks = verify.run(verify.fixture_scenes(), "lipschitz").checks
    assert len(checks) == len(LIPSCHITZ_POINTS) == 6
    assert not report_line("trivial singular set iff sampled Lipschitz", checks)
