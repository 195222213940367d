from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from fractions import Fraction

import pytest

from mintime import UnsupportedDimension, fixture, io, plot
from mintime.cli import main

SVG = "{http://www.w3.org/2000/svg}"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def report(out):
    return io.loads_report(out)


def test_eval_reports_value_and_witness(capsys):
    code, out, _ = run(capsys, "eval", "--fixture", "segment-box", "--point", "2,1/2")
    assert code == 0
    row = report(out)["results"][0]
    assert row["T"] == 1 and row["witness"]["w"] == [1, Fraction(1, 2)]
    assert row["gauge_at_witness"] == 1


def test_eval_infinite_and_zero(capsys):
    _, out, _ = run(capsys, "eval", "--fixture", "unit-interval-halfline", "--point", "1")
    assert report(out)["results"][0]["T"] == float("inf")
    _, out, _ = run(capsys, "eval", "--fixture", "segment-box", "--point", "0,0")
    assert report(out)["results"][0]["T"] == 0


def test_project(capsys):
    code, out, _ = run(capsys, "project", "--fixture", "segment-box-complement", "--point", "1/2,1/2")
    row = report(out)["results"][0]
    assert code == 0 and row["singleton"] and row["witness"] == [1, Fraction(1, 2)]


@pytest.mark.parametrize(
    "name, point, which, verts, exactness",
    [
        ("segment-box-complement", "1,0", "basic", [[-1, 0], [0, 0]], "exact"),
        ("segment-box-complement", "1/2,1/2", "basic", [[-1, 0]], "upper_estimate"),
        ("segment-box", "0,1", "singular", [[0, 0]], "exact"),
    ],
)
def test_subdiff_sets(capsys, name, point, which, verts, exactness):
    code, out, _ = run(capsys, "subdiff", "--fixture", name, "--point", point, "--which", which)
    row = report(out)["results"][0]
    assert code == 0 and row["exactness"] == exactness
    assert sorted(row["set"][0]["vertices"]) == verts


def test_subdiff_ray_for_singular_at_discontinuity(capsys):
    _, out, _ = run(capsys, "subdiff", "--fixture", "segment-box", "--point", "0,1", "--which", "singular")
    assert report(out)["results"][0]["set"][0]["rays"] == [[0, 1]]


def test_subdiff_sampled_eps(capsys):
    args = ("subdiff", "--fixture", "ball-complement", "--point", "1/2,0", "--which", "frechet-eps")
    _, out, _ = run(capsys, *args, "--eps", "1/10")
    row = report(out)["results"][0]
    assert row["exactness"] == "sampled" and [-1, 0] in row["members"]
    # with eps = 0 the gradient sits on the decision boundary of a curved scene
    _, out, _ = run(capsys, *args, "--eps", "0")
    row = report(out)["results"][0]
    assert row["members"] == [] and [-1, 0] in row["uncertain"]


def test_regime_mismatch_exits_two(capsys):
    code, _, err = run(capsys, "subdiff", "--fixture", "segment-box", "--point", "0,0", "--which", "one-sided")
    assert code == 2 and "RegimeError" in err


def test_enlarge(capsys):
    code, out, _ = run(capsys, "enlarge", "--fixture", "segment-box", "--r", "1")
    piece = report(out)["results"][0]["pieces"][0]
    assert code == 0 and sorted(piece["vertices"]) == [[-2, -1], [-2, 1], [2, -1], [2, 1]]


def test_verify_empty_selector_passes_with_zero_checks(capsys):
    code, out, err = run(capsys, "verify", "--suite", "")
    assert code == 0 and report(out)["summary"]["checks"] == 0
    assert err.strip() == "0 checks, 0 failed"


def test_verify_reports_convexity_witness(capsys):
    code, out, _ = run(capsys, "verify", "--fixture", "segment-box-complement", "--suite", "convexity")
    checks = report(out)["results"]
    assert code == 0 and len(checks) == 1
    assert checks[0]["tag"] == "chord violation witnessed on a nonconvex target" and checks[0]["detail"]["witness"]


def test_verify_exit_code_tracks_failures(capsys, monkeypatch):
    import mintime.verify as verify

    monkeypatch.setitem(verify.SUITES, "lsc", lambda scene, ctx: [verify.Check("lsc", "forced", scene.name, False)])
    code, out, _ = run(capsys, "verify", "--fixture", "segment-box", "--suite", "lsc")
    assert code == 1 and report(out)["summary"]["failed"] == 1


def test_verify_unknown_suite(capsys):
    code, _, err = run(capsys, "verify", "--suite", "nope")
    assert code == 2 and "unknown suite" in err


def test_scene_file_and_parse_error(capsys, tmp_path):
    good = tmp_path / "s.json"
    good.write_text(io.dumps_scene(fixture("segment-box")))
    code, out, _ = run(capsys, "eval", "--scene", str(good), "--point", "2,1/2")
    assert code == 0 and report(out)["results"][0]["T"] == 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"dim": 2, "dynamics": {"vertices": [["1", "x"]]}, "target": {"pieces": []}}))
    code, _, err = run(capsys, "eval", "--scene", str(bad))
    assert code == 2 and "dynamics.vertices[0][1]" in err


def test_out_file(capsys, tmp_path):
    dest = tmp_path / "r.json"
    run(capsys, "eval", "--fixture", "segment-box", "--out", str(dest))
    assert report(dest.read_text())["command"] == "eval"


def test_bad_point_dimension(capsys):
    code, _, err = run(capsys, "eval", "--fixture", "segment-box", "--point", "1")
    assert code == 2 and "coordinates" in err


# ---------------------------------------------------------------------------
# plots


def _tags(svg):
    return [el.tag.replace(SVG, "") for el in ET.fromstring(svg).iter()]


def test_plot_is_deterministic(capsys):
    _, a, _ = run(capsys, "plot", "--fixture", "segment-box", "--point", "1,0")
    _, b, _ = run(capsys, "plot", "--fixture", "segment-box", "--point", "1,0")
    assert a == b and a.startswith("<svg")


def test_plot_without_overlays_draws_axes_only():
    svg = plot.render(fixture("segment-box"), [])
    assert sorted(set(_tags(svg))) == ["g", "line", "rect", "svg"]


def test_level_sets_widen_in_first_coordinate_only():
    svg = plot.render(fixture("segment-box"), ["level-sets"])
    polys = [el for el in ET.fromstring(svg).iter(SVG + "polygon")]
    assert len(polys) == len(plot.LEVELS)
    spans = []
    for el in polys:
        pts = [tuple(map(float, p.split(","))) for p in el.get("points").split()]
        xs, ys = [p[0] for p in pts], [p[1] for p in pts]
        spans.append((max(xs) - min(xs), max(ys) - min(ys)))
    assert len({h for _, h in spans}) == 1
    assert [w for w, _ in spans] == sorted(w for w, _ in spans)[::-1]


def test_subdiff_inset_is_a_segment():
    svg = plot.render(fixture("segment-box"), ["subdiff"], (1, 0))
    lines = [el for el in ET.fromstring(svg).iter(SVG + "polyline") if el.get("stroke") == "#2e7d32"]
    assert len(lines) == 1
    pts = [tuple(map(float, p.split(","))) for p in lines[0].get("points").split()]
    # dual panel maps [-2, 2] onto 180 px starting at x = 440: x* in [0, 1] spans 45 px right of centre
    assert sorted(p[0] for p in pts) == [530.0, 575.0] and {p[1] for p in pts} == {110.0}


def test_plot_rejects_other_dimensions(capsys):
    with pytest.raises(UnsupportedDimension):
        plot.render(fixture("unit-interval-halfline"), ["target"])
    code, _, _ = run(capsys, "plot", "--fixture", "unit-interval-halfline")
    assert code == 2


def test_plot_rejects_unknown_overlay():
    with pytest.raises(ValueError):
        plot.render(fixture("segment-box"), ["contours"])
