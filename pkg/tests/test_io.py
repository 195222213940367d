from __future__ import annotations

import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mintime import FIXTURES, Interval, fixture, io
from mintime.geometry.rational import INF
from mintime.scenes import random_scene


def _same_scene(a, b):
    assert a.name == b.name and a.dim == b.dim
    assert [tuple(p) for p in a.points] == [tuple(p) for p in b.points]
    assert a.options == b.options
    if a.closed_form:
        assert b.closed_form
        return
    assert a.dynamics.vertices == b.dynamics.vertices
    assert [P.rows for P in a.target.pieces] == [P.rows for P in b.target.pieces]


@pytest.mark.parametrize("name", FIXTURES)
def test_fixture_round_trip(name):
    s = fixture(name)
    back = io.loads_scene(io.dumps_scene(s))
    _same_scene(s, back)
    assert io.dumps_scene(back) == io.dumps_scene(s)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000))
def test_random_scene_round_trip(seed):
    s = random_scene(random.Random(seed), seed)
    s.options = {"eps": Fraction(1, 10), "sampling": {"directions": 32}}
    _same_scene(s, io.loads_scene(io.dumps_scene(s)))


def _base():
    return {
        "schema": io.SCENE_SCHEMA,
        "dim": 2,
        "dynamics": {"vertices": [["-1", "0"], ["1", "0"]]},
        "target": {"pieces": [{"rows": [{"a": ["1", "0"], "b": "1"}]}]},
    }


@pytest.mark.parametrize(
    "mutate, field",
    [
        (lambda d: d.pop("dim"), "dim"),
        (lambda d: d.update(dim=0), "dim"),
        (lambda d: d["dynamics"]["vertices"].append(["1"]), "dynamics.vertices[2]"),
        (lambda d: d["target"]["pieces"][0]["rows"][0].update(b="1.5"), "target.pieces[0].rows[0].b"),
        (lambda d: d["target"].update(pieces=[]), "target.pieces"),
        (lambda d: d["target"].update(pieces=[{"rows": [{"a": ["0", "0"], "b": "-1"}]}]), "target"),
        (lambda d: d.update(dynamics={"ball": "1"}), "dynamics"),
        (lambda d: d.update(options={"delta": "1"}), "options.delta"),
        (lambda d: d.update(schema="other/1"), "schema"),
    ],
)
def test_parse_errors_name_the_field(mutate, field):
    data = _base()
    mutate(data)
    with pytest.raises(io.SceneParseError) as exc:
        io.scene_from_dict(data)
    assert exc.value.field == field


def test_json_syntax_error_has_line():
    with pytest.raises(io.SceneParseError) as exc:
        io.loads_scene('{\n  "dim": 2,\n  oops\n}')
    assert exc.value.line == 3


def test_closed_form_scene():
    s = io.scene_from_dict({"dim": 2, "target": {"closed_form": "ball-complement"}})
    assert s.closed_form and s.T((0, 0)) == 1


def test_report_round_trip():
    results = [{"T": Fraction(-7, 3), "inf": INF, "iv": Interval(Fraction(1), Fraction(2)), "flag": True, "n": 3}]
    report = io.make_report("eval", "scene", results)
    back = io.loads_report(io.dumps_report(report))
    row = back["results"][0]
    assert row["T"] == Fraction(-7, 3) and row["inf"] == INF and row["n"] == 3
    assert row["iv"] == {"lo": 1, "hi": 2} and row["flag"] is True
    assert back["summary"] == {"checks": 1, "failed": 0, "passed": True}


def test_report_rejects_other_schema():
    with pytest.raises(ValueError):
        io.loads_report(json.dumps({"schema": "x"}))


def test_encode_rejects_unknown_objects():
    with pytest.raises(TypeError):
        io.encode(object())
