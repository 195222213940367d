"""JSON scenes and reports.

Rationals are stored as ``"p/q"`` (or ``"p"``) strings and ``+inf`` as
``"inf"``, so files round-trip exactly.

Scene schema (``"schema": "mintime.scene/1"``)::

    {
      "schema": "mintime.scene/1",
      "name": "segment-box",
      "dim": 2,
      "dynamics": {"vertices": [["-1", "0"], ["1", "0"]]}   # or {"ball": "1"}
      "target": {"pieces": [{"rows": [{"a": ["1", "0"], "b": "1"}, ...]}]}
                # or {"closed_form": "ball-complement"}
      "points": [["2", "1/2"]],
      "options": {"eps": "1/10", "eta": "1/10", "r": "1", "lambda": "1/2",
                  "sampling": {...}}                         # all optional
    }

Report schema (``"schema": "mintime.report/1"``)::

    {"schema": "mintime.report/1", "command": "...", "scene": "...",
     "results": [...], "summary": {"checks": n, "failed": k, "passed": bool}}
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

from .dynamics import Dynamics
from .geometry.polyhedra import HPolyhedron, PolyhedralUnion
from .geometry.rational import INF, Interval, fmt, parse_ext, vec
from .scenes import BallComplementScene, Scene
from .timefn import Target

SCENE_SCHEMA = "mintime.scene/1"
REPORT_SCHEMA = "mintime.report/1"

_RAT = re.compile(r"^[+-]?\d+(/\d+)?$")
_OPTION_KEYS = {"eps", "eta", "r", "lambda"}


class SceneParseError(ValueError):
    """Malformed scene data; ``field`` is a dotted path, ``line`` set for JSON syntax errors."""

    def __init__(self, message: str, field: str = "", line: int | None = None):
        self.field = field
        self.line = line
        where = field or "<root>"
        if line is not None:
            where += f" (line {line})"
        super().__init__(f"{where}: {message}")


def _rat(value, field: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise SceneParseError(f"expected a rational string, got {value!r}", field)
    if isinstance(value, str) and not _RAT.match(value.strip()):
        raise SceneParseError(f"not a rational: {value!r}", field)
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise SceneParseError(str(exc), field) from None


def _vector(value, dim: int, field: str) -> tuple:
    if not isinstance(value, list):
        raise SceneParseError("expected a list", field)
    if len(value) != dim:
        raise SceneParseError(f"expected {dim} coordinates, got {len(value)}", field)
    return tuple(_rat(v, f"{field}[{i}]") for i, v in enumerate(value))


def _require(obj: dict, key: str, field: str):
    if not isinstance(obj, dict):
        raise SceneParseError("expected an object", field)
    if key not in obj:
        raise SceneParseError("missing field", f"{field}.{key}" if field else key)
    return obj[key]


def scene_from_dict(data: dict):
    """Build and validate a scene; raises :class:`SceneParseError`."""
    if not isinstance(data, dict):
        raise SceneParseError("scene must be a JSON object")
    schema = data.get("schema", SCENE_SCHEMA)
    if schema != SCENE_SCHEMA:
        raise SceneParseError(f"unsupported schema {schema!r}", "schema")
    dim = _require(data, "dim", "")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise SceneParseError("dimension must be a positive integer", "dim")
    name = data.get("name", "scene")
    if not isinstance(name, str):
        raise SceneParseError("expected a string", "name")

    points = [_vector(p, dim, f"points[{i}]") for i, p in enumerate(data.get("points", []))]
    options = _options(data.get("options", {}))

    target = _require(data, "target", "")
    if isinstance(target, dict) and "closed_form" in target:
        if target["closed_form"] != "ball-complement":
            raise SceneParseError(f"unknown closed form {target['closed_form']!r}", "target.closed_form")
        dyn = data.get("dynamics", {"ball": "1"})
        if dyn != {"ball": "1"} or dim != 2:
            raise SceneParseError("the ball-complement scene uses unit-ball dynamics in R^2", "dynamics")
        return BallComplementScene(name=name, points=points or [(Fraction(0), Fraction(0))], options=options)

    dynamics = _dynamics(_require(data, "dynamics", ""), dim)
    if dynamics.is_ball:
        raise SceneParseError("ball dynamics are only supported with the closed-form target", "dynamics")
    pieces = _require(target, "pieces", "target")
    if not isinstance(pieces, list) or not pieces:
        raise SceneParseError("target needs at least one piece", "target.pieces")
    polys = []
    for i, piece in enumerate(pieces):
        field = f"target.pieces[{i}]"
        rows = _require(piece, "rows", field)
        if not isinstance(rows, list):
            raise SceneParseError("expected a list", f"{field}.rows")
        parsed = []
        for j, row in enumerate(rows):
            rf = f"{field}.rows[{j}]"
            parsed.append((_vector(_require(row, "a", rf), dim, f"{rf}.a"), _rat(_require(row, "b", rf), f"{rf}.b")))
        polys.append(HPolyhedron(dim, parsed))
    union = PolyhedralUnion(dim, polys)
    if union.is_empty():
        raise SceneParseError("target is empty", "target")
    return Scene(name, dynamics, Target(union), points, options)


def _dynamics(d, dim: int) -> Dynamics:
    if not isinstance(d, dict):
        raise SceneParseError("expected an object", "dynamics")
    if "ball" in d:
        r = _rat(d["ball"], "dynamics.ball")
        if r <= 0:
            raise SceneParseError("radius must be positive", "dynamics.ball")
        return Dynamics.ball(r, dim)
    verts = _require(d, "vertices", "dynamics")
    if not isinstance(verts, list) or not verts:
        raise SceneParseError("dynamics need at least one vertex", "dynamics.vertices")
    return Dynamics([_vector(v, dim, f"dynamics.vertices[{i}]") for i, v in enumerate(verts)])


def _options(opts) -> dict:
    if not isinstance(opts, dict):
        raise SceneParseError("expected an object", "options")
    out = {}
    for key, value in opts.items():
        if key in _OPTION_KEYS:
            out[key] = _rat(value, f"options.{key}")
        elif key == "sampling":
            if not isinstance(value, dict):
                raise SceneParseError("expected an object", "options.sampling")
            out[key] = dict(value)
        else:
            raise SceneParseError("unknown option", f"options.{key}")
    return out


def scene_to_dict(scene) -> dict:
    out = {"schema": SCENE_SCHEMA, "name": scene.name, "dim": scene.dim}
    if scene.closed_form:
        out["dynamics"] = {"ball": "1"}
        out["target"] = {"closed_form": "ball-complement"}
    else:
        out["dynamics"] = {"vertices": [[fmt(c) for c in v] for v in scene.dynamics.vertices]}
        out["target"] = {
            "pieces": [
                {"rows": [{"a": [fmt(c) for c in a], "b": fmt(b)} for a, b in P.rows]}
                for P in scene.target.pieces
            ]
        }
    out["points"] = [[fmt(c) for c in p] for p in scene.points]
    opts = {}
    for key, value in sorted(scene.options.items()):
        opts[key] = dict(value) if key == "sampling" else fmt(value)
    out["options"] = opts
    return out


def loads_scene(text: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SceneParseError(exc.msg, "", exc.lineno) from None
    return scene_from_dict(data)


def load_scene(path):
    return loads_scene(Path(path).read_text())


def dumps_scene(scene) -> str:
    return json.dumps(scene_to_dict(scene), indent=2) + "\n"


# ---------------------------------------------------------------------------
# reports


def encode(value):
    """Plain-JSON form of nested results (Fractions, intervals, sets, tuples)."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return fmt(value)
    if isinstance(value, float):
        if value == INF:
            return "inf"
        return value
    if isinstance(value, Interval):
        return {"lo": fmt(value.lo), "hi": fmt(value.hi)}
    if isinstance(value, (HPolyhedron, PolyhedralUnion)):
        return value.describe()
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    if hasattr(value, "to_dict"):
        return encode(value.to_dict())
    raise TypeError(f"cannot encode {type(value).__name__}")


def decode(value):
    """Inverse of :func:`encode` for rational strings; other data is passed through."""
    if isinstance(value, str):
        if value == "inf":
            return INF
        if _RAT.match(value):
            return Fraction(value)
        return value
    if isinstance(value, list):
        return [decode(v) for v in value]
    if isinstance(value, dict):
        return {k: decode(v) for k, v in value.items()}
    return value


def make_report(command: str, scene_name: str, results: list, checks: int | None = None, failed: int = 0) -> dict:
    checks = len(results) if checks is None else checks
    return {
        "schema": REPORT_SCHEMA,
        "command": command,
        "scene": scene_name,
        "results": encode(results),
        "summary": {"checks": checks, "failed": failed, "passed": failed == 0},
    }


def dumps_report(report: dict) -> str:
    return json.dumps(encode(report), indent=2, sort_keys=False) + "\n"


def loads_report(text: str) -> dict:
    data = json.loads(text)
    if data.get("schema") != REPORT_SCHEMA:
        raise ValueError(f"unsupported report schema {data.get('schema')!r}")
    return decode(data)


__all__ = [
    "REPORT_SCHEMA",
    "SCENE_SCHEMA",
    "SceneParseError",
    "decode",
    "dumps_report",
    "dumps_scene",
    "encode",
    "load_scene",
    "loads_report",
    "loads_scene",
    "make_report",
    "parse_ext",
    "scene_from_dict",
    "scene_to_dict",
    "vec",
]
