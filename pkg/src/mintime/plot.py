"""Deterministic SVG figures for planar scenes.

Sublevel sets ``{T <= t}`` are drawn exactly as the enlargements of the
target, clipped to the view box; the dual-space panel shows the computed
basic subdifferential at the query point.
"""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from fractions import Fraction

from .geometry.polyhedra import HPolyhedron
from .geometry.rational import INF, UnsupportedDimension, vec

WIDTH, HEIGHT = 640, 440
MAIN = (20, 20, 400)  # x, y, size of the primal panel in pixels
INSET = (440, 20, 180)  # dual panel
VIEW = Fraction(4)  # primal window [-VIEW, VIEW]^2
DUAL_VIEW = Fraction(2)
LEVELS = (Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2))
OVERLAYS = ("target", "dynamics", "level-sets", "subdiff")


def _num(v: float) -> str:
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


class _Panel:
    def __init__(self, parent, x0, y0, size, half):
        self.g = ET.SubElement(parent, "g")
        self.x0, self.y0, self.size, self.half = x0, y0, size, float(half)

    def px(self, p):
        s = self.size / (2 * self.half)
        return (self.x0 + (float(p[0]) + self.half) * s, self.y0 + (self.half - float(p[1])) * s)

    def frame(self):
        ET.SubElement(
            self.g, "rect", x=_num(self.x0), y=_num(self.y0), width=_num(self.size), height=_num(self.size),
            fill="none", stroke="#000000",
        )
        h = self.half
        for a, b in (((-h, 0), (h, 0)), ((0, -h), (0, h))):
            (x1, y1), (x2, y2) = self.px(a), self.px(b)
            ET.SubElement(self.g, "line", x1=_num(x1), y1=_num(y1), x2=_num(x2), y2=_num(y2), stroke="#999999")

    def shape(self, pts, **style):
        """Polygon, segment or dot depending on how many distinct points there are."""
        if not pts:
            return
        coords = [self.px(p) for p in pts]
        if len(coords) == 1:
            x, y = coords[0]
            ET.SubElement(self.g, "circle", cx=_num(x), cy=_num(y), r="3", fill=style.get("stroke", "#000000"))
            return
        d = " ".join(f"{_num(x)},{_num(y)}" for x, y in coords)
        tag = "polygon" if len(coords) > 2 else "polyline"
        ET.SubElement(self.g, tag, points=d, **style)


def _ordered(vertices) -> list:
    """Vertices of a convex polygon in counter-clockwise order."""
    if len(vertices) <= 2:
        return list(vertices)
    cx = sum(float(v[0]) for v in vertices) / len(vertices)
    cy = sum(float(v[1]) for v in vertices) / len(vertices)
    return sorted(vertices, key=lambda v: (math.atan2(float(v[1]) - cy, float(v[0]) - cx), v))


def _clipped(P: HPolyhedron, half) -> list:
    Q = P.intersect(HPolyhedron.box([-half, -half], [half, half]))
    if Q.is_empty():
        return []
    verts, _, _ = Q.vrep()
    return _ordered(verts)


def render(scene, overlays=OVERLAYS, point=None) -> str:
    """SVG 1.1 document for a planar scene; unknown overlays raise ``ValueError``."""
    if scene.dim != 2:
        raise UnsupportedDimension("plots are only produced for planar scenes")
    overlays = list(overlays)
    for o in overlays:
        if o not in OVERLAYS:
            raise ValueError(f"unknown overlay {o!r}; choose from {', '.join(OVERLAYS)}")
    point = vec(point) if point is not None else None
    svg = ET.Element(
        "svg", xmlns="http://www.w3.org/2000/svg", version="1.1",
        width=str(WIDTH), height=str(HEIGHT), viewBox=f"0 0 {WIDTH} {HEIGHT}",
    )
    main = _Panel(svg, *MAIN, VIEW)
    main.frame()
    if "level-sets" in overlays:
        _level_sets(main, scene)
    if "target" in overlays:
        _target(main, scene)
    if "dynamics" in overlays:
        _dynamics(main, scene)
    if point is not None and overlays:
        _projection(main, scene, point)
    if "subdiff" in overlays and point is not None:
        inset = _Panel(svg, *INSET, DUAL_VIEW)
        inset.frame()
        _subdiff(inset, scene, point)
    ET.indent(svg)
    return ET.tostring(svg, encoding="unicode") + "\n"


def _target(panel, scene):
    if scene.closed_form:
        cx, cy = panel.px((0, 0))
        r = panel.size / (2 * panel.half)
        ET.SubElement(panel.g, "circle", cx=_num(cx), cy=_num(cy), r=_num(r), fill="none", stroke="#1f4e9c")
        return
    for P in scene.target.pieces:
        panel.shape(_clipped(P, VIEW), fill="#9cb8e6", stroke="#1f4e9c", **{"fill-opacity": "0.6"})


def _level_sets(panel, scene):
    from .timefn import enlargement

    for t in reversed(LEVELS):
        if scene.closed_form:
            if t < 1:
                cx, cy = panel.px((0, 0))
                r = (1 - float(t)) * panel.size / (2 * panel.half)
                ET.SubElement(panel.g, "circle", cx=_num(cx), cy=_num(cy), r=_num(r), fill="none", stroke="#c8a000")
            continue
        for P in enlargement(scene.dynamics, scene.target, t).pieces:
            panel.shape(_clipped(P, VIEW), fill="none", stroke="#c8a000")


def _dynamics(panel, scene):
    if scene.closed_form:
        return
    verts = [tuple(v) for v in scene.dynamics.vertices]
    if len(verts) > 2:
        verts = _ordered(HPolyhedron.from_vrep(verts, dim=2).vrep()[0])
    panel.shape(verts, fill="none", stroke="#b03030")


def _projection(panel, scene, x):
    from .timefn import minimal_time

    if scene.closed_form:
        return
    t, witness = minimal_time(scene.dynamics, scene.target, x)
    panel.shape([x], stroke="#000000")
    if t != INF and t != 0 and witness is not None:
        panel.shape([x, witness.w], fill="none", stroke="#000000")


def _subdiff(panel, scene, x):
    from .subdiff import subdiff

    if scene.closed_form:
        return
    if scene.T(x) == INF:
        return
    res = subdiff(scene.dynamics, scene.target, x, "basic")
    for P in res.set.pieces:
        panel.shape(_clipped(P, DUAL_VIEW), fill="#d0e8c0", stroke="#2e7d32")


__all__ = ["LEVELS", "OVERLAYS", "render"]
