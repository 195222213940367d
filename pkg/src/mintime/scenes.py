"""Scenes (dynamics + target + query points), named fixtures and random generators."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .dynamics import Dynamics
from .geometry.polyhedra import HPolyhedron
from .geometry.rational import INF, norm_sq, sqrt_interval, vec
from .timefn import LevelSetEvaluator, Target, minimal_time

HALF = Fraction(1, 2)


@dataclass
class Scene:
    """Polytope dynamics and a polyhedral target, with optional query points."""

    name: str
    dynamics: Dynamics
    target: Target
    points: list = field(default_factory=list)
    options: dict = field(default_factory=dict)
    _evaluator: LevelSetEvaluator | None = field(default=None, repr=False)

    closed_form = False

    @property
    def dim(self) -> int:
        return self.dynamics.dim

    @property
    def is_convex(self) -> bool:
        return self.target.is_convex

    def T(self, x):
        return minimal_time(self.dynamics, self.target, x)[0]

    @property
    def evaluator(self) -> LevelSetEvaluator:
        if self._evaluator is None:
            self._evaluator = LevelSetEvaluator(self.dynamics, self.target)
        return self._evaluator

    def T_float(self, X) -> np.ndarray:
        return self.evaluator.values(X)

    def T_closed(self, x):
        """Exact value from the closed-form level-set tables (no LP)."""
        return self.evaluator.value(x)

    def in_target(self, x) -> bool:
        return self.target.contains(x)


@dataclass
class BallComplementScene:
    """Unit-ball dynamics with target ``{|x| >= 1}``: ``T(x) = max(0, 1 - |x|)``.

    Not polyhedral, so it carries its own closed forms instead of LP data.
    """

    name: str = "ball-complement"
    dim: int = 2
    points: list = field(default_factory=lambda: [(Fraction(0), Fraction(0))])
    options: dict = field(default_factory=dict)

    closed_form = True
    is_convex = False

    @property
    def dynamics(self) -> Dynamics:
        return Dynamics.ball(1, self.dim)

    def T(self, x):
        x = vec(x)
        n2 = norm_sq(x)
        if n2 >= 1:
            return Fraction(0)
        return 1 - sqrt_interval(n2)

    T_closed = T

    def T_float(self, X) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        return np.maximum(0.0, 1.0 - np.linalg.norm(X, axis=1))

    def in_target(self, x) -> bool:
        return norm_sq(vec(x)) >= 1


def _halfplane(a, b):
    return [(a, b)]


def segment_dynamics():
    return Dynamics([(-1, 0), (1, 0)])


def box_complement_target():
    """``R^2 minus the open square (-1,1)^2`` as four closed half-planes."""
    return Target.from_pieces(
        2,
        [
            _halfplane((-1, 0), -1),
            _halfplane((1, 0), -1),
            _halfplane((0, -1), -1),
            _halfplane((0, 1), -1),
        ],
    )


def square_target():
    return Target.convex(HPolyhedron.box([-1, -1], [1, 1]))


def fixture(name: str):
    """Named scenes used by the acceptance suite and the CLI."""
    if name == "segment-box-complement":
        return Scene(name, segment_dynamics(), box_complement_target(), [(1, 0), (0, 1), (HALF, HALF)])
    if name == "segment-box":
        return Scene(name, segment_dynamics(), square_target(), [(1, 0), (0, 1), (2, HALF)])
    if name == "ball-complement":
        return BallComplementScene()
    if name == "unit-interval-halfline":
        return Scene(name, Dynamics([(0,), (1,)]), Target.convex(HPolyhedron(1, [((1,), 0)])), [(1,)])
    if name == "box-box-complement":
        box = Dynamics([(-1, -1), (1, -1), (1, 1), (-1, 1)])
        return Scene(name, box, box_complement_target(), [(0, 0), (HALF, 0), (HALF, HALF)])
    raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}")


FIXTURES = (
    "segment-box-complement",
    "segment-box",
    "ball-complement",
    "unit-interval-halfline",
    "box-box-complement",
)

# points where the closed-form T is (or is not) locally Lipschitz
LIPSCHITZ_POINTS = (
    ("segment-box-complement", (1, 0), True),
    ("segment-box-complement", (HALF, HALF), True),
    ("segment-box", (1, 0), True),
    ("segment-box", (2, HALF), True),
    ("segment-box-complement", (0, 1), False),
    ("segment-box", (0, 1), False),
)


# ---------------------------------------------------------------------------
# random scenes


def _rq(rng: random.Random, lo: int, hi: int, den: int = 2) -> Fraction:
    return Fraction(rng.randint(lo * den, hi * den), den)


def random_dynamics(rng: random.Random, with_origin: bool | None = None) -> Dynamics:
    """2D polytope dynamics with 2 to 5 rational vertices in ``[-2, 2]^2``."""
    k = rng.randint(2, 5)
    pts = set()
    while len(pts) < k:
        p = (_rq(rng, -2, 2), _rq(rng, -2, 2))
        if p != (0, 0):
            pts.add(p)
    if with_origin is None:
        with_origin = rng.random() < 0.5
    if with_origin:
        pts.add((Fraction(0), Fraction(0)))
    return Dynamics(sorted(pts))


def random_polygon(rng: random.Random, center_range: int = 3, size: int = 2) -> HPolyhedron:
    """Convex polygon: hull of 3 to 5 rational points around a random center."""
    cx, cy = _rq(rng, -center_range, center_range), _rq(rng, -center_range, center_range)
    while True:
        pts = {(cx + _rq(rng, -size, size, 2), cy + _rq(rng, -size, size, 2)) for _ in range(rng.randint(3, 5))}
        if len(pts) < 3:
            continue
        P = HPolyhedron.from_vrep(sorted(pts), dim=2)
        if not P.implicit_equalities():
            return P.canonical()


def random_box(rng: random.Random, span: int = 3) -> HPolyhedron:
    lo = [_rq(rng, -span, span - 1) for _ in range(2)]
    hi = [l + Fraction(rng.randint(1, 4), 2) for l in lo]
    return HPolyhedron.box(lo, hi)


def random_halfplane_region(rng: random.Random) -> HPolyhedron:
    """Unbounded convex region: one or two half-planes."""
    rows = []
    for _ in range(rng.randint(1, 2)):
        a = (Fraction(rng.randint(-2, 2)), Fraction(rng.randint(-2, 2)))
        if a == (0, 0):
            a = (Fraction(1), Fraction(0))
        rows.append((a, _rq(rng, -2, 2)))
    P = HPolyhedron(2, rows)
    if P.is_empty():
        return HPolyhedron(2, rows[:1])
    return P


def random_point(rng: random.Random, span: int = 4) -> tuple:
    return (_rq(rng, -span, span, 4), _rq(rng, -span, span, 4))


def random_scene(rng: random.Random, idx: int = 0) -> Scene:
    """Random 2D polyhedral scene with one or two pieces."""
    F = random_dynamics(rng)
    pieces = [random_polygon(rng) if rng.random() < 0.7 else random_halfplane_region(rng)]
    if rng.random() < 0.5:
        pieces.append(random_polygon(rng))
    target = Target.from_pieces(2, pieces)
    return Scene(f"random-{idx}", F, target, [random_point(rng) for _ in range(3)])


def random_convex_scene(rng: random.Random, idx: int = 0, with_origin: bool | None = None) -> Scene:
    F = random_dynamics(rng, with_origin)
    P = random_polygon(rng, center_range=2) if rng.random() < 0.7 else random_box(rng)
    return Scene(f"convex-{idx}", F, Target.convex(P), [random_point(rng, 3) for _ in range(3)])


def random_two_box_scene(rng: random.Random, idx: int = 0) -> Scene:
    """Union of two overlapping or touching boxes (a nonconvex target)."""
    while True:
        b1, b2 = random_box(rng, 2), random_box(rng, 2)
        target = Target.from_pieces(2, [b1, b2])
        if not b1.is_subset(b2) and not b2.is_subset(b1):
            break
    F = random_dynamics(rng, with_origin=True)
    return Scene(f"two-box-{idx}", F, target, [])


def float_norm(x) -> float:
    return math.sqrt(sum(float(c) ** 2 for c in x))


__all__ = [
    "BallComplementScene",
    "FIXTURES",
    "INF",
    "LIPSCHITZ_POINTS",
    "Scene",
    "fixture",
    "random_convex_scene",
    "random_scene",
    "random_two_box_scene",
]
