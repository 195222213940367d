"""Constant convex dynamics: polytopes given by vertices, or Euclidean balls."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .geometry.lp import lp_solve
from .geometry.polyhedra import HPolyhedron
from .geometry.rational import INF, DimensionError, dot, norm_sq, rat, sqrt_interval, vec

POLYTOPE = "polytope"
BALL = "ball"


class Dynamics:
    """Velocity set ``F``: ``conv(vertices)`` or the closed ball of ``radius`` about 0.

    ``G = conv(F u {0})`` is cached as :attr:`g_vertices`; the gauges of ``F``
    and ``G`` coincide and ``{u : gauge(u) <= t} = t*G``.
    """

    __slots__ = ("kind", "dim", "vertices", "radius", "g_vertices", "_flags", "_hrep")

    def __init__(self, vertices: Sequence[Sequence] | None = None, *, radius=None, dim: int | None = None):
        if (vertices is None) == (radius is None):
            raise ValueError("give exactly one of vertices or radius")
        self._flags = None
        self._hrep = None
        if radius is not None:
            self.kind = BALL
            self.radius = rat(radius)
            if self.radius <= 0:
                raise ValueError("ball radius must be positive")
            if dim is None:
                raise ValueError("ball dynamics need an explicit dimension")
            self.dim = dim
            self.vertices = ()
            self.g_vertices = ()
            return
        self.kind = POLYTOPE
        self.radius = None
        verts = sorted({vec(v) for v in vertices})
        if not verts:
            raise ValueError("dynamics need at least one vertex")
        self.dim = len(verts[0])
        if any(len(v) != self.dim for v in verts):
            raise DimensionError("vertices of different lengths")
        self.vertices = tuple(verts)
        origin = (Fraction(0),) * self.dim
        self.g_vertices = tuple(sorted(set(verts) | {origin}))

    @classmethod
    def polytope(cls, vertices) -> "Dynamics":
        return cls(vertices)

    @classmethod
    def ball(cls, radius, dim: int = 2) -> "Dynamics":
        return cls(radius=radius, dim=dim)

    @property
    def is_ball(self) -> bool:
        return self.kind == BALL

    def _check(self, x):
        if len(x) != self.dim:
            raise DimensionError(f"vector of length {len(x)} for dynamics in R^{self.dim}")

    def support(self, xstar: Sequence):
        """``sigma_F(x*) = max over F of <x*, q>`` (an Interval for irrational ball values)."""
        xstar = vec(xstar)
        self._check(xstar)
        if self.is_ball:
            return self.radius * sqrt_interval(norm_sq(xstar))
        return max(dot(xstar, v) for v in self.vertices)

    def gauge(self, u: Sequence):
        """Minkowski gauge ``inf{t >= 0 : u in tF}``; ``INF`` when no such t."""
        u = vec(u)
        self._check(u)
        if all(x == 0 for x in u):
            return Fraction(0)
        if self.is_ball:
            return sqrt_interval(norm_sq(u)) / self.radius
        res = self.gauge_lp(u)
        return res.value if res.optimal else INF

    def gauge_lp(self, u):
        k = len(self.vertices)
        A_eq = [[v[i] for v in self.vertices] for i in range(self.dim)]
        return lp_solve([1] * k, A_eq=A_eq, b_eq=list(u), nonneg=True)

    def bound_sq(self) -> Fraction:
        """``|F|^2``, the largest squared velocity norm."""
        if self.is_ball:
            return self.radius**2
        return max(norm_sq(v) for v in self.vertices)

    def bound(self):
        """``|F|`` exactly when rational, else a certified Interval."""
        return sqrt_interval(self.bound_sq())

    def contains(self, q: Sequence) -> bool:
        q = vec(q)
        self._check(q)
        if self.is_ball:
            return norm_sq(q) <= self.radius**2
        k = len(self.vertices)
        A_eq = [[v[i] for v in self.vertices] for i in range(self.dim)] + [[1] * k]
        return lp_solve([0] * k, A_eq=A_eq, b_eq=list(q) + [1], nonneg=True).optimal

    def barycentric(self, q: Sequence):
        """Nonnegative weights summing to 1 with ``sum w_i v_i = q`` (polytopes)."""
        k = len(self.vertices)
        A_eq = [[v[i] for v in self.vertices] for i in range(self.dim)] + [[1] * k]
        res = lp_solve([0] * k, A_eq=A_eq, b_eq=list(vec(q)) + [1], nonneg=True)
        return res.x if res.optimal else None

    def _compute_flags(self):
        origin = (Fraction(0),) * self.dim
        if self.is_ball:
            return True, True
        has0 = self.contains(origin)
        interior = has0
        if has0:
            # 0 in int F  iff  the cone generated by F is the whole space
            for i in range(self.dim):
                for s in (1, -1):
                    e = [0] * self.dim
                    e[i] = s
                    if self.gauge(e) == INF:
                        interior = False
        return has0, interior

    @property
    def contains_origin(self) -> bool:
        if self._flags is None:
            self._flags = self._compute_flags()
        return self._flags[0]

    @property
    def origin_interior(self) -> bool:
        if self._flags is None:
            self._flags = self._compute_flags()
        return self._flags[1]

    def hrep(self) -> HPolyhedron:
        """``F`` as an H-polytope (dim <= 3)."""
        if self.is_ball:
            raise ValueError("ball dynamics have no polyhedral description")
        if self._hrep is None:
            self._hrep = HPolyhedron.from_vrep(self.vertices, dim=self.dim)
        return self._hrep

    def scaled(self, t) -> "Dynamics":
        t = rat(t)
        if self.is_ball:
            return Dynamics.ball(self.radius * t, self.dim)
        return Dynamics([[t * x for x in v] for v in self.vertices])

    def __repr__(self) -> str:
        if self.is_ball:
            return f"Dynamics(ball radius={self.radius}, dim={self.dim})"
        return f"Dynamics({len(self.vertices)} vertices in R^{self.dim})"


def support(F: Dynamics, xstar):
    return F.support(xstar)


def gauge(F: Dynamics, u):
    return F.gauge(u)


def dynamics_bound(F: Dynamics) -> Fraction:
    """Squared dynamics bound ``|F|^2`` (kept squared to stay rational)."""
    return F.bound_sq()
