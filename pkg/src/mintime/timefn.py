"""Minimal time function, generalized projections and target enlargements.

For a convex velocity set ``F`` and a closed target ``Omega`` (finite union of
H-polyhedra) the minimal time is ``T(x) = inf{t >= 0 : Omega meets x + tF}``.
Each convex piece ``P`` contributes the LP ``min sum(lam)`` subject to
``x + sum(lam_i v_i) in P`` and ``lam >= 0``; the target value is the minimum
over pieces.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .dynamics import Dynamics
from .geometry.lp import lp_solve
from .geometry.polyhedra import HPolyhedron, PolyhedralUnion
from .geometry.qp import project
from .geometry.rational import (
    INF,
    DimensionError,
    add,
    dot,
    lower,
    scale,
    sqrt_interval,
    sub,
    vec,
)


class EmptyProjection(ValueError):
    """The projection is requested at a point with infinite minimal time."""


class Target:
    """Closed target set: a nonempty finite union of H-polyhedra."""

    __slots__ = ("union",)

    def __init__(self, union: PolyhedralUnion):
        if union.is_empty():
            raise ValueError("target must be nonempty")
        self.union = union

    @classmethod
    def from_pieces(cls, dim: int, pieces: Iterable) -> "Target":
        """Build from pieces given as HPolyhedron objects or lists of ``(a, b)`` rows."""
        polys = [p if isinstance(p, HPolyhedron) else HPolyhedron(dim, p) for p in pieces]
        return cls(PolyhedralUnion(dim, polys))

    @classmethod
    def convex(cls, piece: HPolyhedron) -> "Target":
        return cls(PolyhedralUnion(piece.dim, [piece]))

    @property
    def dim(self) -> int:
        return self.union.dim

    @property
    def pieces(self):
        return self.union.pieces

    @property
    def is_convex(self) -> bool:
        return len(self.union.pieces) == 1

    def contains(self, x) -> bool:
        return self.union.contains(vec(x))

    __contains__ = contains

    def __repr__(self) -> str:
        return f"Target({len(self.pieces)} pieces in R^{self.dim})"


@dataclass(frozen=True)
class TimeWitness:
    """Certificate ``w = x + t*q`` with ``w`` in piece ``piece`` and ``q`` in ``F``.

    ``lam`` holds nonnegative vertex weights with ``sum(lam) = t`` and
    ``sum(lam_i v_i) = t*q``; it is None for ball dynamics.
    """

    t: Fraction
    w: tuple
    piece: int
    q: tuple | None
    lam: tuple | None

    def verify(self, F: Dynamics, omega: Target, x) -> bool:
        x = vec(x)
        if not omega.pieces[self.piece].contains(self.w):
            return False
        if self.t == 0:
            return self.w == x
        if self.q is None or add(x, scale(self.t, self.q)) != self.w:
            return False
        if self.lam is not None:
            if any(l < 0 for l in self.lam) or sum(self.lam) != self.t:
                return False
            combo = [sum(l * v[i] for l, v in zip(self.lam, F.vertices)) for i in range(F.dim)]
            return tuple(combo) == scale(self.t, self.q)
        return F.contains(self.q)


def _check_dims(F, omega, x):
    if F.dim != omega.dim or len(x) != F.dim:
        raise DimensionError(f"dynamics R^{F.dim}, target R^{omega.dim}, point R^{len(x)}")


def _piece_lp(F: Dynamics, P: HPolyhedron, x):
    # A (x + V lam) <= b  <=>  (A V) lam <= b - A x
    A_ub = [[dot(a, v) for v in F.vertices] for a, _ in P.rows]
    b_ub = [b - dot(a, x) for a, b in P.rows]
    return lp_solve([1] * len(F.vertices), A_ub, b_ub, nonneg=True)


def minimal_time(F: Dynamics, omega: Target, x: Sequence):
    """Return ``(T(x), witness)``; the witness is None when ``T(x) = inf``.

    Ball dynamics give ``T = dist(x, Omega) / radius``; the value is a
    certified Interval when the distance is irrational (and no witness).
    """
    x = vec(x)
    _check_dims(F, omega, x)
    for i, P in enumerate(omega.pieces):
        if P.contains(x):
            return Fraction(0), TimeWitness(Fraction(0), x, i, None, ())
    if F.is_ball:
        return _minimal_time_ball(F, omega, x)
    best = None
    for i, P in enumerate(omega.pieces):
        res = _piece_lp(F, P, x)
        if res.optimal and (best is None or res.value < best[0].value):
            best = (res, i)
    if best is None:
        return INF, None
    res, i = best
    t = res.value
    lam = res.x
    tq = tuple(sum(l * v[k] for l, v in zip(lam, F.vertices)) for k in range(F.dim))
    w = add(x, tq)
    return t, TimeWitness(t, w, i, scale(1 / t, tq), lam)


def _minimal_time_ball(F, omega, x):
    best = None
    for i, P in enumerate(omega.pieces):
        res = project(x, P.rows, F.dim)
        if res is not None and (best is None or res[1] < best[0][1]):
            best = (res, i)
    (w, d2), i = best
    t = sqrt_interval(d2) / F.radius
    if isinstance(t, Fraction):
        return t, TimeWitness(t, w, i, scale(1 / t, sub(w, x)), None)
    return t, None


def time_value(F, omega, x):
    return minimal_time(F, omega, x)[0]


def gauge_representation_value(F: Dynamics, omega: Target, x):
    """``min over pieces P, w in P of gauge(w - x)`` solved jointly in ``(w, lam)``."""
    x = vec(x)
    _check_dims(F, omega, x)
    n, k = F.dim, len(F.vertices)
    best = INF
    for P in omega.pieces:
        # variables: w (free, n), lam (>= 0, k); w - V lam = x; A w <= b
        c = [0] * n + [1] * k
        A_ub = [list(a) + [0] * k for a, _ in P.rows]
        b_ub = [b for _, b in P.rows]
        A_eq = []
        for i in range(n):
            row = [0] * (n + k)
            row[i] = 1
            for j, v in enumerate(F.vertices):
                row[n + j] = -v[i]
            A_eq.append(row)
        res = lp_solve(c, A_ub, b_ub, A_eq, list(x), nonneg=[False] * n + [True] * k)
        if res.optimal and (best == INF or res.value < best):
            best = res.value
    return best


def gauge_representation_check(F: Dynamics, omega: Target, x) -> bool:
    """``T(x)`` equals the gauge-distance program (exact)."""
    return time_value(F, omega, x) == gauge_representation_value(F, omega, x)


@dataclass(frozen=True)
class ProjectionSet:
    """``(x + T(x) F) n Omega`` as a union of polyhedra plus a canonical witness."""

    pieces: PolyhedralUnion
    witness: TimeWitness

    def contains(self, w) -> bool:
        return self.pieces.contains(vec(w))

    def points(self) -> list:
        """Sorted vertices of all pieces (dim <= 3)."""
        pts = set()
        for p in self.pieces.pieces:
            pts.update(p.vrep()[0])
        return sorted(pts)

    def is_singleton(self) -> bool:
        pts = self.points()
        return len(pts) == 1 and all(not p.vrep()[1] and not p.vrep()[2] for p in self.pieces.pieces)


def reach_body(F: Dynamics, x, t) -> HPolyhedron:
    """``x + tF`` as an H-polytope (dim <= 3)."""
    return HPolyhedron.from_vrep([add(x, scale(t, v)) for v in F.vertices], dim=F.dim)


def projection_set(F: Dynamics, omega: Target, x) -> ProjectionSet:
    x = vec(x)
    t, wit = minimal_time(F, omega, x)
    if t == INF:
        raise EmptyProjection(f"minimal time is infinite at {x}")
    if t == 0:
        return ProjectionSet(PolyhedralUnion(F.dim, [HPolyhedron.point(x)]), wit)
    if F.is_ball:
        raise ValueError("projection sets are polyhedral only for polytope dynamics")
    body = reach_body(F, x, t)
    inter = PolyhedralUnion(F.dim, [P.intersect(body) for P in omega.pieces])
    # canonical witness: lexicographically smallest vertex
    best = None
    for P in omega.pieces:
        Q = P.intersect(body)
        if Q.is_empty():
            continue
        v = min(Q.vrep()[0])
        if best is None or v < best:
            best = v
    piece = next(i for i, P in enumerate(omega.pieces) if P.contains(best) and body.contains(best))
    q = scale(1 / t, sub(best, x))
    weights = F.barycentric(q)
    lam = tuple(t * l for l in weights)
    return ProjectionSet(inter, TimeWitness(t, best, piece, q, lam))


def enlargement(F: Dynamics, omega: Target, r) -> Target:
    """``Omega_r = {x : T(x) <= r} = Omega + r*(-G)``, piecewise (dim <= 3)."""
    r = Fraction(r)
    if r < 0:
        raise ValueError("enlargement radius must be nonnegative")
    if F.is_ball:
        raise ValueError("enlargements are polyhedral only for polytope dynamics")
    if r == 0:
        return omega
    shift = [scale(-r, g) for g in F.g_vertices]
    return Target(PolyhedralUnion(F.dim, [P.minkowski_polytope(shift) for P in omega.pieces]))


def in_enlargement(F: Dynamics, omega: Target, r, x) -> bool:
    """Membership oracle for ``Omega_r`` in any dimension."""
    t = time_value(F, omega, x)
    return t != INF and lower(t) <= Fraction(r)


def enlargement_identity_check(F, omega, r, x, omega_r: Target | None = None):
    """``T(x) = r + T_{Omega_r}(x)`` when ``x`` lies outside ``Omega_r``.

    Returns None (vacuous) when the precondition fails.
    """
    x = vec(x)
    r = Fraction(r)
    t = time_value(F, omega, x)
    if t == INF or t <= r:
        return None
    omega_r = omega_r if omega_r is not None else enlargement(F, omega, r)
    return t == r + time_value(F, omega_r, x)


def projection_linearity_check(F, omega, xbar, wbar, lam) -> bool:
    """``T(lam*w + (1-lam)*x) = (1-lam)*T(x)`` for ``w`` in the projection of ``x``."""
    xbar, wbar, lam = vec(xbar), vec(wbar), Fraction(lam)
    t = time_value(F, omega, xbar)
    z = add(scale(lam, wbar), scale(1 - lam, xbar))
    return time_value(F, omega, z) == (1 - lam) * t


def shifted_argument_check(F, omega, r, x, t, q):
    """``T(x - t*q) <= r + t`` for ``x`` in ``Omega_r``; None if ``x`` is outside."""
    x, q, t, r = vec(x), vec(q), Fraction(t), Fraction(r)
    tx = time_value(F, omega, x)
    if tx == INF or tx > r or not F.contains(q):
        return None
    val = time_value(F, omega, sub(x, scale(t, q)))
    return val != INF and val <= r + t


@dataclass
class ProbeReport:
    mode: str
    checked: int
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations


def convexity_concavity_probe(F, omega, pairs, lambdas, mode: str = "convex", region=None) -> ProbeReport:
    """Check ``T(lam x1 + (1-lam) x2)`` against the chord on sample pairs.

    ``mode="convex"`` records chord violations ``T(mid) > chord``;
    ``mode="concave"`` records ``T(mid) < chord`` for pairs whose endpoints lie
    in ``region`` (a predicate, default: outside the target) with finite T.
    """
    violations, checked = [], 0
    if region is None:
        region = lambda p: not omega.contains(p)  # noqa: E731
    cache = {}

    def value(p):
        if p not in cache:
            cache[p] = time_value(F, omega, p)
        return cache[p]

    for x1, x2 in pairs:
        x1, x2 = vec(x1), vec(x2)
        if mode != "convex" and not (region(x1) and region(x2)):
            continue
        t1, t2 = value(x1), value(x2)
        if t1 == INF or t2 == INF:
            continue
        for lam in lambdas:
            lam = Fraction(lam)
            chord = lam * t1 + (1 - lam) * t2
            tz = value(add(scale(lam, x1), scale(1 - lam, x2)))
            checked += 1
            if mode == "convex":
                if tz == INF or tz > chord:
                    violations.append((x1, x2, lam, tz, chord))
            elif tz < chord:
                violations.append((x1, x2, lam, tz, chord))
    return ProbeReport(mode, checked, violations)


class LevelSetEvaluator:
    """Closed-form ``T`` for polytope dynamics and polyhedral targets (dim <= 3).

    For a piece ``P`` the set ``P + t(-G)`` has, for every ``t > 0``, facet
    normals among those of ``P + (-G)``; together with the rows of ``P`` they
    give finitely many normals ``a`` with ``x in P + t(-G)`` iff
    ``a.x <= h_P(a) + t*h(a)`` where ``h(a) = max over G of -a.g``.  Hence
    ``T_P(x)`` is a maximum of affine ratios, or ``inf`` when a row with
    ``h(a) = 0`` is violated.
    """

    def __init__(self, F: Dynamics, omega: Target, tol: float = 1e-12):
        if F.is_ball:
            raise ValueError("closed-form level sets need polytope dynamics")
        self.F, self.omega, self.tol = F, omega, tol
        neg_g = [scale(-1, g) for g in F.g_vertices]
        self.tables = []
        for P in omega.pieces:
            normals = {}
            for a, _ in P.rows + P.minkowski_polytope(neg_g).rows:
                normals.setdefault(tuple(a), None)
            finite, hard = [], []
            for a in normals:
                hp = P.maximize(a)
                hk = max(max(-dot(a, g) for g in F.g_vertices), Fraction(0))
                (finite if hk > 0 else hard).append((a, hp, hk))
            self.tables.append((finite, hard))
        self._np = [
            (
                np.array([[float(c) for c in a] for a, _, _ in fin], dtype=float).reshape(len(fin), F.dim),
                np.array([float(hp) for _, hp, _ in fin]),
                np.array([float(hk) for _, _, hk in fin]),
                np.array([[float(c) for c in a] for a, _, _ in hard], dtype=float).reshape(len(hard), F.dim),
                np.array([float(hp) for _, hp, _ in hard]),
            )
            for fin, hard in self.tables
        ]

    def value(self, x) -> Fraction | float:
        x = vec(x)
        best = INF
        for finite, hard in self.tables:
            if any(dot(a, x) > hp for a, hp, _ in hard):
                continue
            t = max([Fraction(0)] + [(dot(a, x) - hp) / hk for a, hp, hk in finite])
            if best == INF or t < best:
                best = t
        return best

    def values(self, X) -> np.ndarray:
        """Vectorised float evaluation on an ``(m, dim)`` array."""
        X = np.atleast_2d(np.asarray(X, dtype=float))
        out = np.full(X.shape[0], np.inf)
        for A, hp, hk, H, hh in self._np:
            t = np.zeros(X.shape[0])
            if len(hp):
                t = np.maximum(t, ((X @ A.T - hp) / hk).max(axis=1))
            if len(hh):
                viol = (X @ H.T - hh > self.tol * (1 + np.abs(hh))).any(axis=1)
                t = np.where(viol, np.inf, t)
            out = np.minimum(out, t)
        return out
