"""Brute-force sampled versions of the definitional constructions.

Nothing here feeds numbers back into the exact modules: the oracles only
classify candidate dual vectors as members, non-members or uncertain, so
that the formula-based sets can be falsified.

Difference quotients are evaluated in floating point from the closed-form
level-set tables (see :class:`mintime.timefn.LevelSetEvaluator`).  For a
polyhedral scene ``T`` is piecewise affine, so below the local feature size
the quotient in a fixed direction no longer depends on the radius; adding the
kink directions of the active affine pieces to a uniform fan then makes the
zero-tolerance verdicts reliable.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

import numpy as np

from .geometry.rational import INF, UnsupportedDimension, dot, vec

MEMBER = "member"
NON_MEMBER = "non_member"
UNCERTAIN = "uncertain"

ENV_VAR = "MINTIME_SAMPLING"


@dataclass(frozen=True)
class SamplingPlan:
    """Radii, direction fans and dual grids used by every sampled test."""

    radii: tuple = tuple(Fraction(1, 2**k) for k in range(2, 13))
    directions: int = 64
    tail: int = 4
    dual_box: Fraction = Fraction(2)
    dual_step: Fraction = Fraction(1, 4)
    tol: float = 1e-9
    base_radii: tuple = (Fraction(1, 2**6), Fraction(1, 2**7), Fraction(1, 2**8))
    base_directions: int = 64
    base_scales: tuple = (Fraction(1, 2**12), Fraction(1, 2**13), Fraction(1, 2**14))
    lambdas: tuple = (Fraction(1, 4), Fraction(1, 16), Fraction(1, 64))
    limit_eps: Fraction = Fraction(1, 2**10)
    lipschitz_threshold: float = 1e3

    def __post_init__(self):
        r = list(self.radii)
        if not r or any(x <= 0 for x in r) or any(a <= b for a, b in zip(r, r[1:])):
            raise ValueError("radii must be positive and strictly decreasing")
        if self.tol <= 0:
            raise ValueError("tolerance must be positive")
        if self.directions < 4 or self.base_directions < 1:
            raise ValueError("direction fans are too small")

    @classmethod
    def from_env(cls, environ=None) -> "SamplingPlan":
        """Default plan with JSON overrides taken from ``MINTIME_SAMPLING``."""
        environ = os.environ if environ is None else environ
        raw = environ.get(ENV_VAR)
        if not raw:
            return cls()
        return cls().with_overrides(json.loads(raw))

    def with_overrides(self, overrides: dict) -> "SamplingPlan":
        fields = {}
        for key, value in overrides.items():
            if key not in self.__dataclass_fields__:
                raise ValueError(f"unknown sampling option {key!r}")
            if key in ("radii", "base_radii", "base_scales", "lambdas"):
                value = tuple(Fraction(v) for v in value)
            elif key in ("dual_box", "dual_step", "limit_eps"):
                value = Fraction(value)
            elif key in ("tol", "lipschitz_threshold"):
                value = float(value)
            else:
                value = int(value)
            fields[key] = value
        return replace(self, **fields)

    def dual_grid(self, dim: int) -> list:
        k = int(self.dual_box / self.dual_step)
        ticks = [self.dual_step * i for i in range(-k, k + 1)]
        if dim == 1:
            return [(t,) for t in ticks]
        if dim == 2:
            return [(a, b) for a in ticks for b in ticks]
        raise UnsupportedDimension("sampled oracles are implemented in dimensions 1 and 2")


def _fan(dim: int, count: int) -> np.ndarray:
    if dim == 1:
        return np.array([[1.0], [-1.0]])
    if dim == 2:
        ang = 2 * np.pi * np.arange(count) / count
        return np.stack([np.cos(ang), np.sin(ang)], axis=1)
    raise UnsupportedDimension("sampled oracles are implemented in dimensions 1 and 2")


def _local_structure(scene, x, tol=1e-9):
    """Kink directions of ``T`` near ``x`` and a bound on nearby gradient norms."""
    dim = scene.dim
    if scene.closed_form:
        return np.zeros((0, dim)), 1.0
    ev = scene.evaluator
    xf = np.asarray(x, dtype=float)
    normals = []
    grad_bound = 0.0
    for (A, hp, hk, H, hh) in ev._np:
        if len(hh):
            slack = H @ xf - hh
            if (slack > tol).any():
                continue
            normals.extend(H[np.abs(slack) <= tol])
        grads = [np.zeros(dim)]
        if len(hp):
            vals = (A @ xf - hp) / hk
            top = max(vals.max(), 0.0)
            act = np.abs(vals - top) <= tol * (1 + abs(top))
            grads += list(A[act] / hk[act, None])
            grad_bound = max(grad_bound, float(np.linalg.norm(A / hk[:, None], axis=1).max()))
        for i in range(len(grads)):
            for j in range(i + 1, len(grads)):
                normals.append(grads[i] - grads[j])
    dirs = []
    for a in normals:
        n = np.linalg.norm(a)
        if n <= 1e-15:
            continue
        a = a / n
        dirs.append(a)
        dirs.append(-a)
        if dim == 2:
            dirs.append(np.array([-a[1], a[0]]))
            dirs.append(np.array([a[1], -a[0]]))
    if not dirs:
        return np.zeros((0, dim)), grad_bound
    return np.array(dirs), grad_bound


def _directions(scene, x, count) -> tuple[np.ndarray, float]:
    fan = _fan(scene.dim, count)
    extra, gb = _local_structure(scene, x)
    if len(extra):
        fan = np.vstack([fan, extra])
    return fan, gb


def _tvals(scene, X) -> np.ndarray:
    return scene.T_float(X)


def _t0(scene, x) -> float:
    return float(_tvals(scene, np.array([[float(c) for c in x]]))[0])


@dataclass
class Verdicts:
    """Per-candidate liminf margins and verdicts of a sampled quotient test."""

    candidates: list
    margins: np.ndarray
    verdicts: list
    eps: Fraction

    def members(self) -> list:
        return [c for c, v in zip(self.candidates, self.verdicts) if v == MEMBER]

    def non_members(self) -> list:
        return [c for c, v in zip(self.candidates, self.verdicts) if v == NON_MEMBER]

    def uncertain(self) -> list:
        return [c for c, v in zip(self.candidates, self.verdicts) if v == UNCERTAIN]


def _margins(scene, x, cands: np.ndarray, radii: Sequence[float], dirs: np.ndarray) -> np.ndarray:
    """min over samples of ``(T(x + r d) - T(x) - <x*, r d>) / r`` for each candidate.

    Polyhedral scenes have quotients that are constant in ``r`` once ``r`` is
    small, so the minimum over the tail radii is the limit.  Curved
    (closed-form) scenes carry an ``O(r)`` term; there each direction's
    quotient is extrapolated to ``r = 0`` from the two smallest radii.
    """
    xf = np.asarray([float(c) for c in x])
    t0 = _t0(scene, x)
    proj = cands @ dirs.T  # (K, D)
    rows = []
    for r in radii:
        pts = xf + r * dirs
        rows.append((_tvals(scene, pts) - t0) / r)  # (D,)
    dt = np.min(rows, axis=0)
    if scene.closed_form and len(radii) >= 2:
        (r1, q1), (r2, q2) = sorted(zip(radii, rows))[:2]
        with np.errstate(invalid="ignore"):
            lim = (r2 * q1 - r1 * q2) / (r2 - r1)
        dt = np.where(np.isfinite(lim), lim, q1)
    return (dt[None, :] - proj).min(axis=1)


def _classify(margins, eps, cands_norm, band, symmetric=False) -> list:
    """Member above ``-eps + band``, non-member below ``-eps`` (or ``-eps - band`` when symmetric)."""
    out = []
    for m, nrm in zip(margins, cands_norm):
        b = band(nrm)
        if m >= -eps + b:
            out.append(MEMBER)
        elif m < -eps - (max(b, 0.0) if symmetric else 0.0) - 1e-9:
            out.append(NON_MEMBER)
        else:
            out.append(UNCERTAIN)
    return out


def _band(scene, eps, plan, ndirs, grad_bound):
    """Width of the uncertain band above ``-eps`` for a candidate of norm ``n``."""
    if not scene.closed_form and eps == 0:
        return lambda n: -plan.tol
    ang = 1.0 - math.cos(math.pi / max(ndirs, 1))
    return lambda n: 2 * ang * (grad_bound + n + 1.0) + plan.tol


def sampled_frechet_subdiff(scene, x, eps=0, candidates=None, plan: SamplingPlan | None = None) -> Verdicts:
    """Classify candidates by the sampled liminf of the normalised difference quotient.

    ``x*`` belongs to the ``eps``-subdifferential when
    ``liminf (T(u) - T(x) - <x*, u - x>) / |u - x| >= -eps``; the liminf is
    estimated by the minimum over the ``tail`` smallest radii.
    """
    plan = plan or SamplingPlan.from_env()
    x = vec(x)
    eps = Fraction(eps)
    if scene.T(x) == INF:
        raise ValueError("the sampled subdifferential needs a finite value at the base point")
    cands = list(candidates) if candidates is not None else plan.dual_grid(scene.dim)
    cands = [vec(c) for c in cands]
    C = np.array([[float(v) for v in c] for c in cands]).reshape(len(cands), scene.dim)
    dirs, gb = _directions(scene, x, plan.directions)
    radii = [float(r) for r in plan.radii[-plan.tail :]]
    m = _margins(scene, x, C, radii, dirs)
    band = _band(scene, eps, plan, plan.directions, gb)
    # curved scenes keep an O(r^2) residual after extrapolation, so the band is two-sided there
    verdicts = _classify(m, float(eps), np.linalg.norm(C, axis=1), band, symmetric=scene.closed_form)
    return Verdicts(cands, m, verdicts, eps)


def sampled_eps_normals(scene, x, eps=0, candidates=None, plan: SamplingPlan | None = None) -> Verdicts:
    """``limsup <x*, u - x>/|u - x| <= eps`` over sampled ``u`` in the target near ``x``."""
    plan = plan or SamplingPlan.from_env()
    x = vec(x)
    eps = Fraction(eps)
    if not scene.in_target(x):
        cands = list(candidates) if candidates is not None else plan.dual_grid(scene.dim)
        return Verdicts([vec(c) for c in cands], np.full(len(cands), -np.inf), [NON_MEMBER] * len(cands), eps)
    cands = [vec(c) for c in (candidates if candidates is not None else plan.dual_grid(scene.dim))]
    C = np.array([[float(v) for v in c] for c in cands]).reshape(len(cands), scene.dim)
    dirs, gb = _directions(scene, x, plan.directions)
    xf = np.asarray([float(c) for c in x])
    feasible = np.zeros(len(dirs), dtype=bool)
    for r in plan.radii[-plan.tail :]:
        feasible |= _tvals(scene, xf + float(r) * dirs) <= 1e-12
    D = dirs[feasible]
    sup = (C @ D.T).max(axis=1) if len(D) else np.full(len(cands), -np.inf)
    band = _band(scene, eps, plan, plan.directions, 0.0)
    margins = -sup  # member iff -sup >= -eps
    verdicts = _classify(margins, float(eps), np.linalg.norm(C, axis=1), band)
    return Verdicts(cands, margins, verdicts, eps)


def _snap(v: float, den: int) -> Fraction:
    return Fraction(v).limit_denominator(den)


def _fd_gradient(scene, xf: np.ndarray, h: float) -> np.ndarray | None:
    dim = len(xf)
    E = np.eye(dim) * h
    vals = _tvals(scene, np.vstack([xf + E, xf - E]))
    if not np.isfinite(vals).all():
        return None
    return (vals[:dim] - vals[dim:]) / (2 * h)


@dataclass
class Cloud:
    """Sampled dual points (exact rationals) with diagnostics."""

    points: list
    base_points: int
    diagnostics: dict = field(default_factory=dict)

    def as_array(self) -> np.ndarray:
        if not self.points:
            return np.zeros((0, 0))
        return np.array([[float(c) for c in p] for p in self.points])

    def directions(self, digits: int = 9) -> int:
        """Number of distinct unit directions among the nonzero cloud points."""
        seen = set()
        for p in self.as_array():
            n = np.linalg.norm(p)
            if n > 0:
                seen.add(tuple(np.round(p / n, digits)))
        return len(seen)


def _base_points(scene, x, plan, one_sided=False):
    """``x`` plus nearby points with ``T`` close to ``T(x)`` (and ``T >= T(x)`` if one-sided)."""
    xf = np.asarray([float(c) for c in x])
    t0 = _t0(scene, x)
    dirs, _ = _directions(scene, x, plan.base_directions)
    out = [(xf, None)]
    for r in plan.base_radii:
        r = float(r)
        pts = xf + r * dirs
        vals = _tvals(scene, pts)
        ok = np.isfinite(vals) & (np.abs(vals - t0) <= math.sqrt(r))
        if one_sided:
            ok &= vals >= t0 - 1e-12
        out.extend((p, r) for p in pts[ok])
    return out


def _quotient_table(scene, xf, r, plan):
    """Directions and the per-direction minimum of sampled difference quotients at a base point.

    ``r`` is the base radius (None for the query point itself, which uses the
    absolute tail radii); other base points are probed at radii proportional
    to their distance from the query point.
    """
    dirs, _ = _directions(scene, xf, plan.directions)
    if r is None:
        radii = np.array([float(s) for s in plan.radii[-plan.tail :]])
    else:
        radii = r * np.array([float(s) for s in plan.base_scales])
    t0 = float(_tvals(scene, xf[None, :])[0])
    pts = (xf[None, None, :] + radii[:, None, None] * dirs[None, :, :]).reshape(-1, len(xf))
    dt = (_tvals(scene, pts) - t0).reshape(len(radii), len(dirs)) / radii[:, None]
    return dirs, dt.min(axis=0)


def _members(table, C, eps) -> np.ndarray:
    dirs, q = table
    return (q[None, :] - C @ dirs.T).min(axis=1) >= -eps


def _fd_candidates(scene, xf) -> list:
    g = _fd_gradient(scene, xf, 1e-9)
    if g is None:
        return []
    return [tuple(_snap(v, den) for v in g) for den in (64, 10**6)]


def _grid(plan, dim):
    grid = plan.dual_grid(dim)
    return grid, np.array([[float(v) for v in c] for c in grid])


def sampled_clouds(scene, x, plan: SamplingPlan | None = None, one_sided: bool = False) -> tuple[Cloud, Cloud]:
    """Sampled limiting and singular clouds from one set of base-point quotient tables.

    Limiting: the union over base points near ``x`` (with ``T`` close to
    ``T(x)``, and ``T >= T(x)`` when ``one_sided``) of the grid and
    finite-difference candidates that pass the ``limit_eps`` quotient test.

    Singular: grid points ``y`` such that ``y / lam`` passes at some base
    point for every ``lam`` in the schedule, which approximates the outer
    limit ``lam -> 0``; the origin is always included.
    """
    plan = plan or SamplingPlan.from_env()
    x = vec(x)
    grid, G = _grid(plan, scene.dim)
    eps = float(plan.limit_eps)
    bases = _base_points(scene, x, plan, one_sided)
    found = set()
    hits = {lam: np.zeros(len(grid), dtype=bool) for lam in plan.lambdas}
    for xf, r in bases:
        table = _quotient_table(scene, xf, r, plan)
        found.update(c for c, flag in zip(grid, _members(table, G, eps)) if flag)
        extra = _fd_candidates(scene, xf)
        if extra:
            E = np.array([[float(v) for v in c] for c in extra])
            found.update(c for c, flag in zip(extra, _members(table, E, eps)) if flag)
        for lam in plan.lambdas:
            hits[lam] |= _members(table, G / float(lam), eps)
    keep = np.ones(len(grid), dtype=bool)
    for h in hits.values():
        keep &= h
    zero = tuple(Fraction(0) for _ in range(scene.dim))
    singular = {g for g, k in zip(grid, keep) if k} | {zero}
    return (
        Cloud(sorted(found), len(bases), {"eps": plan.limit_eps, "one_sided": one_sided}),
        Cloud(sorted(singular), len(bases), {"lambdas": plan.lambdas, "one_sided": one_sided}),
    )


def sampled_limiting_subdiff(scene, x, plan: SamplingPlan | None = None, one_sided: bool = False) -> Cloud:
    """Sampled limiting subgradients near ``x`` (see :func:`sampled_clouds`)."""
    return sampled_clouds(scene, x, plan, one_sided)[0]


def sampled_singular_subdiff(scene, x, plan: SamplingPlan | None = None, one_sided: bool = False) -> Cloud:
    """Sampled singular subgradients near ``x`` (see :func:`sampled_clouds`)."""
    return sampled_clouds(scene, x, plan, one_sided)[1]


def one_sided_subdiff_sampled(scene, x, plan: SamplingPlan | None = None):
    """Sampled one-sided basic and singular clouds."""
    basic, singular = sampled_clouds(scene, x, plan, one_sided=True)
    return basic, singular if basic.points else Cloud([], basic.base_points)


@dataclass
class CalmnessEstimate:
    """Sampled calmness constant and local-Lipschitz verdict."""

    kappa: Fraction
    certified: bool
    window: Fraction
    lipschitz: bool
    per_radius: list


def calmness_probe(scene, x, window=None, plan: SamplingPlan | None = None) -> CalmnessEstimate:
    """Difference quotients ``|T(u) - T(v)| / |u - v|`` in a shrinking window.

    Verdict "non-Lipschitz" when a quotient is infinite or exceeds the
    threshold at two consecutive radii; ``kappa`` bounds the sampled
    one-point quotients from ``x``.
    """
    plan = plan or SamplingPlan.from_env()
    x = vec(x)
    window = Fraction(window) if window is not None else plan.radii[0]
    radii = [r for r in plan.radii if r <= window]
    dirs, _ = _directions(scene, x, plan.directions)
    nfan = len(_fan(scene.dim, plan.directions))
    xf = np.asarray([float(c) for c in x])
    t0 = _t0(scene, x)
    kappa = 0.0
    per_radius = []
    prev_pts = prev_vals = None
    for r in radii:
        rf = float(r)
        pts = xf + rf * dirs
        vals = _tvals(scene, pts)
        with np.errstate(invalid="ignore"):
            one = np.abs(vals - t0) / rf
        one = np.where(np.isfinite(vals) | np.isinf(t0), one, np.inf)
        if not np.isfinite(t0):
            one = np.full(len(vals), np.inf)
        worst = float(one.max())
        # neighbours in the uniform fan at the same radius and the same direction one radius up
        fp, fv = pts[:nfan], vals[:nfan]
        pair = _pair_quotients(fp, fv)
        if prev_pts is not None:
            pair = max(pair, _pair_quotients(np.vstack([fp, prev_pts]), np.concatenate([fv, prev_vals]), stride=nfan))
        per_radius.append((r, worst, pair))
        if np.isfinite(worst):
            kappa = max(kappa, worst)
        prev_pts, prev_vals = fp, fv
    lipschitz = True
    for (_, w1, p1), (_, w2, p2) in zip(per_radius, per_radius[1:]):
        q1, q2 = max(w1, p1), max(w2, p2)
        if q1 > plan.lipschitz_threshold and q2 > plan.lipschitz_threshold:
            lipschitz = False
    if any(not np.isfinite(max(w, p)) for _, w, p in per_radius):
        lipschitz = False
    return CalmnessEstimate(Fraction(kappa), lipschitz, window, lipschitz, per_radius)


def _pair_quotients(pts, vals, stride=None) -> float:
    n = len(pts)
    if stride is None:
        a, b = np.arange(n), (np.arange(n) + 1) % n
    else:
        a, b = np.arange(stride), np.arange(stride) + stride
    fa, fb = vals[a], vals[b]
    both_inf = np.isinf(fa) & np.isinf(fb)
    d = np.linalg.norm(pts[a] - pts[b], axis=1)
    with np.errstate(invalid="ignore", divide="ignore"):
        q = np.abs(fa - fb) / d
    q = np.where(both_inf, 0.0, q)
    q = np.where(np.isnan(q), np.inf, q)
    return float(q.max()) if len(q) else 0.0


def _test_points(scene, x, rel_scales=(Fraction(1, 1024), Fraction(1, 64), Fraction(1, 16), Fraction(1, 4), 1, 4)):
    """Exact sample points for the global convex-subgradient inequality."""
    x = vec(x)
    dirs = set()
    for k in range(32):
        a = 2 * math.pi * k / 32
        dirs.add((Fraction(math.cos(a)).limit_denominator(64), Fraction(math.sin(a)).limit_denominator(64)))
    for P in scene.target.pieces:
        for a, _ in P.rows:
            dirs.add(tuple(a))
            dirs.add(tuple(-c for c in a))
            dirs.add((-a[1], a[0]))
            dirs.add((a[1], -a[0]))
    for g in scene.dynamics.g_vertices:
        dirs.add(tuple(g))
        dirs.add(tuple(-c for c in g))
    extra, _ = _local_structure(scene, x)
    for d in extra:
        dirs.add(tuple(Fraction(float(c)).limit_denominator(4096) for c in d))
    dirs.discard((0, 0))
    pts = {tuple(xi + s * di for xi, di in zip(x, d)) for d in dirs for s in rel_scales}
    for P in scene.target.pieces:
        v, _, _ = P.vrep()
        pts.update(v)
    ticks = [Fraction(i, 2) for i in range(-8, 9)]
    pts.update((a, b) for a in ticks for b in ticks)
    return sorted(pts)


def definitional_convex_subgradient_check(scene, x, xstar) -> bool:
    """``<x*, u - x> <= T(u) - T(x)`` at structured sample points, in exact arithmetic."""
    if not scene.is_convex:
        raise ValueError("the global subgradient inequality characterises convex targets only")
    x, xstar = vec(x), vec(xstar)
    t0 = scene.T_closed(x)
    if t0 == INF:
        raise ValueError("base point outside the domain")
    for u in _test_points(scene, x):
        tu = scene.T_closed(u)
        if tu == INF:
            continue
        if dot(xstar, tuple(a - b for a, b in zip(u, x))) > tu - t0:
            return False
    return True


def _samples(scene, x):
    """Offsets ``u - x`` and value gaps ``T(u) - T(x)`` at the finite test points."""
    x = vec(x)
    pts = _test_points(scene, x)
    vals = scene.T_float(np.array([[float(c) for c in u] for u in pts]))
    t0 = float(scene.T_float(np.array([[float(c) for c in x]]))[0])
    if not np.isfinite(t0):
        raise ValueError("base point outside the domain")
    ok = np.isfinite(vals)
    U = np.array([[float(a - b) for a, b in zip(u, x)] for u in pts])[ok]
    return U, vals[ok] - t0


def convex_verdicts(scene, x, candidates) -> tuple[list, list]:
    """Batch subgradient and domain-normal verdicts for many candidates.

    Values come from the vectorised closed-form evaluator and the
    inequalities are compared with a 1e-9 margin, far below the gaps produced
    by the small-denominator data of the test scenes; use
    :func:`definitional_convex_subgradient_check` for an exact verdict.

    The singular verdict tests ``<y, u - x> <= 0`` over the finite samples
    and the rays ``-g``: the domain is the target plus the cone spanned by
    ``-G``, so a linear functional bounded on it peaks at a target vertex or
    grows along some ``-g``, and both kinds of points are sampled.
    """
    U, g = _samples(scene, x)
    C = np.array([[float(v) for v in c] for c in candidates])
    lhs = C @ U.T
    basic = (lhs <= g[None, :] + 1e-9).all(axis=1)
    rays = np.array([[-float(c) for c in v] for v in scene.dynamics.g_vertices])
    singular = (lhs <= 1e-9).all(axis=1) & (C @ rays.T <= 1e-9).all(axis=1)
    tag = lambda ok: [MEMBER if k else NON_MEMBER for k in ok]  # noqa: E731
    return tag(basic), tag(singular)


def convex_subgradient_verdicts(scene, x, candidates) -> list:
    """Batch form of :func:`definitional_convex_subgradient_check`."""
    return convex_verdicts(scene, x, candidates)[0]


def convex_singular_verdicts(scene, x, candidates) -> list:
    """``y`` in the normal cone to the domain of ``T`` at ``x`` (sampled)."""
    return convex_verdicts(scene, x, candidates)[1]
