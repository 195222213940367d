"""Verification suites: exact identities, ε-bounds and formula-vs-oracle set checks.

Every suite maps a scene to a list of :class:`Check` records.  A check whose
precondition fails on a scene is simply not emitted, so an inapplicable
suite contributes zero checks rather than a pass.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import oracle
from .geometry.polyhedra import HPolyhedron, PolyhedralCone, PolyhedralUnion, as_union
from .geometry.qp import project
from .geometry.rational import INF, lower, norm_sq, sqrt_interval, sub, upper, vec
from .scenes import FIXTURES, fixture, LIPSCHITZ_POINTS, random_convex_scene, random_scene, random_two_box_scene
from .subdiff import (
    basic_subdiff_inset,
    ball_complement_enlargement_normal_cone,
    convex_chain,
    eps_gauge_subdiff_contains,
    eps_normal_contains,
    singular_subdiff_inset,
    subdiff,
    subdiff_outset_via_enlargement,
    subdiff_outset_via_projection,
    support_level_set,
    two_sided_support_bound,
)
from .timefn import (
    convexity_concavity_probe,
    enlargement,
    enlargement_identity_check,
    gauge_representation_check,
    minimal_time,
    projection_linearity_check,
    projection_set,
    shifted_argument_check,
)

HALF = Fraction(1, 2)
EPS_LEVELS = (Fraction(0), Fraction(1, 10), Fraction(1, 2))
ETA = Fraction(1, 10)
LAMBDAS = (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))


@dataclass
class Check:
    suite: str
    tag: str
    scene: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"suite": self.suite, "tag": self.tag, "scene": self.scene, "passed": self.passed, "detail": self.detail}


@dataclass
class Context:
    plan: oracle.SamplingPlan = field(default_factory=oracle.SamplingPlan.from_env)
    eta: Fraction = ETA
    eps_levels: tuple = EPS_LEVELS


def _check(suite, tag, scene, passed, **detail) -> Check:
    return Check(suite, tag, scene.name, bool(passed), detail)


# ---------------------------------------------------------------------------
# point selection


def probe_points(scene) -> list:
    """Scene points, or boundary and nearby points derived from the target pieces."""
    if scene.points:
        return [vec(p) for p in scene.points]
    pts = []
    for P in scene.target.pieces:
        verts = sorted(P.vrep()[0])
        if verts:
            pts.append(verts[0])
            if len(verts) > 1:
                pts.append(tuple((a + b) / 2 for a, b in zip(verts[0], verts[1])))
    if scene.dim == 2 and pts:
        lo = [min(p[i] for p in pts) for i in range(2)]
        pts.append((lo[0] - HALF, lo[1] - Fraction(1, 4)))
    return sorted(set(pts))


def _split(scene, points):
    inset, outset = [], []
    for x in points:
        if scene.in_target(x):
            inset.append(x)
        else:
            t = scene.T(x)
            if t != INF:
                outset.append(x)
    return inset, outset


def _dist_sq_union(U: PolyhedralUnion, p) -> Fraction | None:
    best = None
    for P in U.pieces:
        res = project(vec(p), P.rows, U.dim)
        if res is not None and (best is None or res[1] < best):
            best = res[1]
    return best


def _near(U: PolyhedralUnion, p, tol) -> bool:
    d = _dist_sq_union(U, p)
    return d is not None and d <= Fraction(tol) ** 2


# ---------------------------------------------------------------------------
# identities for the time function


def suite_enlargement_identity(scene, ctx) -> list:
    if scene.closed_form:
        return []
    F, omega = scene.dynamics, scene.target
    out = []
    for r in (HALF, Fraction(1)):
        omega_r = enlargement(F, omega, r)
        for x in probe_points(scene):
            res = enlargement_identity_check(F, omega, r, x, omega_r)
            if res is not None:
                out.append(_check("enlargement-identity", "time to target = r + time to enlargement", scene, res, x=x, r=r))
    return out


def suite_shifted_argument(scene, ctx) -> list:
    if scene.closed_form:
        return []
    F, omega = scene.dynamics, scene.target
    out = []
    for x in probe_points(scene):
        r = scene.T(x)
        if r == INF:
            continue
        r = max(r, Fraction(1, 4))
        for t in (Fraction(1, 4), Fraction(1)):
            for q in F.vertices:
                res = shifted_argument_check(F, omega, r, x, t, q)
                if res is not None:
                    out.append(_check("shifted-argument", "time at backward shift bounded by r + t", scene, res, x=x, r=r, t=t, q=q))
    return out


def suite_gauge_representation(scene, ctx) -> list:
    if scene.closed_form:
        return []
    return [
        _check("gauge-representation", "time equals gauge distance program", scene, gauge_representation_check(scene.dynamics, scene.target, x), x=x)
        for x in probe_points(scene)
    ]


def suite_projection_linearity(scene, ctx) -> list:
    if scene.closed_form:
        return []
    F, omega = scene.dynamics, scene.target
    out = []
    for x in probe_points(scene):
        t = scene.T(x)
        if t == INF or t == 0:
            continue
        proj = projection_set(F, omega, x)
        for w in sorted({proj.witness.w, *proj.points()}):
            for lam in LAMBDAS:
                res = projection_linearity_check(F, omega, x, w, lam)
                out.append(_check("projection-linearity", "time is linear along projection segments", scene, res, x=x, w=w, lam=lam))
    return out


# pairs whose midpoint exposes nonconvexity of the time function
_CONVEXITY_WITNESS = {"segment-box-complement": ((-HALF, Fraction(0)), (HALF, Fraction(0)))}


def _pairs(points):
    return [(a, b) for i, a in enumerate(points) for b in points[i + 1 :]]


def suite_convexity(scene, ctx) -> list:
    if scene.closed_form:
        return []
    F, omega = scene.dynamics, scene.target
    pts = probe_points(scene)
    if scene.dim == 2:
        rng = random.Random(f"convexity:{scene.name}")
        pts = pts + [(Fraction(rng.randint(-12, 12), 4), Fraction(rng.randint(-12, 12), 4)) for _ in range(4)]
    pairs = _pairs(pts)
    if scene.name in _CONVEXITY_WITNESS:
        pairs.append(_CONVEXITY_WITNESS[scene.name])
    rep = convexity_concavity_probe(F, omega, pairs, LAMBDAS)
    if omega.is_convex:
        return [_check("convexity", "no chord violations on a convex target", scene, rep.ok, checked=rep.checked, violations=rep.violations[:3])]
    if scene.name in _CONVEXITY_WITNESS:
        return [_check("convexity", "chord violation witnessed on a nonconvex target", scene, not rep.ok, checked=rep.checked, witness=rep.violations[:1])]
    return []


def _complement_is_convex(scene):
    # target written as a union of half-planes: its complement is the intersection of the opposite open half-planes
    return all(len(P.rows) == 1 for P in scene.target.pieces) and len(scene.target.pieces) > 1


def suite_concavity(scene, ctx) -> list:
    if scene.closed_form or not _complement_is_convex(scene) or scene.dim != 2:
        return []
    F, omega = scene.dynamics, scene.target
    comp = HPolyhedron(2, [(tuple(-c for c in a), -b) for P in omega.pieces for a, b in P.rows])
    if comp.is_empty() or not comp.is_bounded():
        return []
    verts = comp.vrep()[0]
    lo = [min(v[i] for v in verts) for i in range(2)]
    hi = [max(v[i] for v in verts) for i in range(2)]
    pts = []
    for i in range(1, 8):
        for j in range(1, 8):
            p = (lo[0] + (hi[0] - lo[0]) * i / 8, lo[1] + (hi[1] - lo[1]) * j / 8)
            if comp.interior_contains(p):
                pts.append(p)
    pairs = _pairs(pts[::3])
    rep = convexity_concavity_probe(F, omega, pairs, LAMBDAS, mode="concave")
    return [_check("concavity", "reverse chord inequality on the convex complement", scene, rep.ok and rep.checked > 0, checked=rep.checked, violations=rep.violations[:3])]


def suite_lsc(scene, ctx) -> list:
    """Sampled lower semicontinuity: nearby values never drop far below ``T(x)``."""
    out = []
    rho = Fraction(1, 2**20)
    dirs = [(1, 0), (0, 1), (-1, 0), (0, -1), (1, 1), (-1, 1), (1, -1), (-1, -1)] if scene.dim == 2 else [(1,), (-1,)]
    for x in probe_points(scene):
        tx = scene.T(x)
        near = [scene.T(tuple(a + rho * d for a, d in zip(x, dv))) for dv in dirs]
        if tx == INF:
            ok = all(v == INF for v in near)
        else:
            ok = all(v == INF or upper(v) >= lower(tx) - Fraction(1, 2**10) for v in near)
        out.append(_check("lsc", "nearby values do not fall below the value", scene, ok, x=x))
    return out


# ---------------------------------------------------------------------------
# ε-subgradient bounds


def _norm_bounds(F):
    b = F.bound()
    return (lower(b), upper(b))


def suite_eps_inset(scene, ctx) -> list:
    if scene.closed_form:
        return []
    F, omega = scene.dynamics, scene.target
    out = []
    inset, _ = _split(scene, probe_points(scene))
    _, Fhi = _norm_bounds(F)
    for x in inset:
        for eps in ctx.eps_levels:
            v = oracle.sampled_frechet_subdiff(scene, x, eps, plan=ctx.plan)
            C = support_level_set(F, "C", eps)
            for xs in v.members():
                ok = eps_normal_contains(omega, x, xs, eps) and C.contains(xs) is not False
                out.append(_check("eps-inset", "in-set eps-subgradients are eps-normals in the support level set", scene, ok, x=x, eps=eps, xstar=xs))
            # converse: eps-normals inside the level set are (mu*eps)-subgradients
            if eps > 0:
                cands = [c for c in ctx.plan.dual_grid(F.dim) if eps_normal_contains(omega, x, c, eps) and C.contains(c) is True]
                for xs in cands[:: max(1, len(cands) // 12)]:
                    mu = 1 + 2 * Fhi * _norm_upper(xs)
                    verdict = oracle.sampled_frechet_subdiff(scene, x, mu * eps, [xs], ctx.plan).verdicts[0]
                    out.append(_check("eps-inset", "eps-normals in the level set are scaled eps-subgradients", scene, verdict != oracle.NON_MEMBER, x=x, eps=eps, xstar=xs, verdict=verdict))
    return out


def _norm_upper(v) -> Fraction:
    return upper(sqrt_interval(norm_sq(v)))


def witness_search(scene, x, xstar, eps, eta):
    """A target point ``w`` with ``x* in N_{eps+eta}(w)`` and ``|x - w| <= |F| T(x) + eta``, or None."""
    from .geometry.enumeration import arrangement_cells
    from .geometry.polyhedra import _normalize

    F, omega = scene.dynamics, scene.target
    t = scene.T(x)
    Flo, _ = _norm_bounds(F)
    radius = Flo * t + eta
    hyper = {}
    for P in omega.pieces:
        for a, b in P.rows:
            if any(a):
                hyper.setdefault(_normalize(a, b), None)
    cands = list(projection_set(F, omega, x).points()) if not F.is_ball else []
    for P in omega.pieces:
        box = HPolyhedron.box([c - radius for c in x], [c + radius for c in x])
        region = P.intersect(box)
        if region.is_empty():
            continue
        for signs, _ in arrangement_cells(list(hyper), region.rows, scene.dim):
            rows = list(region.rows)
            for (a, b), s in zip(hyper, signs):
                if s == 0:
                    rows += [(a, b), (tuple(-c for c in a), -b)]
                elif s < 0:
                    rows.append((a, b))
                else:
                    rows.append((tuple(-c for c in a), -b))
            res = project(x, rows, scene.dim)
            if res is not None:
                cands.append(res[0])
    for w in sorted(set(cands)):
        if norm_sq(sub(x, w)) <= radius * radius and eps_normal_contains(omega, w, xstar, eps + eta):
            return w
    return None


def suite_eps_outset(scene, ctx) -> list:
    if scene.closed_form:
        return _eps_outset_closed_form(scene, ctx)
    F, omega = scene.dynamics, scene.target
    out = []
    _, outset = _split(scene, probe_points(scene))
    _, Fhi = _norm_bounds(F)
    for x in outset:
        r = scene.T(x)
        _, _, reps = _strata(F, omega, x)
        omega_r = enlargement(F, omega, r)
        calm = oracle.calmness_probe(scene, x, plan=ctx.plan)
        for eps in ctx.eps_levels:
            S = support_level_set(F, "S", eps)
            members = oracle.sampled_frechet_subdiff(scene, x, eps, plan=ctx.plan).members()
            for xs in members:
                b = two_sided_support_bound(F, xs, eps)
                out.append(_check("eps-outset", "two-sided support bound", scene, b is not False, x=x, eps=eps, xstar=xs))
                w = witness_search(scene, x, xs, eps, ctx.eta)
                out.append(_check("eps-outset", "perturbed normal witness within reach", scene, w is not None, x=x, eps=eps, xstar=xs, w=w))
                ok = all(
                    eps_gauge_subdiff_contains(F, sub(wr, x), tuple(-c for c in xs), eps) and eps_normal_contains(omega, wr, xs, eps)
                    for wr in reps
                )
                out.append(_check("eps-outset", "projection estimate of eps-subgradients", scene, ok, x=x, eps=eps, xstar=xs))
                ok = eps_normal_contains(omega_r, x, xs, eps) and S.contains(xs) is not False
                out.append(_check("eps-outset", "enlargement estimate of eps-subgradients", scene, ok, x=x, eps=eps, xstar=xs))
            if calm.lipschitz:
                cands = [c for c in ctx.plan.dual_grid(F.dim) if eps_normal_contains(omega_r, x, c, eps) and S.contains(c) is True]
                for xs in cands[:: max(1, len(cands) // 12)]:
                    ell = 1 + 2 * _norm_upper(xs) * Fhi + 2 * calm.kappa * Fhi
                    verdict = oracle.sampled_frechet_subdiff(scene, x, ell * eps, [xs], ctx.plan).verdicts[0]
                    out.append(_check("eps-outset", "calm converse of the enlargement estimate", scene, verdict != oracle.NON_MEMBER, x=x, eps=eps, xstar=xs, verdict=verdict))
    return out


def _strata(F, omega, x):
    from .subdiff import projection_strata

    return projection_strata(F, omega, x)


def _eps_outset_closed_form(scene, ctx) -> list:
    """Ball scene: sampled eps-subgradients at the origin must satisfy the support bound."""
    out = []
    F = scene.dynamics
    for x in scene.points:
        if scene.in_target(x):
            continue
        for eps in ctx.eps_levels:
            for xs in oracle.sampled_frechet_subdiff(scene, x, eps, plan=ctx.plan).members():
                b = two_sided_support_bound(F, xs, eps)
                out.append(_check("eps-outset", "two-sided support bound", scene, b is not False, x=x, eps=eps, xstar=xs))
    return out


# ---------------------------------------------------------------------------
# set-valued formulas against the sampled oracle


def _estimates(scene, x):
    F, omega = scene.dynamics, scene.target
    if omega.contains(x):
        return basic_subdiff_inset(F, omega, x), singular_subdiff_inset(F, omega, x)
    if omega.is_convex:
        res = subdiff_outset_via_enlargement(F, omega, x)
        return res.convex_exact_basic, res.convex_exact_singular
    return subdiff_outset_via_projection(F, omega, x)


def _concordance(scene, ctx, suite, inset_only=None) -> list:
    if scene.closed_form:
        return []
    out = []
    inset, outset = _split(scene, probe_points(scene))
    pts = inset if inset_only else outset if inset_only is False else inset + outset
    tol = ctx.plan.limit_eps
    for x in pts:
        basic, singular = _estimates(scene, x)
        lim, sing = oracle.sampled_clouds(scene, x, ctx.plan)
        bad = [p for p in lim.points if not _near(basic.set, p, tol)]
        out.append(_check(suite, "sampled limiting cloud inside basic estimate", scene, not bad, x=x, cloud=len(lim.points), outside=bad[:3]))
        bad = [p for p in sing.points if not _near(singular.set, p, tol)]
        out.append(_check(suite, "sampled singular cloud inside singular estimate", scene, not bad, x=x, cloud=len(sing.points), outside=bad[:3]))
        if basic.exact and scene.name in FIXTURES:
            cloud = set(lim.points)
            missing = [g for g in ctx.plan.dual_grid(scene.dim) if basic.contains(g) and g not in cloud]
            out.append(_check(suite, "exact basic set reproduced by the sampled cloud", scene, not missing, x=x, missing=missing[:3]))
    return out


def suite_inset_sets(scene, ctx) -> list:
    return _concordance(scene, ctx, "inset-sets", inset_only=True)


def suite_outset_sets(scene, ctx) -> list:
    return _concordance(scene, ctx, "outset-sets", inset_only=False)


def suite_oracle_concordance(scene, ctx) -> list:
    return _concordance(scene, ctx, "oracle-concordance")


def suite_convex_sets(scene, ctx) -> list:
    """Convex targets: formula sets agree with the global subgradient inequality."""
    if scene.closed_form or not scene.is_convex:
        return []
    F, omega = scene.dynamics, scene.target
    out = []
    grid = ctx.plan.dual_grid(scene.dim)
    for x in probe_points(scene):
        if scene.T(x) == INF:
            continue
        basic, singular = _estimates(scene, x)
        vb, vs = oracle.convex_verdicts(scene, x, grid)
        wrong = [g for g, v in zip(grid, vb) if (v == oracle.MEMBER) != basic.contains(g)]
        out.append(_check("convex-sets", "basic set matches the subgradient inequality", scene, not wrong, x=x, mismatches=wrong[:3]))
        wrong = [g for g, v in zip(grid, vs) if (v == oracle.MEMBER) != singular.contains(g)]
        out.append(_check("convex-sets", "singular set matches the domain normal cone", scene, not wrong, x=x, mismatches=wrong[:3]))
        if omega.contains(x):
            continue
        chain = convex_chain(F, omega, x, basic.set)
        if F.contains_origin:
            ok = chain["left"].equals(basic.set) and chain["left"].equals(chain["right"])
            proj_basic = subdiff_outset_via_projection(F, omega, x)[0]
            ok = ok and proj_basic.set.equals(basic.set)
            out.append(_check("convex-sets", "projection chain holds with equality", scene, ok, x=x))
        else:
            ok = chain["left"].equals(basic.set) and chain["left"].is_subset(chain["right"])
            out.append(_check("convex-sets", "projection chain inclusion", scene, ok, x=x))
    return out


def suite_lipschitz(scene, ctx) -> list:
    out = []
    for name, x, expected in LIPSCHITZ_POINTS:
        if name != scene.name:
            continue
        x = vec(x)
        sing = subdiff(scene.dynamics, scene.target, x, "singular")
        trivial = sing.set.equals(as_union(PolyhedralCone.zero(scene.dim)))
        probe = oracle.calmness_probe(scene, x, plan=ctx.plan)
        out.append(
            _check("lipschitz", "singular set is trivial iff sampled Lipschitz", scene, trivial == probe.lipschitz == expected,
                   x=x, singular_trivial=trivial, sampled_lipschitz=probe.lipschitz, kappa=probe.kappa)
        )
    return out


# ---------------------------------------------------------------------------
# golden values for the named fixtures


def _seg(a, b):
    return as_union(HPolyhedron.from_vrep([vec(a), vec(b)], dim=2))


def _ray(d):
    return as_union(PolyhedralCone.generated_by(2, [vec(d)]))


def _pt(p):
    return as_union(HPolyhedron.point(vec(p)))


def _golden_sets(scene, table):
    out = []
    for x, which, expected in table:
        res = subdiff(scene.dynamics, scene.target, x, which)
        out.append(_check("goldens", f"{which} subdifferential", scene, res.set.equals(expected), x=vec(x), got=res.set))
    return out


def suite_goldens(scene, ctx) -> list:
    name = scene.name
    out = []
    if name == "segment-box-complement":
        out.append(_check("goldens", "time value", scene, scene.T((HALF, HALF)) == HALF, x=(HALF, HALF)))
        out += _golden_sets(scene, [
            ((1, 0), "basic", _seg((-1, 0), (0, 0))),
            ((1, 0), "singular", _pt((0, 0))),
            ((0, 1), "basic", _ray((0, -1))),
            ((0, 1), "singular", _ray((0, -1))),
            ((HALF, HALF), "basic", _pt((-1, 0))),
            ((HALF, HALF), "singular", _pt((0, 0))),
        ])
        proj = projection_set(scene.dynamics, scene.target, (HALF, HALF))
        out.append(_check("goldens", "projection set", scene, proj.is_singleton() and proj.points() == [(1, HALF)], points=proj.points()))
    elif name == "segment-box":
        out.append(_check("goldens", "time value", scene, scene.T((2, HALF)) == 1, x=(2, HALF)))
        out.append(_check("goldens", "projection witness", scene, minimal_time(scene.dynamics, scene.target, (2, HALF))[1].w == (1, HALF)))
        out += _golden_sets(scene, [
            ((1, 0), "basic", _seg((0, 0), (1, 0))),
            ((1, 0), "singular", _pt((0, 0))),
            ((0, 1), "basic", _ray((0, 1))),
            ((0, 1), "singular", _ray((0, 1))),
            ((2, HALF), "basic", _pt((1, 0))),
            ((2, HALF), "singular", _pt((0, 0))),
        ])
    elif name == "ball-complement":
        N = ball_complement_enlargement_normal_cone((0, 0))
        out.append(_check("goldens", "enlargement normal cone at the origin is trivial", scene, N.equals(_pt((0, 0)))))
        cloud = oracle.sampled_limiting_subdiff(scene, (0, 0), ctx.plan)
        A = cloud.as_array()
        dev = float(np.abs(np.linalg.norm(A, axis=1) - 1).max()) if len(A) else float("inf")
        out.append(_check("goldens", "limiting cloud on the unit circle", scene, dev <= 1e-3 and cloud.directions() >= 64, deviation=dev, directions=cloud.directions()))
        one_sided, _ = oracle.one_sided_subdiff_sampled(scene, (0, 0), ctx.plan)
        out.append(_check("goldens", "one-sided cloud is empty", scene, not one_sided.points, size=len(one_sided.points)))
    elif name == "unit-interval-halfline":
        out.append(_check("goldens", "time value", scene, scene.T((1,)) == INF, x=(1,)))
    elif name == "box-box-complement":
        out.append(_check("goldens", "time values", scene, scene.T((0, 0)) == 1 and scene.T((HALF, 0)) == HALF))
    return out


SUITES = {
    "enlargement-identity": suite_enlargement_identity,
    "shifted-argument": suite_shifted_argument,
    "gauge-representation": suite_gauge_representation,
    "projection-linearity": suite_projection_linearity,
    "convexity": suite_convexity,
    "concavity": suite_concavity,
    "lsc": suite_lsc,
    "eps-inset": suite_eps_inset,
    "eps-outset": suite_eps_outset,
    "inset-sets": suite_inset_sets,
    "outset-sets": suite_outset_sets,
    "convex-sets": suite_convex_sets,
    "oracle-concordance": suite_oracle_concordance,
    "lipschitz": suite_lipschitz,
    "goldens": suite_goldens,
}

# "all" skips the two halves of the concordance suite it already contains
ALL = [s for s in SUITES if s not in ("inset-sets", "outset-sets")]


def parse_selector(selector: str | None) -> list:
    """Comma-separated suite names, ``all``, or empty for no suites."""
    if not selector:
        return []
    names = []
    for part in selector.split(","):
        part = part.strip()
        if not part:
            continue
        if part == "all":
            names.extend(ALL)
        elif part in SUITES:
            names.append(part)
        else:
            raise ValueError(f"unknown suite {part!r}; choose from all, {', '.join(SUITES)}")
    return list(dict.fromkeys(names))


@dataclass
class VerifyReport:
    checks: list

    @property
    def failed(self) -> list:
        return [c for c in self.checks if not c.passed]

    @property
    def passed(self) -> bool:
        return not self.failed

    def summary(self) -> dict:
        by_suite = {}
        for c in self.checks:
            s = by_suite.setdefault(c.suite, {"checks": 0, "failed": 0})
            s["checks"] += 1
            s["failed"] += not c.passed
        return {"checks": len(self.checks), "failed": len(self.failed), "passed": self.passed, "suites": by_suite}


def run(scenes, selector: str | None, ctx: Context | None = None) -> VerifyReport:
    ctx = ctx or Context()
    names = parse_selector(selector)
    checks = []
    for scene in scenes:
        for name in names:
            checks.extend(SUITES[name](scene, ctx))
    return VerifyReport(checks)


def fixture_scenes() -> list:
    return [fixture(n) for n in FIXTURES]


def random_scenes(kind: str, count: int, seed: int = 0) -> list:
    rng = random.Random(seed)
    make = {"polyhedral": random_scene, "convex": random_convex_scene, "two-box": random_two_box_scene}[kind]
    return [make(rng, i) for i in range(count)]


__all__ = [
    "ALL",
    "Check",
    "Context",
    "SUITES",
    "VerifyReport",
    "fixture_scenes",
    "parse_selector",
    "probe_points",
    "random_scenes",
    "run",
    "witness_search",
]
