"""Normal cones and subdifferential sets of minimal time functions.

All sets are exact finite unions of rational polyhedra in the dual space.
Every result records whether it is an exact equality or only an estimate,
together with the hypotheses (convex target, ``0 in F``, ``0 in int F``,
certified local Lipschitz behaviour) that decided the flag.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .dynamics import Dynamics
from .geometry.enumeration import arrangement_cells
from .geometry.polyhedra import HPolyhedron, PolyhedralCone, PolyhedralUnion, _normalize, as_union
from .geometry.qp import project
from .geometry.rational import (
    INF,
    Interval,
    dot,
    is_zero,
    lower,
    neg,
    norm_sq,
    scale,
    sub,
    upper,
    vec,
)
from .timefn import EmptyProjection, Target, enlargement, minimal_time, projection_set

EXACT = "exact"
UPPER = "upper_estimate"
LOWER = "lower_estimate"


class RegimeError(ValueError):
    """Operation called at a point of the wrong kind (in-set vs out-of-set)."""


@dataclass(frozen=True)
class SubdiffResult:
    """A dual-space set with its exactness flag and the rule that produced it."""

    set: PolyhedralUnion
    exactness: str
    source: str
    hypotheses: dict = field(default_factory=dict)
    notes: tuple = ()

    @property
    def exact(self) -> bool:
        return self.exactness == EXACT

    def contains(self, xstar) -> bool:
        return self.set.contains(vec(xstar))

    def equals(self, other) -> bool:
        other = other.set if isinstance(other, SubdiffResult) else as_union(other)
        return self.set.equals(other)


def _hypotheses(F: Dynamics, omega: Target, **extra) -> dict:
    out = {
        "convex_target": omega.is_convex,
        "origin_in_F": F.contains_origin,
        "origin_in_int_F": F.origin_interior,
        "finite_dim": True,
    }
    out.update(extra)
    return out


# ---------------------------------------------------------------------------
# normal cones to the target


def _active_normals(P: HPolyhedron, x) -> list:
    return [a for a, b in P.rows if not is_zero(a) and dot(a, x) == b]


def piece_normal_cone(P: HPolyhedron, x) -> PolyhedralCone:
    """Normal cone of the convex piece ``P`` at ``x in P``: the cone of active normals."""
    return PolyhedralCone.generated_by(P.dim, _active_normals(P, x))


def normal_cone_membership(P: HPolyhedron, x, xstar) -> bool:
    """``x* in N(x; P)`` by an LP over active normals (any dimension)."""
    from .geometry.lp import lp_solve

    act = _active_normals(P, x)
    if not act:
        return is_zero(xstar)
    n = P.dim
    A_eq = [[a[i] for a in act] for i in range(n)]
    return lp_solve([0] * len(act), A_eq=A_eq, b_eq=list(xstar), nonneg=True).optimal


def frechet_normal_cone(omega: Target, x):
    """Regular normal cone: intersection of piece normal cones over pieces containing ``x``.

    Returns an empty union when ``x`` lies outside the target.
    """
    x = vec(x)
    idx = omega.union.pieces_containing(x)
    if not idx:
        return PolyhedralUnion(omega.dim, [])
    cone = piece_normal_cone(omega.pieces[idx[0]], x)
    for i in idx[1:]:
        cone = cone.intersect(piece_normal_cone(omega.pieces[i], x))
    return cone


def _local_cones(omega: Target, x):
    """Active normal lists of the pieces containing ``x``."""
    return [_active_normals(omega.pieces[i], x) for i in omega.union.pieces_containing(x)]


def limiting_normal_cone(omega: Target, x) -> PolyhedralUnion:
    """Limiting normal cone as a union of convex cones.

    Near ``x`` the target coincides with ``x + K_1 u ... u K_m`` for tangent
    cones ``K_i = {d : a.d <= 0, a active in piece i}``.  The regular normal
    cone is constant on each cell of the hyperplane arrangement of all active
    normals; the limiting cone is the union of these cones over the cells
    meeting the local target.
    """
    x = vec(x)
    n = omega.dim
    local = _local_cones(omega, x)
    if not local:
        raise RegimeError(f"{x} is not in the target")
    if len(local) == 1:
        return PolyhedralUnion(n, [PolyhedralCone.generated_by(n, local[0])])
    normals = {}
    for act in local:
        for a in act:
            normals.setdefault(_normalize(a, Fraction(0))[0], None)
    hyper = [(a, Fraction(0)) for a in normals]
    cones = []
    for _, d in arrangement_cells(hyper, [], n):
        gens = []
        hit = False
        for act in local:
            if all(dot(a, d) <= 0 for a in act):
                hit = True
                gens.append([a for a in act if dot(a, d) == 0])
        if not hit:
            continue
        cone = PolyhedralCone.generated_by(n, gens[0])
        for g in gens[1:]:
            cone = cone.intersect(PolyhedralCone.generated_by(n, g))
        cones.append(cone)
    return PolyhedralUnion(n, cones).simplified()


def eps_normal_contains(omega: Target, w, xstar, eps) -> bool:
    """``x* in N_eps(w; Omega)`` exactly: ``dist(x*, N(w; P_i)) <= eps`` for every piece at ``w``."""
    w, xstar, eps = vec(w), vec(xstar), Fraction(eps)
    idx = omega.union.pieces_containing(w)
    if not idx:
        return False
    for i in idx:
        cone = piece_normal_cone(omega.pieces[i], w)
        d2 = project(xstar, cone.rows, omega.dim)[1]
        if d2 > eps * eps:
            return False
    return True


# ---------------------------------------------------------------------------
# dual sets built from the dynamics


@dataclass(frozen=True)
class SupportLevelSet:
    """Dual set defined through ``sigma_F(-x*)``.

    ``inner`` and ``outer`` coincide unless the set depends on an irrational
    dynamics bound, in which case they bracket the true set and membership
    between them is reported as None.
    """

    kind: str
    eps: Fraction
    inner: PolyhedralUnion
    outer: PolyhedralUnion
    dynamics: Dynamics

    @property
    def exact(self) -> bool:
        return self.inner is self.outer

    @property
    def set(self) -> PolyhedralUnion:
        if not self.exact:
            raise ValueError("set depends on an irrational dynamics bound; use inner/outer")
        return self.inner

    def contains(self, xstar):
        xstar = vec(xstar)
        if self.inner.contains(xstar):
            return True
        if not self.outer.contains(xstar):
            return False
        return None


def _c_star_rows(F: Dynamics, level):
    return [(neg(v), level) for v in F.vertices]


def support_level_set(F: Dynamics, kind: str = "C", eps=0) -> SupportLevelSet:
    """``C``: ``sigma_F(-x*) <= 1 + eps|F|``; ``S``: ``|sigma_F(-x*) - 1| <= eps|F|``;
    ``F+``: ``<x*, v> >= 0`` for all ``v`` in ``F``."""
    if F.is_ball:
        raise ValueError("support level sets are polyhedral only for polytope dynamics")
    eps = Fraction(eps)
    n = F.dim
    if kind in ("F+", "F_plus", "positive"):
        cone = PolyhedralUnion(n, [PolyhedralCone(n, [neg(v) for v in F.vertices])])
        return SupportLevelSet("F+", eps, cone, cone, F)
    bound = F.bound()
    exact = eps == 0 or not isinstance(bound, Interval)
    levels = [lower(bound), upper(bound)]

    def build(b):
        hi = 1 + eps * b
        if kind == "C":
            return PolyhedralUnion(n, [HPolyhedron(n, _c_star_rows(F, hi))])
        if kind == "S":
            lo = 1 - eps * b
            pieces = [HPolyhedron(n, _c_star_rows(F, hi) + [(v, -lo)]) for v in F.vertices]
            return PolyhedralUnion(n, pieces)
        raise ValueError(f"unknown support level set {kind!r}")

    if exact:
        s = build(levels[0])
        return SupportLevelSet(kind, eps, s, s, F)
    # both sets shrink as |F| decreases, so the lower bound gives the inner set
    return SupportLevelSet(kind, eps, build(levels[0]), build(levels[1]), F)


def sigma_neg(F: Dynamics, xstar):
    return F.support(neg(vec(xstar)))


def two_sided_support_bound(F: Dynamics, xstar, eps):
    """``1 - eps|F| <= sigma_F(-x*) <= 1 + eps|F|``; None when undecidable at the bound's precision."""
    s = sigma_neg(F, xstar)
    eps = Fraction(eps)
    bound = F.bound()
    lo_ok = [lower(s) >= 1 - eps * lower(bound), upper(s) >= 1 - eps * upper(bound)]
    hi_ok = [upper(s) <= 1 + eps * lower(bound), lower(s) <= 1 + eps * upper(bound)]
    if lo_ok[0] and hi_ok[0]:
        return True
    if not lo_ok[1] or not hi_ok[1]:
        return False
    return None


def gauge_subdifferential(F: Dynamics, u) -> HPolyhedron:
    """Convex subdifferential of the gauge at ``u``.

    The gauge is the support function of the polar of ``G = conv(F u {0})``,
    so for ``0 < rho(u) < inf`` the subdifferential is the face
    ``{x* : <x*, u> = rho(u), <x*, g> <= 1 for g in G}``; at ``u = 0`` it is
    the whole polar.
    """
    if F.is_ball:
        raise ValueError("gauge subdifferentials are polyhedral only for polytope dynamics")
    u = vec(u)
    n = F.dim
    polar = [(g, 1) for g in F.g_vertices if not is_zero(g)]
    if is_zero(u):
        return HPolyhedron(n, polar)
    rho = F.gauge(u)
    if rho == INF:
        raise ValueError(f"gauge is infinite at {u}: subdifferential is not described here")
    return HPolyhedron(n, polar + [(u, rho), (neg(u), -rho)])


def eps_gauge_subdiff_contains(F: Dynamics, u, xstar, eps) -> bool:
    """``x* in d_eps rho(u)``: for the polyhedral gauge this is ``dist(x*, d rho(u)) <= eps``."""
    S = gauge_subdifferential(F, u)
    res = project(vec(xstar), S.rows, F.dim)
    return res is not None and res[1] <= Fraction(eps) ** 2


# ---------------------------------------------------------------------------
# subdifferentials at points of the target


def _require_inset(omega, x):
    if not omega.contains(x):
        raise RegimeError(f"{tuple(map(str, x))} lies outside the target; use the out-of-set routines")


def basic_subdiff_inset(F: Dynamics, omega: Target, x) -> SubdiffResult:
    """``dT(x) = N(x; Omega) n C*`` at points of the target (finite dimension)."""
    x = vec(x)
    _require_inset(omega, x)
    N = limiting_normal_cone(omega, x)
    C = support_level_set(F, "C").set
    source = "limiting normal cone sliced by support level set"
    if omega.is_convex:
        source = "convex normal cone sliced by support level set"
    return SubdiffResult(N.intersect(C).simplified(), EXACT, source, _hypotheses(F, omega))


def singular_subdiff_inset(F: Dynamics, omega: Target, x) -> SubdiffResult:
    """``N(x; Omega) n F*_+``: exact when ``0 in F``, an upper estimate otherwise."""
    x = vec(x)
    _require_inset(omega, x)
    N = limiting_normal_cone(omega, x)
    P = support_level_set(F, "F+").set
    exactness = EXACT if F.contains_origin else UPPER
    return SubdiffResult(
        N.intersect(P).simplified(),
        exactness,
        "limiting normal cone sliced by positive dual cone of dynamics",
        _hypotheses(F, omega),
    )


def normal_cone_representation_check(F: Dynamics, omega: Target, x) -> bool:
    """``N(x; Omega)`` equals the cone generated by ``dT(x)`` (checked piecewise)."""
    x = vec(x)
    N = limiting_normal_cone(omega, x)
    sub_set = basic_subdiff_inset(F, omega, x).set
    generated = []
    for piece in sub_set.pieces:
        verts, rays, lines = piece.vrep()
        gens = [v for v in verts if not is_zero(v)] + list(rays)
        generated.append(PolyhedralCone.generated_by(omega.dim, gens, lines))
    return N.equals(PolyhedralUnion(omega.dim, generated))


# ---------------------------------------------------------------------------
# subdifferentials at points outside the target


def _require_outset(F, omega, x):
    if omega.contains(x):
        raise RegimeError("point lies in the target; use the in-set routines")
    t, _ = minimal_time(F, omega, x)
    if t == INF:
        raise EmptyProjection("minimal time is infinite: the point is outside the domain")
    return t


def projection_strata(F: Dynamics, omega: Target, x):
    """Representative projection points, one per stratum on which both
    ``N(w; Omega)`` and ``d rho(w - x)`` are constant."""
    x = vec(x)
    t = _require_outset(F, omega, x)
    proj = projection_set(F, omega, x)
    body = HPolyhedron.from_vrep([tuple(xi + t * gi for xi, gi in zip(x, g)) for g in F.g_vertices], dim=F.dim)
    hyper = {}
    for P in list(omega.pieces) + [body]:
        for a, b in P.rows:
            if not is_zero(a):
                hyper.setdefault(_normalize(a, b), None)
    reps = []
    for piece in proj.pieces.pieces:
        for _, w in arrangement_cells(list(hyper), piece.rows, F.dim):
            reps.append(w)
    return t, proj, sorted(set(reps))


def subdiff_outset_via_projection(F: Dynamics, omega: Target, x):
    """Upper estimates through projections: returns ``(basic, singular)``.

    ``basic`` is the union over projection points ``w`` of
    ``-d rho(w - x) n N(w; Omega)`` (an equality when the target is convex
    and ``0 in F``); ``singular`` is the union of ``N(w; Omega) n F*_+``.
    """
    x = vec(x)
    t, proj, reps = projection_strata(F, omega, x)
    n = F.dim
    Fplus = support_level_set(F, "F+").set
    basic, singular = [], []
    for w in reps:
        N = limiting_normal_cone(omega, w)
        minus_drho = gauge_subdifferential(F, sub(w, x)).negate()
        basic.extend(N.intersect(minus_drho).pieces)
        singular.extend(N.intersect(Fplus).pieces)
    hyp = _hypotheses(F, omega)
    exact = omega.is_convex and F.contains_origin
    b = SubdiffResult(
        PolyhedralUnion(n, basic).simplified(),
        EXACT if exact else UPPER,
        "projection estimate: negative gauge subdifferential sliced by normal cone",
        hyp,
        (f"{len(reps)} projection strata",),
    )
    s = SubdiffResult(
        PolyhedralUnion(n, singular).simplified(),
        UPPER,
        "projection estimate: normal cone sliced by positive dual cone of dynamics",
        hyp,
    )
    return b, s


def enlargement_normal_cone(F: Dynamics, omega: Target, x, r=None) -> PolyhedralUnion:
    """``N(x; Omega_r)`` with ``r = T(x)`` by default.

    Convex targets use the Minkowski-sum decomposition
    ``N(w; Omega) n {y : <g_bar - g, y> <= 0 for g in G}`` with a projection
    witness ``w`` and ``g_bar = (w - x)/r``; nonconvex targets build
    ``Omega_r`` explicitly and take its limiting normal cone.
    """
    x = vec(x)
    if r is None:
        r = _require_outset(F, omega, x)
    r = Fraction(r)
    if omega.is_convex:
        return as_union(_enlargement_cone_convex(F, omega, x, r))
    return limiting_normal_cone(enlargement(F, omega, r), x)


def _enlargement_cone_convex(F, omega, x, r) -> PolyhedralCone:
    proj = projection_set(F, omega, x)
    w = proj.witness.w
    gbar = scale(1 / r, sub(w, x))
    N = piece_normal_cone(omega.pieces[0], w)
    extra = PolyhedralCone(F.dim, [sub(gbar, g) for g in F.g_vertices if sub(gbar, g) != (0,) * F.dim])
    return N.intersect(extra)


def enlargement_normal_cone_explicit(F: Dynamics, omega: Target, x, r=None) -> PolyhedralUnion:
    """``N(x; Omega_r)`` from the explicit enlargement (independent route, dim <= 3)."""
    x = vec(x)
    if r is None:
        r = _require_outset(F, omega, x)
    return limiting_normal_cone(enlargement(F, omega, r), x)


@dataclass(frozen=True)
class EnlargementSubdiff:
    one_sided_basic: SubdiffResult
    one_sided_singular: SubdiffResult
    convex_exact_basic: SubdiffResult | None
    convex_exact_singular: SubdiffResult | None
    normal_cone: PolyhedralUnion


def subdiff_outset_via_enlargement(F: Dynamics, omega: Target, x, lipschitz: bool | None = None) -> EnlargementSubdiff:
    """Slices of ``N(x; Omega_r)`` by ``C*``, ``S*`` and ``F*_+``.

    The one-sided basic set is ``N n S*`` (exact) when local Lipschitz
    behaviour is certified, either by ``0 in int F`` or by the caller through
    ``lipschitz=True``; otherwise the upper estimate ``N n C*`` is returned.
    For convex targets the two-sided subdifferentials are also exact.
    """
    x = vec(x)
    r = _require_outset(F, omega, x)
    N = enlargement_normal_cone(F, omega, x, r)
    C = support_level_set(F, "C").set
    S = support_level_set(F, "S").set
    P = support_level_set(F, "F+").set
    certified = F.origin_interior or bool(lipschitz)
    hyp = _hypotheses(F, omega, lipschitz_certified=certified)
    NS = N.intersect(S).simplified() if certified or omega.is_convex else None
    NP = N.intersect(P).simplified()
    if certified:
        osb = SubdiffResult(NS, EXACT, "enlargement normal cone sliced by two-sided support set", hyp)
    else:
        osb = SubdiffResult(N.intersect(C).simplified(), UPPER, "enlargement normal cone sliced by support level set", hyp)
    oss = SubdiffResult(NP, UPPER, "enlargement normal cone sliced by positive dual cone", hyp)
    ceb = ces = None
    if omega.is_convex:
        ceb = SubdiffResult(NS, EXACT, "convex case: enlargement normal cone sliced by two-sided support set", hyp)
        ces = SubdiffResult(NP, EXACT, "convex case: enlargement normal cone sliced by positive dual cone", hyp)
    return EnlargementSubdiff(osb, oss, ceb, ces, N)


def convex_chain(F: Dynamics, omega: Target, x, exact: PolyhedralUnion | None = None) -> dict:
    """Sets in the convex out-of-set chain at the canonical projection witness.

    ``left = N(x; Omega_r) n -d rho(w - x)`` must equal the exact
    subdifferential and sit inside ``right = N(w; Omega) n -d rho(w - x)``,
    with equality when ``0 in F``.
    """
    if not omega.is_convex:
        raise RegimeError("the projection chain is stated for convex targets")
    x = vec(x)
    r = _require_outset(F, omega, x)
    w = projection_set(F, omega, x).witness.w
    minus_drho = as_union(gauge_subdifferential(F, sub(w, x)).negate())
    left = enlargement_normal_cone(F, omega, x, r).intersect(minus_drho)
    right = limiting_normal_cone(omega, w).intersect(minus_drho)
    if exact is None:
        exact = subdiff_outset_via_enlargement(F, omega, x).convex_exact_basic.set
    return {"w": w, "left": left, "right": right, "subdiff": exact}


def subdiff(F: Dynamics, omega: Target, x, which: str = "basic", lipschitz: bool | None = None) -> SubdiffResult:
    """Dispatch to the in-set or out-of-set rule for ``which`` in {basic, singular, one-sided, one-sided-singular}."""
    x = vec(x)
    inset = omega.contains(x)
    if which == "basic":
        if inset:
            return basic_subdiff_inset(F, omega, x)
        if omega.is_convex:
            return subdiff_outset_via_enlargement(F, omega, x).convex_exact_basic
        return subdiff_outset_via_projection(F, omega, x)[0]
    if which == "singular":
        if inset:
            return singular_subdiff_inset(F, omega, x)
        if omega.is_convex:
            return subdiff_outset_via_enlargement(F, omega, x).convex_exact_singular
        return subdiff_outset_via_projection(F, omega, x)[1]
    if which in ("one-sided", "one-sided-singular"):
        if inset:
            raise RegimeError("one-sided constructions are provided at out-of-set points")
        res = subdiff_outset_via_enlargement(F, omega, x, lipschitz)
        return res.one_sided_basic if which == "one-sided" else res.one_sided_singular
    raise ValueError(f"unknown subdifferential kind {which!r}")


def eps_subgradient_membership(scene, x, xstar, eps, plan=None) -> str:
    """Three-valued ``x* in d_eps T(x)`` (``member``/``non_member``/``uncertain``).

    Convex targets with ``eps = 0`` are decided exactly from the computed
    subdifferential; every other case goes through the sampled quotient test.
    """
    from . import oracle

    x, xstar, eps = vec(x), vec(xstar), Fraction(eps)
    if eps == 0 and not scene.closed_form and scene.is_convex:
        res = subdiff(scene.dynamics, scene.target, x, "basic")
        return oracle.MEMBER if res.contains(xstar) else oracle.NON_MEMBER
    verdicts = oracle.sampled_frechet_subdiff(scene, x, eps, [xstar], plan)
    return verdicts.verdicts[0]


def ball_complement_enlargement_normal_cone(x) -> PolyhedralUnion:
    """``N(x; Omega_r)`` for unit-ball dynamics and target ``{|x| >= 1}``, with ``r = T(x)``.

    Here ``Omega_r = {|x| >= 1 - r}``: the whole plane when ``r = 1`` (only at
    the origin), otherwise ``x`` lies on its boundary circle and the normal
    cone is the inward ray through ``-x``.
    """
    x = vec(x)
    n = len(x)
    if norm_sq(x) >= 1:
        return PolyhedralUnion(n, [PolyhedralCone.generated_by(n, [neg(x)]) if norm_sq(x) == 1 else PolyhedralCone.zero(n)])
    if is_zero(x):
        return PolyhedralUnion(n, [PolyhedralCone.zero(n)])
    return PolyhedralUnion(n, [PolyhedralCone.generated_by(n, [neg(x)])])


__all__ = [
    "EXACT",
    "LOWER",
    "UPPER",
    "EnlargementSubdiff",
    "RegimeError",
    "SubdiffResult",
    "SupportLevelSet",
    "basic_subdiff_inset",
    "convex_chain",
    "enlargement_normal_cone",
    "enlargement_normal_cone_explicit",
    "normal_cone_representation_check",
    "piece_normal_cone",
    "eps_gauge_subdiff_contains",
    "eps_normal_contains",
    "eps_subgradient_membership",
    "frechet_normal_cone",
    "gauge_subdifferential",
    "limiting_normal_cone",
    "projection_strata",
    "singular_subdiff_inset",
    "subdiff",
    "subdiff_outset_via_enlargement",
    "subdiff_outset_via_projection",
    "support_level_set",
    "two_sided_support_bound",
]
