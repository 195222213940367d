"""Exact H-polyhedra, polyhedral cones and finite unions of polyhedra."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from . import enumeration
from .lp import feasible_point, lp_solve, strict_point
from .qp import project
from .rational import DimensionError, UnsupportedDimension, dot, fmt_vec, is_zero, primitive, vec

MAX_ENUM_DIM = 3


def _row(a, b):
    return vec(a), Fraction(b)


def _normalize(a, b):
    """Scale ``a.x <= b`` by a positive factor to coprime integers (hashable key)."""
    key = primitive(tuple(a) + (b,))
    return key[:-1], key[-1]


class HPolyhedron:
    """``{x : a.x <= b for (a, b) in rows}``; may be empty (see :meth:`is_empty`)."""

    __slots__ = ("dim", "rows", "_vrep")

    def __init__(self, dim: int, rows: Iterable = ()):
        self.dim = dim
        rows = tuple(_row(a, b) for a, b in rows)
        for a, _ in rows:
            if len(a) != dim:
                raise DimensionError(f"halfspace normal of length {len(a)} in R^{dim}")
        self.rows = rows
        self._vrep = None

    # construction ---------------------------------------------------------

    @classmethod
    def universe(cls, dim: int) -> "HPolyhedron":
        return cls(dim, ())

    @classmethod
    def empty(cls, dim: int) -> "HPolyhedron":
        return cls(dim, [((0,) * dim, -1)])

    @classmethod
    def box(cls, lo: Sequence, hi: Sequence) -> "HPolyhedron":
        n = len(lo)
        rows = []
        for i in range(n):
            e = [0] * n
            e[i] = 1
            rows.append((tuple(e), hi[i]))
            e[i] = -1
            rows.append((tuple(e), -Fraction(lo[i])))
        return cls(n, rows)

    @classmethod
    def point(cls, p: Sequence) -> "HPolyhedron":
        return cls.box(p, p)

    @classmethod
    def from_vrep(cls, points, rays=(), lines=(), dim: int | None = None) -> "HPolyhedron":
        """Convert ``conv(points) + cone(rays) + span(lines)`` (dim <= 3)."""
        points = [vec(p) for p in points]
        if dim is None:
            dim = len(points[0]) if points else len(next(iter(rays or lines)))
        if not points:
            return cls.empty(dim)
        _check_enum_dim(dim)
        rows = enumeration.vrep_to_hrep(points, [vec(r) for r in rays], [vec(l) for l in lines], dim)
        out = cls(dim, rows)
        return out

    # predicates -----------------------------------------------------------

    def contains(self, x: Sequence) -> bool:
        if len(x) != self.dim:
            raise DimensionError(f"point of length {len(x)} in R^{self.dim}")
        return all(dot(a, x) <= b for a, b in self.rows)

    __contains__ = contains

    def interior_contains(self, x: Sequence) -> bool:
        return all(dot(a, x) < b for a, b in self.rows) and not self.implicit_equalities()

    def active(self, x: Sequence) -> list:
        return [(a, b) for a, b in self.rows if dot(a, x) == b]

    def is_empty(self) -> bool:
        return self.some_point() is None

    def some_point(self):
        if not self.rows:
            return (Fraction(0),) * self.dim
        return feasible_point([a for a, _ in self.rows], [b for _, b in self.rows], n=self.dim)

    def maximize(self, c: Sequence):
        """Exact ``sup c.x`` over the set: Fraction, ``inf`` or None when empty."""
        if not self.rows:
            return Fraction(0) if is_zero(c) else float("inf")
        res = lp_solve(c, [a for a, _ in self.rows], [b for _, b in self.rows], maximize=True)
        if res.status == "infeasible":
            return None
        if res.status == "unbounded":
            return float("inf")
        return res.value

    def implicit_equalities(self) -> list:
        """Rows holding with equality on the whole (nonempty) set."""
        out = []
        for a, b in self.rows:
            if is_zero(a):
                continue
            lo = self.maximize(tuple(-x for x in a))
            if lo is not None and lo != float("inf") and -lo == b:
                out.append((a, b))
        return out

    def relint_point(self):
        """A point in the relative interior, or None when empty."""
        eq = self.implicit_equalities()
        eq_keys = {_normalize(a, b) for a, b in eq}
        strict = [(a, b) for a, b in self.rows if not is_zero(a) and _normalize(a, b) not in eq_keys]
        closed = [(a, b) for a, b in self.rows if is_zero(a)]
        return strict_point(closed, strict, self.dim, eq)

    def is_subset(self, other: "HPolyhedron") -> bool:
        """Exact containment via one LP per inequality of ``other`` (any dimension)."""
        _same_dim(self, other)
        if self.is_empty():
            return True
        for a, b in other.rows:
            m = self.maximize(a)
            if m == float("inf") or m > b:
                return False
        return True

    def equals(self, other: "HPolyhedron") -> bool:
        return self.is_subset(other) and other.is_subset(self)

    def is_bounded(self) -> bool:
        if self.is_empty():
            return True
        for i in range(self.dim):
            for s in (1, -1):
                e = [0] * self.dim
                e[i] = s
                if self.maximize(e) == float("inf"):
                    return False
        return True

    # operations -----------------------------------------------------------

    def intersect(self, other: "HPolyhedron") -> "HPolyhedron":
        _same_dim(self, other)
        return HPolyhedron(self.dim, self.rows + other.rows)

    def translate(self, v: Sequence) -> "HPolyhedron":
        return HPolyhedron(self.dim, [(a, b + dot(a, v)) for a, b in self.rows])

    def negate(self) -> "HPolyhedron":
        return HPolyhedron(self.dim, [(tuple(-x for x in a), b) for a, b in self.rows])

    def vrep(self):
        """``(vertices, rays, lines)``; restricted to dim <= 3."""
        if self._vrep is None:
            _check_enum_dim(self.dim)
            self._vrep = enumeration.hrep_to_vrep(self.rows, self.dim)
        return self._vrep

    def minkowski_polytope(self, points: Sequence) -> "HPolyhedron":
        """``self + conv(points)`` (dim <= 3)."""
        verts, rays, lines = self.vrep()
        if not verts:
            return HPolyhedron.empty(self.dim)
        pts = {tuple(v[i] + p[i] for i in range(self.dim)) for v in verts for p in points}
        return HPolyhedron.from_vrep(sorted(pts), rays, lines, dim=self.dim)

    def canonical(self) -> "HPolyhedron":
        """Drop duplicate and redundant rows; rows scaled to coprime integers."""
        if self.is_empty():
            return HPolyhedron.empty(self.dim)
        rows = []
        seen = set()
        for a, b in self.rows:
            if is_zero(a):
                continue
            key = _normalize(a, b)
            if key not in seen:
                seen.add(key)
                rows.append(key)
        keep = list(rows)
        for r in list(rows):
            rest = [x for x in keep if x != r]
            m = HPolyhedron(self.dim, rest).maximize(r[0]) if rest else float("inf")
            if m != float("inf") and m <= r[1]:
                keep = rest
        return HPolyhedron(self.dim, sorted(keep))

    def distance_sq(self, p: Sequence):
        res = project(p, self.rows, self.dim)
        return None if res is None else res[1]

    def describe(self) -> dict:
        c = self.canonical()
        out = {"halfspaces": [{"a": fmt_vec(a), "b": fmt_vec([b])[0]} for a, b in c.rows]}
        if self.dim <= MAX_ENUM_DIM:
            v, r, l = c.vrep()
            out["vertices"] = [fmt_vec(x) for x in v]
            out["rays"] = [fmt_vec(x) for x in r]
            out["lines"] = [fmt_vec(x) for x in l]
        return out

    def __repr__(self) -> str:
        return f"HPolyhedron(dim={self.dim}, rows={len(self.rows)})"


class PolyhedralCone(HPolyhedron):
    """Homogeneous polyhedron ``{x : a.x <= 0}``."""

    __slots__ = ()

    def __init__(self, dim: int, normals: Iterable = ()):
        super().__init__(dim, [(a, 0) for a in normals])

    @classmethod
    def generated_by(cls, dim: int, rays=(), lines=()) -> "PolyhedralCone":
        """``cone(rays) + span(lines)`` as an H-cone (dim <= 3)."""
        _check_enum_dim(dim)
        polar_rows = [vec(r) for r in rays]
        for l in lines:
            polar_rows.append(vec(l))
            polar_rows.append(tuple(-x for x in vec(l)))
        g_rays, g_lines = enumeration.cone_generators(polar_rows, dim)
        normals = list(g_rays)
        for l in g_lines:
            normals.append(l)
            normals.append(tuple(-x for x in l))
        return cls(dim, normals)

    @classmethod
    def zero(cls, dim: int) -> "PolyhedralCone":
        return cls.generated_by(dim) if dim <= MAX_ENUM_DIM else cls(dim, _zero_normals(dim))

    @property
    def normals(self) -> list:
        return [a for a, _ in self.rows]

    def generators(self):
        """``(rays, lines)`` (dim <= 3)."""
        _check_enum_dim(self.dim)
        return enumeration.cone_generators(self.normals, self.dim)

    def intersect(self, other):
        if isinstance(other, PolyhedralCone):
            _same_dim(self, other)
            return PolyhedralCone(self.dim, self.normals + other.normals)
        return super().intersect(other)

    def negate(self) -> "PolyhedralCone":
        return PolyhedralCone(self.dim, [tuple(-x for x in a) for a in self.normals])


def _zero_normals(dim):
    out = []
    for i in range(dim):
        for s in (1, -1):
            e = [0] * dim
            e[i] = s
            out.append(tuple(e))
    return out


class PolyhedralUnion:
    """Finite union of H-polyhedra; empty pieces are discarded on construction."""

    __slots__ = ("dim", "pieces")

    def __init__(self, dim: int, pieces: Iterable[HPolyhedron] = ()):
        self.dim = dim
        kept = []
        for p in pieces:
            if p.dim != dim:
                raise DimensionError(f"piece in R^{p.dim} inside a union in R^{dim}")
            if not p.is_empty():
                kept.append(p)
        self.pieces = tuple(kept)

    @classmethod
    def of(cls, *pieces: HPolyhedron) -> "PolyhedralUnion":
        return cls(pieces[0].dim, pieces)

    def is_empty(self) -> bool:
        return not self.pieces

    @property
    def convex(self) -> bool:
        return len(self.pieces) <= 1

    def contains(self, x: Sequence) -> bool:
        return any(p.contains(x) for p in self.pieces)

    __contains__ = contains

    def pieces_containing(self, x: Sequence) -> list:
        return [i for i, p in enumerate(self.pieces) if p.contains(x)]

    def intersect(self, other) -> "PolyhedralUnion":
        others = other.pieces if isinstance(other, PolyhedralUnion) else (other,)
        return PolyhedralUnion(self.dim, [p.intersect(q) for p in self.pieces for q in others])

    def union(self, other: "PolyhedralUnion") -> "PolyhedralUnion":
        _same_dim(self, other)
        return PolyhedralUnion(self.dim, self.pieces + other.pieces)

    def is_subset(self, other) -> bool:
        """Exact containment of unions via recursive set difference (any dimension)."""
        _same_dim(self, other)
        targets = other.pieces if isinstance(other, PolyhedralUnion) else (other,)
        return all(_covered(list(p.rows), [], list(targets), self.dim) for p in self.pieces)

    def equals(self, other) -> bool:
        if not isinstance(other, PolyhedralUnion):
            other = PolyhedralUnion(other.dim, [other])
        return self.is_subset(other) and other.is_subset(self)

    def simplified(self) -> "PolyhedralUnion":
        """Canonical pieces with pieces contained in another piece removed."""
        canon = [p.canonical() for p in self.pieces]
        keep = []
        for i, p in enumerate(canon):
            dominated = False
            for j, q in enumerate(canon):
                if i == j:
                    continue
                if p.is_subset(q) and (not q.is_subset(p) or j < i):
                    dominated = True
                    break
            if not dominated:
                keep.append(p)
        return PolyhedralUnion(self.dim, keep)

    def describe(self) -> list:
        return [p.describe() for p in self.simplified().pieces]

    def __repr__(self) -> str:
        return f"PolyhedralUnion(dim={self.dim}, pieces={len(self.pieces)})"


def _covered(closed, strict, pieces, n) -> bool:
    """Is ``{closed <=, strict <}`` contained in the union of ``pieces``?"""
    if strict_point(closed, strict, n) is None:
        return True
    if not pieces:
        return False
    q, rest = pieces[0], pieces[1:]
    # region \ q is the disjoint union over k of {row_k violated, rows_<k hold}
    prefix = []
    for a, b in q.rows:
        neg = (tuple(-x for x in a), -b)
        if not _covered(closed + prefix, strict + [neg], rest, n):
            return False
        prefix.append((a, b))
    return True


def _same_dim(x, y):
    if x.dim != y.dim:
        raise DimensionError(f"sets in R^{x.dim} and R^{y.dim}")


def _check_enum_dim(dim):
    if dim > MAX_ENUM_DIM:
        raise UnsupportedDimension(f"explicit enumeration is limited to dim <= {MAX_ENUM_DIM}, got {dim}")


def double_description(p: HPolyhedron):
    """Generators of a cone or polyhedron: ``(vertices, rays, lines)`` (dim <= 3)."""
    _check_enum_dim(p.dim)
    return p.vrep()


def as_union(x) -> PolyhedralUnion:
    if isinstance(x, PolyhedralUnion):
        return x
    return PolyhedralUnion(x.dim, [x])
