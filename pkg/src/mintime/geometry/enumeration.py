"""Generator/inequality conversion for low-dimensional cones and polyhedra.

Extreme rays are found by brute force: every choice of ``d - 1`` linearly
independent active constraints of a pointed cone in ``R^d`` determines a
candidate ray, kept when it satisfies all constraints.  This is exponential
in the dimension but exact and simple, and the sets handled here live in
``R^2`` or ``R^3`` (``R^4`` after homogenisation).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .lp import strict_point
from .rational import is_zero, primitive

_ZERO = Fraction(0)


def rref(rows, n):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    M = [[Fraction(v) for v in r] for r in rows]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(M)) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][col]
        M[r] = [v * inv for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][col] != 0:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(col)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows, n) -> int:
    return len(rref(rows, n)[1]) if rows else 0


def nullspace(rows, n):
    """Basis of ``{x : r.x = 0 for r in rows}`` as primitive integer vectors."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    R, pivots = rref(rows, n)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [_ZERO] * n
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -R[i][f]
        basis.append(primitive(v))
    return basis


def _dedupe(vectors):
    seen = {}
    for v in vectors:
        seen.setdefault(primitive(v), None)
    return sorted(seen)


def cone_generators(rows, n):
    """Generators of ``{x in R^n : a.x <= 0 for a in rows}``.

    Returns ``(rays, lines)``: ``lines`` spans the lineality space and
    ``rays`` are the extreme rays of the pointed part orthogonal to it.
    """
    # positive scaling keeps a.x <= 0, so work with distinct primitive integer rows
    rows = sorted({tuple(int(v) for v in primitive([Fraction(x) for x in a])) for a in rows if not is_zero(a)})
    lines = nullspace(rows, n)
    pointed_dim = n - len(lines)
    if pointed_dim == 0:
        return [], lines
    rays = set()
    need = pointed_dim - 1
    for subset in combinations(range(len(rows)), need):
        eqs = [rows[i] for i in subset] + list(lines)
        ns = nullspace(eqs, n)
        if len(ns) != 1:
            continue
        d = tuple(int(v) for v in ns[0])
        for cand in (d, tuple(-x for x in d)):
            if cand not in rays and all(sum(p * q for p, q in zip(a, cand)) <= 0 for a in rows):
                rays.add(cand)
    return sorted(tuple(Fraction(v) for v in r) for r in rays), lines


def hrep_to_vrep(rows, n):
    """Vertices, rays and lines of ``{x : a.x <= b}`` given as ``[(a, b), ...]``.

    Vertices are the points of the minimal faces orthogonal to the lineality
    space; an empty set yields no vertices.
    """
    hom = [tuple(Fraction(v) for v in a) + (-Fraction(b),) for a, b in rows]
    hom.append((_ZERO,) * n + (Fraction(-1),))
    rays, lines = cone_generators(hom, n + 1)
    vertices, out_rays = [], []
    for r in rays:
        if r[n] > 0:
            vertices.append(tuple(x / r[n] for x in r[:n]))
        else:
            out_rays.append(tuple(r[:n]))
    vertices = sorted(set(vertices))
    out_lines = [tuple(l[:n]) for l in lines]
    return vertices, _dedupe(out_rays), out_lines


def vrep_to_hrep(points, rays, lines, n):
    """Inequalities ``(a, b)`` describing ``conv(points) + cone(rays) + span(lines)``.

    ``points`` must be nonempty.  Equalities come out as opposite pairs.
    """
    points = [tuple(Fraction(v) for v in p) for p in points]
    rays = [tuple(Fraction(v) for v in r) for r in rays]
    lines = [tuple(Fraction(v) for v in l) for l in lines]
    polar = [p + (Fraction(-1),) for p in points]
    polar += [r + (_ZERO,) for r in rays]
    for l in lines:
        polar.append(tuple(l) + (_ZERO,))
        polar.append(tuple(-x for x in l) + (_ZERO,))
    g_rays, g_lines = cone_generators(polar, n + 1)
    out = []
    for g in g_rays:
        out.append((g[:n], g[n]))
    for g in g_lines:
        out.append((g[:n], g[n]))
        out.append((tuple(-x for x in g[:n]), -g[n]))
    return [(a, b) for a, b in out if not is_zero(a)]


def arrangement_cells(hyperplanes, region, n):
    """Cells cut out of ``region`` by hyperplanes ``a.x = b``.

    ``region`` is a list of closed inequalities ``(a, b)``.  Returns a list of
    ``(signs, point)`` where ``signs[i]`` in ``{-1, 0, 1}`` is the side of the
    ``i``-th hyperplane and ``point`` lies in the relative interior of the cell.
    """
    hyperplanes = list(hyperplanes)
    cells = []

    def walk(i, closed, strict, eq, signs):
        if strict_point(closed, strict, n, eq) is None:
            return
        if i == len(hyperplanes):
            cells.append((tuple(signs), strict_point(closed, strict, n, eq)))
            return
        a, b = hyperplanes[i]
        neg_a = tuple(-x for x in a)
        walk(i + 1, closed, strict + [(a, b)], eq, signs + [-1])
        walk(i + 1, closed, strict, eq + [(a, b)], signs + [0])
        walk(i + 1, closed, strict + [(neg_a, -b)], eq, signs + [1])

    walk(0, list(region), [], [], [])
    return cells


def _solve_system(M, rhs):
    """Unique solution of the square system ``M y = rhs``, or None if singular."""
    k = len(M)
    A = [list(r) + [v] for r, v in zip(M, rhs)]
    R, pivots = rref(A, k)
    if len(pivots) < k or any(p >= k for p in pivots):
        return None
    return [R[i][k] for i in range(k)]
