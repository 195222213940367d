"""Exact Euclidean projection onto a polyhedron by active-set enumeration.

For ``min |x - p|^2`` over ``{A x <= b}`` the optimum is the projection of
``p`` onto the affine hull of some linearly independent active subset whose
KKT multipliers are nonnegative.  Enumerating subsets of size at most ``n``
finds it exactly; fine for the handful of rows met in ``R^2`` and ``R^3``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .enumeration import _solve_system
from .rational import dot, norm_sq, sub


def project(p, rows, n):
    """Return ``(x, dist^2)`` for the nearest point of ``{a.x <= b}``; None when empty."""
    p = tuple(Fraction(v) for v in p)
    rows = [(tuple(a), Fraction(b)) for a, b in rows]
    for k in range(0, n + 1):
        for subset in combinations(range(len(rows)), k):
            A = [rows[i][0] for i in subset]
            b = [rows[i][1] for i in subset]
            # Gram system (A A^T) lam = A p - b
            G = [[dot(ai, aj) for aj in A] for ai in A]
            rhs = [dot(ai, p) - bi for ai, bi in zip(A, b)]
            lam = _solve_system(G, rhs)
            if lam is None or any(l < 0 for l in lam):
                continue
            x = list(p)
            for l, ai in zip(lam, A):
                for j in range(n):
                    x[j] -= l * ai[j]
            x = tuple(x)
            if all(dot(a, x) <= bb for a, bb in rows):
                # a KKT point of a convex program is optimal
                return x, norm_sq(sub(x, p))
    return None


def dist_sq(p, rows, n):
    res = project(p, rows, n)
    return None if res is None else res[1]
