"""Exact two-phase simplex over the rationals.

Pivoting follows Bland's rule (lowest-index entering column, lowest-index
leaving basic variable on ratio ties), so every solve is deterministic and
terminates.  Optimal results carry a dual certificate that can be re-checked
with :func:`check_certificate`.

The tableau runs on ``gmpy2.mpq`` when gmpy2 is installed (several times
faster than ``Fraction``); inputs and results are always ``Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from typing import Sequence

from .rational import DimensionError

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover - exercised only without gmpy2
    _Q = Fraction


def _frac(q) -> Fraction:
    return q if isinstance(q, Fraction) else Fraction(int(q.numerator), int(q.denominator))

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_ZERO = Fraction(0)
_ONE = Fraction(1)
_Q0 = _Q(0)
_Q1 = _Q(1)


@dataclass(frozen=True)
class LPResult:
    """Outcome of :func:`lp_solve`.

    ``dual_ub`` (>= 0) and ``dual_eq`` certify optimality of the minimisation
    ``min s*c.x`` with ``s = -1`` when the caller asked to maximise: the
    vector ``s*c + A_ub^T dual_ub + A_eq^T dual_eq`` vanishes on free
    variables, is >= 0 on sign-constrained ones, and
    ``-b_ub.dual_ub - b_eq.dual_eq`` equals ``s*value``.  The duals are
    computed on first access.
    """

    status: str
    value: Fraction | None = None
    x: tuple | None = None
    _dual_fn: object = field(default=None, repr=False, compare=False)

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL

    @property
    def feasible(self) -> bool:
        return self.status != INFEASIBLE

    @cached_property
    def _duals(self):
        if self._dual_fn is None:
            return None, None
        return self._dual_fn()

    @property
    def dual_ub(self):
        return self._duals[0]

    @property
    def dual_eq(self):
        return self._duals[1]


def _as_rows(A, n):
    rows = [tuple(Fraction(v) for v in row) for row in A]
    for row in rows:
        if len(row) != n:
            raise DimensionError(f"constraint row of length {len(row)} for {n} variables")
    return rows


def lp_solve(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    *,
    maximize: bool = False,
    nonneg: bool | Sequence[bool] = False,
) -> LPResult:
    """Solve ``min/max c.x  s.t.  A_ub x <= b_ub, A_eq x = b_eq`` exactly.

    Variables are free unless ``nonneg`` marks them (a bool applies to all).
    """
    n = len(c)
    c = tuple(Fraction(v) for v in c)
    A_ub = _as_rows(A_ub, n)
    A_eq = _as_rows(A_eq, n)
    b_ub = tuple(Fraction(v) for v in b_ub)
    b_eq = tuple(Fraction(v) for v in b_eq)
    if len(A_ub) != len(b_ub) or len(A_eq) != len(b_eq):
        raise DimensionError("constraint matrix and right-hand side lengths differ")
    if isinstance(nonneg, bool):
        nonneg = (nonneg,) * n
    elif len(nonneg) != n:
        raise DimensionError("nonneg flags do not match variable count")

    sgn = -1 if maximize else 1
    cost = tuple(sgn * v for v in c)

    # standard form columns: x_j (or x_j^+, x_j^-), then one slack per ub row
    col_of = []  # (var index, sign)
    for j in range(n):
        col_of.append((j, 1))
        if not nonneg[j]:
            col_of.append((j, -1))
    n_struct = len(col_of)
    m_ub, m_eq = len(A_ub), len(A_eq)
    N = n_struct + m_ub
    rows, rhs, flip = [], [], []
    for i, (a, b) in enumerate(list(zip(A_ub, b_ub)) + list(zip(A_eq, b_eq))):
        row = [a[j] * s for j, s in col_of] + [_ZERO] * m_ub
        if i < m_ub:
            row[n_struct + i] = _ONE
        s = -1 if b < 0 else 1
        if s < 0:
            row = [-v for v in row]
            b = -b
        rows.append(row)
        rhs.append(b)
        flip.append(s)
    std_cost = [cost[j] * s for j, s in col_of] + [_ZERO] * m_ub

    slack_basis = [n_struct + i if i < m_ub and flip[i] > 0 else None for i in range(m_ub + m_eq)]
    rows = [[_Q(v) for v in r] for r in rows]
    rhs = [_Q(v) for v in rhs]
    std_cost = [_Q(v) for v in std_cost]
    solver = _Tableau(rows, rhs, N, slack_basis)
    if not solver.phase_one():
        return LPResult(INFEASIBLE)
    if not solver.phase_two(std_cost):
        return LPResult(UNBOUNDED)

    z = [_frac(v) for v in solver.solution()]
    x = [_ZERO] * n
    for k, (j, s) in enumerate(col_of):
        x[j] += s * z[k]
    x = tuple(x)
    value = sum((ci * xi for ci, xi in zip(c, x)), _ZERO)

    def duals():
        y = [_frac(v) for v in solver.duals(rows, std_cost)]
        u = tuple(-flip[i] * y[i] for i in range(m_ub))
        v = tuple(-flip[m_ub + i] * y[m_ub + i] for i in range(m_eq))
        return u, v

    return LPResult(OPTIMAL, value, x, duals)


class _Tableau:
    def __init__(self, rows, rhs, n_cols, start_basis):
        self.m = len(rows)
        self.N = n_cols
        # one artificial column (index >= N) per row that has no usable slack
        art = [i for i, b in enumerate(start_basis) if b is None]
        self.n_art = len(art)
        self.T = [list(r) + [_Q0] * self.n_art for r in rows]
        self.basis = list(start_basis)
        for a, i in enumerate(art):
            self.T[i][n_cols + a] = _Q1
            self.basis[i] = n_cols + a
        self.b = list(rhs)
        self.alive = list(range(self.m))  # original row index of each tableau row
        self.width = n_cols + self.n_art

    def _pivot(self, r, j, cost_row):
        T, b = self.T, self.b
        piv = T[r][j]
        if piv != 1:
            inv = 1 / piv
            T[r] = [v * inv for v in T[r]]
            b[r] = b[r] * inv
        prow = T[r]
        nz = [k for k, v in enumerate(prow) if v != 0]
        for i in range(len(T)):
            if i == r:
                continue
            f = T[i][j]
            if f != 0:
                Ti = T[i]
                for k in nz:
                    Ti[k] -= f * prow[k]
                b[i] -= f * b[r]
        if cost_row is not None:
            f = cost_row[0][j]
            if f != 0:
                cr = cost_row[0]
                for k in nz:
                    cr[k] -= f * prow[k]
                cost_row[1] -= f * b[r]
        self.basis[r] = j

    def _iterate(self, cost_row, allowed):
        T, b = self.T, self.b
        while True:
            red = cost_row[0]
            j = next((k for k in allowed if red[k] < 0), None)
            if j is None:
                return True
            best = None
            for i in range(len(T)):
                a = T[i][j]
                if a > 0:
                    ratio = b[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self._pivot(best[1], j, cost_row)

    def phase_one(self) -> bool:
        if self.n_art:
            red = [_Q0] * self.width
            val = _Q0
            for i in range(self.m):
                if self.basis[i] >= self.N:
                    row = self.T[i]
                    for k in range(self.N):
                        if row[k] != 0:
                            red[k] -= row[k]
                    val -= self.b[i]
            cost_row = [red, val]
            self._iterate(cost_row, range(self.width))
            if cost_row[1] != 0:  # -(sum of artificials) at optimum
                return False
        # drive zero-valued artificials out of the basis; drop redundant rows
        i = 0
        while i < len(self.T):
            if self.basis[i] >= self.N:
                j = next((k for k in range(self.N) if self.T[i][k] != 0), None)
                if j is None:
                    del self.T[i], self.b[i], self.basis[i], self.alive[i]
                    continue
                self._pivot(i, j, None)
            i += 1
        if self.n_art:
            self.T = [row[: self.N] for row in self.T]
        self.width = self.N
        return True

    def phase_two(self, cost) -> bool:
        red = list(cost)
        val = _Q0
        for i, bj in enumerate(self.basis):
            cb = cost[bj]
            if cb != 0:
                row = self.T[i]
                for k in range(self.N):
                    if row[k] != 0:
                        red[k] -= cb * row[k]
                val -= cb * self.b[i]
        self._cost_row = [red, val]
        return self._iterate(self._cost_row, range(self.N))

    def solution(self):
        z = [_Q0] * self.N
        for i, bj in enumerate(self.basis):
            z[bj] = self.b[i]
        return z

    def duals(self, rows, cost):
        """Solve B^T y = c_B on the surviving rows; redundant rows get y = 0."""
        kept = self.alive
        k = len(kept)
        # system: for each basic column j: sum_i rows[kept[i]][j] * y_i = cost[j]
        M = [[rows[kept[i]][j] for i in range(k)] + [cost[j]] for j in self.basis]
        y_kept = _solve_square(M, k)
        y = [_Q0] * len(rows)
        for i, orig in enumerate(kept):
            y[orig] = y_kept[i]
        return y


def _solve_square(M, k):
    M = [list(r) for r in M]
    for col in range(k):
        piv = next(r for r in range(col, k) if M[r][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [v * inv for v in M[col]]
        for r in range(k):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return [M[r][k] for r in range(k)]


def check_certificate(
    res: LPResult,
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    *,
    maximize: bool = False,
    nonneg: bool | Sequence[bool] = False,
) -> bool:
    """Re-verify primal feasibility, dual feasibility and zero duality gap."""
    if not res.optimal:
        return False
    n = len(c)
    if isinstance(nonneg, bool):
        nonneg = (nonneg,) * n
    x = res.x
    for a, b in zip(A_ub, b_ub):
        if sum(Fraction(ai) * xi for ai, xi in zip(a, x)) > Fraction(b):
            return False
    for a, b in zip(A_eq, b_eq):
        if sum(Fraction(ai) * xi for ai, xi in zip(a, x)) != Fraction(b):
            return False
    if any(nonneg[j] and x[j] < 0 for j in range(n)):
        return False
    if any(u < 0 for u in res.dual_ub):
        return False
    sgn = -1 if maximize else 1
    for j in range(n):
        g = sgn * Fraction(c[j])
        g += sum(Fraction(a[j]) * u for a, u in zip(A_ub, res.dual_ub))
        g += sum(Fraction(a[j]) * v for a, v in zip(A_eq, res.dual_eq))
        if nonneg[j]:
            if g < 0 or (g != 0 and x[j] != 0):
                return False
        elif g != 0:
            return False
    dual_value = -sum(Fraction(b) * u for b, u in zip(b_ub, res.dual_ub))
    dual_value -= sum(Fraction(b) * v for b, v in zip(b_eq, res.dual_eq))
    return dual_value == sgn * res.value


def feasible_point(A_ub=(), b_ub=(), A_eq=(), b_eq=(), n: int | None = None):
    """Some point of ``{A_ub x <= b_ub, A_eq x = b_eq}`` or None when empty."""
    if n is None:
        n = len(A_ub[0]) if A_ub else len(A_eq[0])
    res = lp_solve([0] * n, A_ub, b_ub, A_eq, b_eq)
    return res.x if res.optimal else None


def strict_point(closed, strict, n: int, eq=()):
    """A point with ``a.x <= b`` on ``closed``, ``a.x < b`` on ``strict`` and ``a.x == b`` on ``eq``.

    Maximises a common slack (capped at 1) on the strict rows; returns None
    when no such point exists.
    """
    if not strict:
        A_eq = [a for a, _ in eq]
        b_eq = [b for _, b in eq]
        return feasible_point([a for a, _ in closed], [b for _, b in closed], A_eq, b_eq, n=n)
    A_ub = [tuple(a) + (Fraction(0),) for a, _ in closed]
    b_ub = [b for _, b in closed]
    A_ub += [tuple(a) + (Fraction(1),) for a, _ in strict]
    b_ub += [b for _, b in strict]
    A_ub.append((Fraction(0),) * n + (Fraction(1),))
    b_ub.append(Fraction(1))
    A_eq = [tuple(a) + (Fraction(0),) for a, _ in eq]
    b_eq = [b for _, b in eq]
    c = (Fraction(0),) * n + (Fraction(1),)
    res = lp_solve(c, A_ub, b_ub, A_eq, b_eq, maximize=True)
    if res.optimal and res.value > 0:
        return res.x[:n]
    return None
