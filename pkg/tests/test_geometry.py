from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mintime.geometry.enumeration import arrangement_cells, hrep_to_vrep, rank, vrep_to_hrep
from mintime.geometry.lp import INFEASIBLE, UNBOUNDED, check_certificate, lp_solve, strict_point
from mintime.geometry.polyhedra import HPolyhedron, PolyhedralCone, PolyhedralUnion
from mintime.geometry.qp import project
from mintime.geometry.rational import (
    INF,
    DimensionError,
    Interval,
    dot,
    fmt,
    parse_ext,
    primitive,
    rat,
    sqrt_interval,
    vec,
)

small = st.fractions(min_value=-4, max_value=4, max_denominator=4)
coeff = st.integers(min_value=-3, max_value=3)


def test_rat_parsing():
    assert rat("3/4") == Fraction(3, 4)
    assert rat(" -2 ") == -2
    assert rat(0.5) == Fraction(1, 2)
    with pytest.raises(TypeError):
        rat(True)
    with pytest.raises(ValueError):
        rat(float("inf"))


def test_fmt_round_trip():
    for v in (Fraction(-7, 3), Fraction(5), INF):
        assert parse_ext(fmt(v)) == v
    with pytest.raises(ValueError):
        fmt(0.25)


def test_primitive_direction_key():
    assert primitive(vec(["1/2", "3/4"])) == (2, 3)
    assert primitive(vec([0, "-5/2"])) == (0, -1)


def test_dot_dimension_mismatch():
    with pytest.raises(DimensionError):
        dot((1, 2), (1,))


@given(st.fractions(min_value=0, max_value=50, max_denominator=30))
def test_sqrt_interval_brackets_root(q):
    r = sqrt_interval(q)
    if isinstance(r, Interval):
        assert r.lo * r.lo <= q <= r.hi * r.hi
        assert r.width() <= Fraction(1, 2**60)
    else:
        assert r * r == q


def test_interval_arithmetic():
    i = Interval(Fraction(1), Fraction(2))
    assert (1 - i) == Interval(Fraction(-1), Fraction(0))
    assert (i * -2) == Interval(Fraction(-4), Fraction(-2))
    assert Fraction(3, 2) in i


# ---------------------------------------------------------------------------
# LP


def test_lp_small_known_optimum():
    # max x + y on the triangle x, y >= 0, x + 2y <= 4, 3x + y <= 6
    A, b = [[1, 2], [3, 1]], [4, 6]
    res = lp_solve([1, 1], A, b, maximize=True, nonneg=True)
    assert res.optimal and res.value == Fraction(14, 5) and res.x == (Fraction(8, 5), Fraction(6, 5))
    assert check_certificate(res, [1, 1], A, b, maximize=True, nonneg=True)


def test_lp_infeasible_and_unbounded():
    assert lp_solve([1], [[1], [-1]], [-1, -1]).status == INFEASIBLE
    assert lp_solve([1], [[1]], [3]).status == UNBOUNDED


def test_lp_equalities_and_free_variables():
    res = lp_solve([1, -1], A_eq=[[1, 1]], b_eq=[2], A_ub=[[-1, 0], [0, -1]], b_ub=[0, 0])
    assert res.value == -2 and res.x == (0, 2)
    assert check_certificate(res, [1, -1], [[-1, 0], [0, -1]], [0, 0], [[1, 1]], [2])


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.lists(coeff, min_size=3, max_size=3), min_size=1, max_size=5),
    st.lists(st.integers(-3, 6), min_size=5, max_size=5),
    st.lists(coeff, min_size=3, max_size=3),
)
def test_lp_duality_certificate(A, b, c):
    b = b[: len(A)]
    # a box keeps every instance bounded
    A_box = A + [[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, 0, 0], [0, -1, 0], [0, 0, -1]]
    b_box = b + [5] * 6
    res = lp_solve(c, A_box, b_box)
    if res.status == INFEASIBLE:
        assert strict_point([(vec(a), rat(bb)) for a, bb in zip(A_box, b_box)], [], 3) is None
        return
    assert res.optimal
    assert check_certificate(res, c, A_box, b_box)


def test_strict_point_open_and_closed():
    p = strict_point([((1, 0), 1)], [((-1, 0), 0)], 2)
    assert p is not None and 0 < p[0] <= 1
    assert strict_point([((1,), 0)], [((-1,), 0)], 1) is None


# ---------------------------------------------------------------------------
# enumeration and polyhedra


def test_rank():
    assert rank([(1, 2), (2, 4)], 2) == 1


def test_unit_square_vertices():
    sq = HPolyhedron.box([0, 0], [1, 1])
    verts, rays, lines = hrep_to_vrep(sq.rows, 2)
    assert sorted(verts) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert rays == [] and lines == []


def test_halfplane_has_line_and_ray():
    verts, rays, lines = hrep_to_vrep([((1, 0), 0)], 2)
    assert len(lines) == 1 and len(rays) == 1 and len(verts) == 1


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(small, small), min_size=1, max_size=6))
def test_vrep_hrep_round_trip(points):
    P = HPolyhedron.from_vrep(points, dim=2)
    for p in points:
        assert P.contains(p)
    verts, _, _ = P.vrep()
    Q = HPolyhedron(2, vrep_to_hrep(verts, [], [], 2)) if verts else P
    assert P.equals(Q)
    # every vertex is one of the generating points
    assert set(verts) <= {vec(p) for p in points}


def test_arrangement_cells_of_two_lines():
    cells = arrangement_cells([((1, 0), 0), ((0, 1), 0)], HPolyhedron.box([-1, -1], [1, 1]).rows, 2)
    assert len(cells) == 9


def test_union_subset_needs_several_pieces():
    left = HPolyhedron.box([0, 0], [1, 1])
    right = HPolyhedron.box([1, 0], [2, 1])
    whole = PolyhedralUnion(2, [HPolyhedron.box([0, 0], [2, 1])])
    halves = PolyhedralUnion(2, [left, right])
    assert whole.is_subset(halves) and halves.is_subset(whole)
    assert not whole.is_subset(PolyhedralUnion(2, [left]))


def test_cone_generators_and_zero():
    C = PolyhedralCone.generated_by(2, [(1, 0), (0, 1)])
    assert C.contains((3, 2)) and not C.contains((-1, 0))
    assert PolyhedralCone.zero(2).contains((0, 0)) and not PolyhedralCone.zero(2).contains((0, 1))


@settings(max_examples=60, deadline=None)
@given(st.tuples(small, small))
def test_projection_onto_box_is_clamp(p):
    x, d2 = project(p, HPolyhedron.box([-1, -1], [1, 1]).rows, 2)
    clamp = tuple(min(max(v, Fraction(-1)), Fraction(1)) for v in p)
    assert x == clamp
    assert d2 == sum((a - b) ** 2 for a, b in zip(p, clamp))
