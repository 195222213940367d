"""Exact rational geometry: LP, projections, polyhedra and their generators."""

from .enumeration import arrangement_cells, cone_generators, hrep_to_vrep, nullspace, vrep_to_hrep
from .lp import LPResult, check_certificate, lp_solve, strict_point
from .polyhedra import HPolyhedron, PolyhedralCone, PolyhedralUnion, as_union, double_description
from .qp import project
from .rational import (
    INF,
    DimensionError,
    Interval,
    UnsupportedDimension,
    dot,
    fmt,
    fmt_vec,
    parse_ext,
    rat,
    sqrt_interval,
    vec,
)

__all__ = [
    "INF",
    "DimensionError",
    "HPolyhedron",
    "Interval",
    "LPResult",
    "PolyhedralCone",
    "PolyhedralUnion",
    "UnsupportedDimension",
    "arrangement_cells",
    "as_union",
    "check_certificate",
    "cone_generators",
    "dot",
    "double_description",
    "fmt",
    "fmt_vec",
    "hrep_to_vrep",
    "lp_solve",
    "nullspace",
    "parse_ext",
    "project",
    "rat",
    "sqrt_interval",
    "strict_point",
    "vec",
    "vrep_to_hrep",
]
