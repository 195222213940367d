"""Exact minimal time functions for constant convex dynamics and polyhedral targets.

Values, projections, enlargements, normal cones and subdifferential sets
are computed in rational arithmetic; :mod:`mintime.oracle` provides sampled
brute-force checks and :mod:`mintime.verify` the suites that compare the two.
"""

from .dynamics import Dynamics
from .geometry import HPolyhedron, Interval, PolyhedralCone, PolyhedralUnion, UnsupportedDimension
from .geometry.rational import INF
from .scenes import FIXTURES, BallComplementScene, Scene, fixture
from .subdiff import RegimeError, SubdiffResult, subdiff
from .timefn import (
    EmptyProjection,
    LevelSetEvaluator,
    Target,
    enlargement,
    minimal_time,
    projection_set,
    time_value,
)

__version__ = "0.1.0"

__all__ = [
    "FIXTURES",
    "INF",
    "BallComplementScene",
    "Dynamics",
    "EmptyProjection",
    "HPolyhedron",
    "Interval",
    "LevelSetEvaluator",
    "PolyhedralCone",
    "PolyhedralUnion",
    "RegimeError",
    "Scene",
    "SubdiffResult",
    "Target",
    "UnsupportedDimension",
    "enlargement",
    "fixture",
    "minimal_time",
    "projection_set",
    "subdiff",
    "time_value",
]
