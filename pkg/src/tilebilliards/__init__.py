"""Tiling billiards: simulate, classify, and verify trajectories that
reflect across the edges of planar tilings."""

from .geom import Isometry, IsometryKind, Line, Point2, Segment, compose_reflections
from .tilings import (
    CentralZone,
    LatticeTiling,
    LineArrangementTiling,
    OnBoundary,
    central_zone,
    concurrent_lines,
    line_arrangement,
    make_tiling,
    tiling_from_json,
)
from .simulate import (
    CornerHit,
    CrossingRecord,
    Escaped,
    Trajectory,
    TrajectoryState,
    make_state,
    state_point,
    step,
    trace,
)

__all__ = [
    "Isometry", "IsometryKind", "Line", "Point2", "Segment",
    "compose_reflections", "CentralZone", "LatticeTiling",
    "LineArrangementTiling", "OnBoundary", "central_zone",
    "concurrent_lines", "line_arrangement", "make_tiling",
    "tiling_from_json", "CornerHit", "CrossingRecord", "Escaped",
    "Trajectory", "TrajectoryState", "make_state", "state_point",
    "step", "trace",
]
