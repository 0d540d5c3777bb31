"""Trajectory iteration: propagate a ray through a tiling, reflecting its
direction across every crossed edge.

A state sits on an edge with an absolute direction of travel; the tile the
ray is about to traverse is stored alongside.  Crossing an edge replaces
the direction by the mirror image of the incoming ray across the edge
line, continued forward into the next tile (for a direction angle d and an
edge of angle a this is 2a - d + pi).  Hitting a vertex terminates the
trajectory: behavior at corners is undefined.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .geom import (
    Line,
    Point2,
    Segment,
    circ_dist,
    norm_direction,
    unit_vector,
)
from .tilings import (
    EPS_CORNER,
    LatticeTiling,
    LineArrangementTiling,
    Tiling,
)

EPS_RAY = 1e-12       # minimum forward ray parameter for the next crossing
EPS_PARALLEL = 1e-12  # direction-parallel-to-edge rejection


class CornerHit(Exception):
    """The trajectory ran into a vertex of the tiling."""


class Escaped(Exception):
    """The ray ahead meets no further edge (unbounded arrangement face)."""


@dataclass(frozen=True)
class TrajectoryState:
    """Canonical state on an edge: position, direction, and the tile the
    ray is entering.

    ``t`` is the position along the edge's canonical orientation: a
    fraction in (0, 1) for lattice tilings, an arc-length line parameter
    for arrangement edges (which may be unbounded)."""

    edge: tuple
    t: float
    dir: float
    side: tuple


@dataclass(frozen=True)
class CrossingRecord:
    state: TrajectoryState
    point: Point2
    index: int


@dataclass
class Trajectory:
    records: list
    termination: str  # "max_steps" | "corner_hit" | "escaped_arrangement"

    def points(self) -> list:
        return [r.point for r in self.records]

    def to_json(self, tiling: Tiling) -> dict:
        return {
            "records": [
                {"edge": tiling.edge_json(r.state.edge), "t": r.state.t,
                 "dir": r.state.dir, "x": r.point.x, "y": r.point.y}
                for r in self.records
            ],
            "termination": self.termination,
        }


# ---------------------------------------------------------------------------
# state construction
# ---------------------------------------------------------------------------

def state_point(tiling: Tiling, state: TrajectoryState) -> Point2:
    if isinstance(tiling, LineArrangementTiling):
        return tiling.edge_line(state.edge).point_at(state.t)
    seg = tiling.edge_segment(state.edge)
    return seg.point_at(state.t)


def _entered_side(tiling: Tiling, edge: tuple, point: Point2, direction: float):
    """The adjacent tile the direction of travel points into."""
    d = unit_vector(direction)
    if isinstance(tiling, LineArrangementTiling):
        i, _k = edge
        line = tiling.lines[i]
        sgn = 1 if line.normal.dot(d) > 0 else -1
        probe = Point2(point.x + 1e-7 * sgn * line.nx,
                       point.y + 1e-7 * sgn * line.ny)
        return tiling.sign_vector(probe)
    seg = tiling.edge_segment(edge)
    e = seg.b - seg.a
    s = e.cross(d)
    for tile in tiling.edge_tiles(edge):
        verts = tiling.tile_vertices(tile)
        cx = sum(p.x for p in verts) / len(verts)
        cy = sum(p.y for p in verts) / len(verts)
        if e.cross(Point2(cx, cy) - seg.a) * s > 0:
            return tile
    raise ValueError("direction does not enter either adjacent tile")


def make_state(tiling: Tiling, edge: Optional[tuple] = None,
               t: Optional[float] = None, point: Optional[Point2] = None,
               direction: float = 0.0) -> TrajectoryState:
    """Build a validated state from (edge, t) or from a point on an edge.

    Rejects positions within EPS_CORNER of a vertex and directions
    parallel to the edge within EPS_PARALLEL.
    """
    direction = norm_direction(direction)
    if isinstance(tiling, LineArrangementTiling):
        if edge is None:
            if point is None:
                raise ValueError("need an edge or a point")
            best = None
            for i, line in enumerate(tiling.lines):
                d = abs(line.signed_distance(point))
                if best is None or d < best[1]:
                    best = (i, d)
            i, d = best
            if d > 1e-7:
                raise ValueError("point does not lie on any arrangement line")
            t = tiling.lines[i].param_of(point)
            edge = (i, tiling.interval_of(i, t))
        i, _k = edge
        line = tiling.lines[i]
        if t is None:
            raise ValueError("need t for an arrangement edge")
        lo, hi = tiling.interval_range(*edge)
        if t - lo < EPS_CORNER or hi - t < EPS_CORNER:
            raise CornerHit("state sits at an arrangement vertex")
        p = line.point_at(t)
        if abs(unit_vector(direction).cross(line.direction)) < EPS_PARALLEL:
            raise ValueError("direction is parallel to the starting edge")
        side = _entered_side(tiling, edge, p, direction)
        return TrajectoryState(edge, t, direction, side)

    assert isinstance(tiling, LatticeTiling)
    if edge is None:
        if point is None:
            raise ValueError("need an edge or a point")
        edge, t = _find_lattice_edge(tiling, point)
    seg = tiling.edge_segment(edge)
    if t is None:
        raise ValueError("need t in (0, 1) for a lattice edge")
    p = seg.point_at(t)
    if p.dist(seg.a) < EPS_CORNER or p.dist(seg.b) < EPS_CORNER:
        raise CornerHit("state sits at a tiling vertex")
    if abs(unit_vector(direction).cross((seg.b - seg.a).unit())) < EPS_PARALLEL:
        raise ValueError("direction is parallel to the starting edge")
    side = _entered_side(tiling, edge, p, direction)
    return TrajectoryState(edge, float(t), direction, side)


def _find_lattice_edge(tiling: LatticeTiling, point: Point2):
    s, t = tiling._frac(point)
    ci, cj = math.floor(s), math.floor(t)
    best = None
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            for slot in range(tiling.slot_count):
                eref = (ci + di, cj + dj, slot)
                seg = tiling.edge_segment(eref)
                u = seg.param_of(point)
                if u < -1e-9 or u > 1 + 1e-9:
                    continue
                d = point.dist(seg.point_at(max(0.0, min(1.0, u))))
                if best is None or d < best[0]:
                    best = (d, eref, u)
    if best is None or best[0] > 1e-7:
        raise ValueError("point does not lie on a tiling edge")
    return best[1], best[2]


# ---------------------------------------------------------------------------
# stepping
# ---------------------------------------------------------------------------

def crossed_direction(direction: float, line: Line) -> float:
    """Direction after crossing the line: the incoming ray's mirror image,
    traversed onward into the next tile."""
    return norm_direction(line.reflect_direction(direction) + math.pi)


def reversed_state(tiling: Tiling, state: TrajectoryState) -> TrajectoryState:
    """The same crossing traversed backward in time.

    States store the post-crossing direction, so reversal both flips the
    sense of travel and undoes the crossing reflection: the reversed
    direction is the mirror of the stored one across the edge line.
    """
    line = tiling.edge_line(state.edge)
    return make_state(tiling, edge=state.edge, t=state.t,
                      direction=line.reflect_direction(state.dir))


def step(tiling: Tiling, state: TrajectoryState) -> TrajectoryState:
    """Advance one crossing.  Raises CornerHit or Escaped."""
    p = state_point(tiling, state)
    if isinstance(tiling, LineArrangementTiling):
        return _step_arrangement(tiling, state, p)
    return _step_lattice(tiling, state, p)


def _step_lattice(tiling: LatticeTiling, state: TrajectoryState,
                  p: Point2) -> TrajectoryState:
    # Work in the frame of the tile's cell: coordinates stay O(1) however
    # far the trajectory wanders, so roundoff does not grow with distance.
    i, j, slot = state.edge
    ti, tj, kind = state.side
    u, v = tiling.u, tiling.v
    ox = (i - ti) * u.x + (j - tj) * v.x
    oy = (i - ti) * u.y + (j - tj) * v.y
    a, b = tiling.slots[slot]
    px = a.x + ox + state.t * (b.x - a.x)
    py = a.y + oy + state.t * (b.y - a.y)
    dx, dy = math.cos(state.dir), math.sin(state.dir)
    entry = (slot, i - ti, j - tj)
    best = None
    for ax, ay, bx, by, slot2, di, dj in tiling.kind_boundary(kind):
        if (slot2, di, dj) == entry:
            continue
        ex, ey = bx - ax, by - ay
        det = dx * ey - dy * ex
        if abs(det) < 1e-14:
            continue
        qx, qy = ax - px, ay - py
        s = (qx * ey - qy * ex) / det
        w = (qx * dy - qy * dx) / det
        if s <= EPS_RAY or w < -1e-9 or w > 1 + 1e-9:
            continue
        if best is None or s < best[0]:
            best = (s, slot2, di, dj, ax, ay, bx, by)
    if best is None:
        raise CornerHit("no exit edge found; ray leaves through a vertex")
    s, slot2, di, dj, ax, ay, bx, by = best
    qx, qy = px + s * dx, py + s * dy
    elen2 = (bx - ax) ** 2 + (by - ay) ** 2
    t_new = ((qx - ax) * (bx - ax) + (qy - ay) * (by - ay)) / elen2
    elen = math.sqrt(elen2)
    if t_new * elen < EPS_CORNER or (1.0 - t_new) * elen < EPS_CORNER:
        raise CornerHit("crossing lands on a vertex")
    edge_angle = math.atan2(by - ay, bx - ax)
    new_dir = norm_direction(2.0 * edge_angle - state.dir + math.pi)
    new_edge = (ti + di, tj + dj, slot2)
    tiles = tiling.edge_tiles(new_edge)
    new_side = tiles[0] if tiles[1] == state.side else tiles[1]
    if new_side == state.side:  # pragma: no cover
        raise RuntimeError("exit edge does not border the current tile")
    return TrajectoryState(new_edge, t_new, new_dir, new_side)


def _step_arrangement(tiling: LineArrangementTiling, state: TrajectoryState,
                      p: Point2) -> TrajectoryState:
    d = unit_vector(state.dir)
    cur = state.edge[0]
    best = None
    for i, line in enumerate(tiling.lines):
        if i == cur:
            continue
        denom = line.normal.dot(d)
        if abs(denom) < 1e-14:
            continue
        s = -line.signed_distance(p) / denom
        if s <= EPS_RAY:
            continue
        if best is None or s < best[0]:
            best = (s, i)
    if best is None:
        raise Escaped("ray ahead crosses no further line")
    s, i = best
    q = Point2(p.x + s * d.x, p.y + s * d.y)
    line = tiling.lines[i]
    t_new = line.param_of(q)
    for cut in tiling.cuts[i]:
        if abs(t_new - cut) < EPS_CORNER:
            raise CornerHit("crossing lands on a line intersection")
    k = tiling.interval_of(i, t_new)
    new_dir = crossed_direction(state.dir, line)
    side = list(state.side)
    side[i] = -side[i]
    return TrajectoryState((i, k), t_new, new_dir, tuple(side))


# -- compensated direction tracking -----------------------------------------
#
# A crossing maps the direction to (2*psi + pi) - d for the crossed edge's
# angle psi.  In plain doubles the per-cycle rounding of those constants
# biases the direction linearly in the step count, and the position
# integrates that drift to an O(steps^2 * eps) error.  Tracking the
# direction as a double-double kills the bias; positions then stay
# accurate to ~1e-12 over 1e5 steps.

_TWO_PI_HI = 2.0 * math.pi
_TWO_PI_LO = 2.4492935982947064e-16  # 2*pi - float(2*pi)


def _two_sum(a: float, b: float):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _dd_add(ah, al, bh, bl):
    s, e = _two_sum(ah, bh)
    e += al + bl
    hi, lo = _two_sum(s, e)
    return hi, lo


def _dd_norm_direction(hi, lo):
    while hi >= _TWO_PI_HI:
        hi, lo = _dd_add(hi, lo, -_TWO_PI_HI, -_TWO_PI_LO)
    while hi < 0.0:
        hi, lo = _dd_add(hi, lo, _TWO_PI_HI, _TWO_PI_LO)
    return hi, lo


class _DirTracker:
    """Double-double direction refinement keyed on the crossed edge."""

    def __init__(self, tiling: Tiling, d0: float):
        self.hi, self.lo = d0, 0.0
        self._consts: dict = {}
        self._tiling = tiling

    def _const(self, key, psi: float):
        if key not in self._consts:
            hi, lo = _two_sum(2.0 * psi, math.pi)
            self._consts[key] = (hi, lo)
        return self._consts[key]

    def crossed(self, state: TrajectoryState) -> float:
        tiling = self._tiling
        if isinstance(tiling, LineArrangementTiling):
            key = state.edge[0]
            psi = tiling.lines[key].angle
        else:
            key = state.edge[2]
            a, b = tiling.slots[key]
            psi = math.atan2(b.y - a.y, b.x - a.x)
        ch, cl = self._const(key, psi)
        hi, lo = _dd_add(ch, cl, -self.hi, -self.lo)
        self.hi, self.lo = _dd_norm_direction(hi, lo)
        return self.hi


def trace(tiling: Tiling, start: TrajectoryState, max_steps: int) -> Trajectory:
    """Iterate ``step`` and record every crossing, the start included."""
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    records = [CrossingRecord(start, state_point(tiling, start), 0)]
    state = start
    tracker = _DirTracker(tiling, start.dir)
    termination = "max_steps"
    for k in range(1, max_steps + 1):
        try:
            state = step(tiling, state)
        except CornerHit:
            termination = "corner_hit"
            break
        except Escaped:
            termination = "escaped_arrangement"
            break
        refined = tracker.crossed(state)
        if refined != state.dir:
            state = TrajectoryState(state.edge, state.t, refined, state.side)
        records.append(CrossingRecord(state, state_point(tiling, state), k))
    return Trajectory(records, termination)


# ---------------------------------------------------------------------------
# crossing-angle conventions
# ---------------------------------------------------------------------------

def _ray_angle(a: Point2, b: Point2) -> float:
    """Unsigned angle between two direction vectors, in [0, pi]."""
    na, nb = a.norm(), b.norm()
    c = max(-1.0, min(1.0, a.dot(b) / (na * nb)))
    return math.acos(c)


def zone_angles(tiling: LineArrangementTiling, traj: Trajectory) -> list:
    """Crossing angles measured toward the next crossed line's intersection
    (the central-zone side for trajectories circling the zone).

    Entry i is the angle at crossing i between the outgoing segment and
    the ray toward the intersection of the lines crossed at i and i+1;
    None where consecutive crossings share a line or no successor exists.
    """
    out = []
    recs = traj.records
    for i in range(len(recs) - 1):
        li = recs[i].state.edge[0]
        lj = recs[i + 1].state.edge[0]
        if li == lj:
            out.append(None)
            continue
        v = tiling.lines[li].intersect(tiling.lines[lj])
        if v is None:
            out.append(None)
            continue
        p, q = recs[i].point, recs[i + 1].point
        out.append(_ray_angle(q - p, v - p))
    out.append(None)
    return out


@dataclass(frozen=True)
class PassageAngles:
    """Cut-corner data for one crossing of a lattice tiling.

    ``x`` is the distance from the crossing point to the vertex its
    companion passage cuts off.  ``alpha`` is the angle between the
    crossing's onward direction of travel and the edge toward that
    vertex; ``seg_alpha`` uses the companion segment's direction instead
    (the exterior-angle form; equal to alpha at a passage entry and its
    supplement at a passage exit)."""

    x: float
    alpha: float
    seg_alpha: float
    vertex: Point2


def _shared_vertex(tiling: LatticeTiling, e1: tuple, e2: tuple) -> Optional[Point2]:
    s1, s2 = tiling.edge_segment(e1), tiling.edge_segment(e2)
    for p in (s1.a, s1.b):
        for q in (s2.a, s2.b):
            if p.dist(q) < 1e-9:
                return p
    return None


def passage_angles(tiling: LatticeTiling, traj: Trajectory,
                   tile_filter=None) -> list:
    """Per-crossing (x, alpha) values for a lattice trajectory.

    The companion passage for crossing i is the adjacent segment that
    traverses a tile accepted by ``tile_filter`` (default: tiles with
    triangular boundary); the cut vertex is the one shared by that
    passage's entry and exit edges.  Entries are None where no accepted
    passage touches the crossing or the passage does not cut a corner.
    """
    recs = traj.records
    if tile_filter is None:
        def tile_filter(tile):
            return len(tiling.kinds[tile[2]]) == 3

    seg_ok = []
    for i in range(len(recs) - 1):
        seg_ok.append(tile_filter(recs[i].state.side))

    out = []
    for i in range(len(recs)):
        datum = None
        for j in (i, i - 1):
            if datum is not None:
                break
            if j < 0 or j >= len(seg_ok) or not seg_ok[j]:
                continue
            e_in = recs[j].state.edge
            e_out = recs[j + 1].state.edge
            v = _shared_vertex(tiling, e_in, e_out)
            if v is None:
                continue
            p = recs[i].point
            seg_dir = recs[j + 1].point - recs[j].point
            if v.dist(p) < 1e-12:
                continue
            onward = unit_vector(recs[i].state.dir)
            datum = PassageAngles(v.dist(p), _ray_angle(onward, v - p),
                                  _ray_angle(seg_dir, v - p), v)
        out.append(datum)
    return out
