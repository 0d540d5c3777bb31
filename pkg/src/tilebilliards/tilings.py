"""Tilings of the plane by lines: lattice tilings and finite arrangements.

Tilings are implicit: faces are materialized on demand from coordinate
formulas, never stored as explicit lists, so trajectories can wander
arbitrarily far.  Two families are supported:

* lattice tilings built from a unit cell (two translation generators plus
  a set of convex polygons that tile the fundamental domain), and
* finite simple line arrangements, whose faces are encoded by sign
  vectors.

Tile and edge references are plain tuples.  For lattice tilings an edge is
``(i, j, slot)`` (cell coordinates plus an edge slot of the unit cell) and
a tile is ``(i, j, kind)``.  For arrangements an edge is ``(line_index,
interval_index)`` and a tile is the tuple of half-plane signs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .geom import (
    Line,
    Point2,
    Ray,
    Segment,
    axis_dist,
    convex_hull,
    norm_axis,
    unit_vector,
)

EPS_CORNER = 1e-9   # proximity to a vertex that makes behavior undefined
_KEY_DECIMALS = 9   # rounding used to key edge geometry during construction

SQRT3 = math.sqrt(3.0)


class OnBoundary(Exception):
    """Point lies within EPS_CORNER of a tiling edge."""


def _key_point(p: Point2) -> tuple:
    return (round(p.x, _KEY_DECIMALS), round(p.y, _KEY_DECIMALS))


def _snap_floor(x: float) -> int:
    r = round(x)
    if abs(x - r) < 1e-9:
        x = r
    return math.floor(x)


@dataclass(frozen=True)
class BoundaryEdge:
    """One edge of a tile boundary, in CCW traversal order."""

    edge: tuple
    geom: object  # Segment, or Ray for unbounded arrangement faces


class Tiling:
    """Common interface; see LatticeTiling and LineArrangementTiling."""

    variant: str

    def to_json(self) -> dict:
        raise NotImplementedError

    def locate(self, p: Point2) -> tuple:
        raise NotImplementedError

    def tile_boundary(self, tile: tuple) -> list:
        raise NotImplementedError

    def edge_segment(self, edge: tuple):
        raise NotImplementedError

    def edge_line(self, edge: tuple) -> Line:
        raise NotImplementedError

    def edge_tiles(self, edge: tuple) -> tuple:
        raise NotImplementedError

    def translation_lattice(self) -> Optional[tuple]:
        return None

    def reduce_edge(self, edge: tuple) -> tuple:
        """Return (edge modulo the translation lattice, cell coordinates)."""
        return edge, (0, 0)

    def tile_color(self, tile: tuple) -> Optional[int]:
        """Two-coloring class of a tile, or None if not two-colorable."""
        return None

    def edge_json(self, edge: tuple) -> list:
        return list(edge)

    def edge_from_json(self, data) -> tuple:
        return tuple(int(v) for v in data)


# ---------------------------------------------------------------------------
# lattice tilings
# ---------------------------------------------------------------------------

class LatticeTiling(Tiling):
    """A periodic tiling described by a unit cell.

    ``polygons`` are convex CCW vertex loops that tile the plane under the
    lattice generated by ``u`` and ``v``.  Edge slots, adjacency and the
    two-coloring are derived here and validated (every edge must be shared
    by exactly two polygons modulo the lattice, and the polygon areas must
    sum to the cell area).
    """

    def __init__(self, variant: str, u: Point2, v: Point2,
                 polygons: Sequence[Sequence[Point2]],
                 params: Optional[dict] = None,
                 slot_names: Optional[dict] = None):
        self.variant = variant
        self.u = u
        self.v = v
        self.params = dict(params or {})
        self._det = u.x * v.y - u.y * v.x
        if abs(self._det) < 1e-12:
            raise ValueError("degenerate lattice generators")

        area = 0.0
        for poly in polygons:
            a = _polygon_area(poly)
            if a <= 0.0:
                raise ValueError("unit-cell polygons must be CCW")
            area += a
        if abs(area - abs(self._det)) > 1e-9:
            raise ValueError("unit-cell polygons do not fill the cell")

        self.kinds = [tuple(poly) for poly in polygons]
        self._build_slots()
        self._colors = self._solve_two_coloring()
        self.slot_names = dict(slot_names or {})
        self._kind_boundary_cache: dict = {}

    # -- construction -------------------------------------------------------

    def _frac(self, p: Point2) -> tuple:
        s = (p.x * self.v.y - p.y * self.v.x) / self._det
        t = (self.u.x * p.y - self.u.y * p.x) / self._det
        return s, t

    def _cell_origin(self, i: int, j: int) -> Point2:
        return Point2(i * self.u.x + j * self.v.x, i * self.u.y + j * self.v.y)

    def _reduce_edge_geom(self, a: Point2, b: Point2):
        m = Point2(0.5 * (a.x + b.x), 0.5 * (a.y + b.y))
        s, t = self._frac(m)
        di, dj = _snap_floor(s), _snap_floor(t)
        off = self._cell_origin(di, dj)
        return (a - off, b - off), (di, dj)

    def _build_slots(self) -> None:
        slot_index: dict = {}
        slots: list = []
        incidence: list = []
        kind_edges: list = []
        for kind, poly in enumerate(self.kinds):
            edges = []
            n = len(poly)
            for k in range(n):
                a, b = poly[k], poly[(k + 1) % n]
                (ra, rb), (di, dj) = self._reduce_edge_geom(a, b)
                ka, kb = _key_point(ra), _key_point(rb)
                if kb < ka:
                    key = (kb, ka)
                    canon = (rb, ra)
                else:
                    key = (ka, kb)
                    canon = (ra, rb)
                if key not in slot_index:
                    slot_index[key] = len(slots)
                    slots.append(canon)
                    incidence.append([])
                s = slot_index[key]
                incidence[s].append((kind, -di, -dj))
                edges.append((s, di, dj))
            kind_edges.append(tuple(edges))
        for s, inc in enumerate(incidence):
            if len(inc) != 2:
                raise ValueError(
                    f"edge slot {s} shared by {len(inc)} tiles; cell is not edge-to-edge")
        self.slots = slots                # slot -> (a, b) canonical, base cell
        self.slot_count = len(slots)
        self.incidence = [tuple(inc) for inc in incidence]
        self.kind_edges = kind_edges      # kind -> ((slot, di, dj), ...) CCW

    def _solve_two_coloring(self):
        # color(i, j, kind) = a*i + b*j + c[kind] mod 2, constrained so the
        # two tiles of every edge differ
        for a in (0, 1):
            for b in (0, 1):
                c: dict = {0: 0}
                ok = True
                changed = True
                while changed and ok:
                    changed = False
                    for inc in self.incidence:
                        (k1, i1, j1), (k2, i2, j2) = inc
                        r = (a * (i1 - i2) + b * (j1 - j2) + 1) % 2
                        if k1 in c and k2 in c:
                            if (c[k1] - c[k2]) % 2 != r:
                                ok = False
                                break
                        elif k1 in c:
                            c[k2] = (c[k1] - r) % 2
                            changed = True
                        elif k2 in c:
                            c[k1] = (c[k2] + r) % 2
                            changed = True
                if ok and len(c) == len(self.kinds):
                    return (a, b, c)
        return None

    # -- queries -------------------------------------------------------------

    def to_json(self) -> dict:
        return {"variant": self.variant, **self.params}

    def translation_lattice(self):
        return (self.u, self.v)

    def tile_vertices(self, tile: tuple) -> list:
        i, j, kind = tile
        off = self._cell_origin(i, j)
        return [p + off for p in self.kinds[kind]]

    def tile_boundary(self, tile: tuple) -> list:
        i, j, kind = tile
        off = self._cell_origin(i, j)
        poly = self.kinds[kind]
        out = []
        n = len(poly)
        for k, (slot, di, dj) in enumerate(self.kind_edges[kind]):
            a = poly[k] + off
            b = poly[(k + 1) % n] + off
            out.append(BoundaryEdge((i + di, j + dj, slot), Segment(a, b)))
        return out

    def edge_segment(self, edge: tuple) -> Segment:
        i, j, slot = edge
        off = self._cell_origin(i, j)
        a, b = self.slots[slot]
        return Segment(a + off, b + off)

    def kind_boundary(self, kind: int) -> tuple:
        """Boundary of a tile kind in its cell's frame, as flat tuples
        (ax, ay, bx, by, slot, di, dj) with canonical slot orientation."""
        if kind not in self._kind_boundary_cache:
            out = []
            for slot, di, dj in self.kind_edges[kind]:
                a, b = self.slots[slot]
                ox = di * self.u.x + dj * self.v.x
                oy = di * self.u.y + dj * self.v.y
                out.append((a.x + ox, a.y + oy, b.x + ox, b.y + oy,
                            slot, di, dj))
            self._kind_boundary_cache[kind] = tuple(out)
        return self._kind_boundary_cache[kind]

    def edge_line(self, edge: tuple) -> Line:
        seg = self.edge_segment(edge)
        return Line.from_points(seg.a, seg.b)

    def edge_tiles(self, edge: tuple) -> tuple:
        i, j, slot = edge
        return tuple((i + di, j + dj, k) for (k, di, dj) in self.incidence[slot])

    def locate(self, p: Point2) -> tuple:
        s, t = self._frac(p)
        ci, cj = math.floor(s), math.floor(t)
        near_boundary = False
        for di in (-1, 0, 1):
            for dj in (-1, 0, 1):
                i, j = ci + di, cj + dj
                off = self._cell_origin(i, j)
                for kind, poly in enumerate(self.kinds):
                    d = _min_inward_distance(p, poly, off)
                    if d > EPS_CORNER:
                        return (i, j, kind)
                    if d > -EPS_CORNER:
                        near_boundary = True
        if near_boundary:
            raise OnBoundary(f"point ({p.x}, {p.y}) lies on a tiling edge")
        raise RuntimeError("point location failed")  # pragma: no cover

    def reduce_edge(self, edge: tuple) -> tuple:
        i, j, slot = edge
        return (0, 0, slot), (i, j)

    def lattice_vector(self, cells: tuple) -> Point2:
        i, j = cells
        return Point2(i * self.u.x + j * self.v.x, i * self.u.y + j * self.v.y)

    def tile_color(self, tile: tuple) -> Optional[int]:
        if self._colors is None:
            return None
        a, b, c = self._colors
        i, j, kind = tile
        return (a * i + b * j + c[kind]) % 2

    def slot_by_name(self, name: str) -> int:
        if name in self.slot_names:
            return self.slot_names[name]
        raise KeyError(f"tiling {self.variant!r} has no edge slot named {name!r}")


def _polygon_area(poly: Sequence[Point2]) -> float:
    s = 0.0
    n = len(poly)
    for k in range(n):
        a, b = poly[k], poly[(k + 1) % n]
        s += a.x * b.y - a.y * b.x
    return 0.5 * s


def _min_inward_distance(p: Point2, poly: Sequence[Point2], off: Point2) -> float:
    best = math.inf
    n = len(poly)
    px, py = p.x - off.x, p.y - off.y
    for k in range(n):
        a = poly[k]
        b = poly[(k + 1) % n]
        ex, ey = b.x - a.x, b.y - a.y
        ln = math.hypot(ex, ey)
        d = (ex * (py - a.y) - ey * (px - a.x)) / ln
        if d < best:
            best = d
    return best


# ---------------------------------------------------------------------------
# concrete lattice builders
# ---------------------------------------------------------------------------

def _square() -> LatticeTiling:
    sq = [Point2(0, 0), Point2(1, 0), Point2(1, 1), Point2(0, 1)]
    t = LatticeTiling("square", Point2(1, 0), Point2(0, 1), [sq])
    t.slot_names = _named_slots_by_direction(t, {"bottom": 0.0, "left": math.pi / 2})
    return t


def _triangle(alpha: float, beta: float, variant: str = "triangle",
              params: Optional[dict] = None) -> LatticeTiling:
    """Grid of parallelograms with parallel diagonals: base edges horizontal
    with unit length, third vertex set by the two base angles."""
    if not (alpha > 0 and beta > 0 and alpha + beta < math.pi):
        raise ValueError("triangle angles must be positive with alpha+beta < pi")
    side = math.sin(beta) / math.sin(alpha + beta)
    apex = Point2(side * math.cos(alpha), side * math.sin(alpha))
    u = Point2(1.0, 0.0)
    v = apex
    lower = [Point2(0, 0), Point2(1, 0), apex]
    upper = [Point2(1, 0), u + v, apex]
    t = LatticeTiling(variant, u, v, [lower, upper],
                      params=params if params is not None else
                      {"alpha": alpha, "beta": beta})
    t.slot_names = _named_slots_by_direction(
        t, {"base": 0.0, "left": apex.angle(), "diag": (apex - u).angle()})
    return t


def _right_triangle(alpha: float) -> LatticeTiling:
    """Axis-parallel legs, hypotenuses on the falling diagonals, unit
    hypotenuse.  ``alpha`` is the angle opposite the horizontal leg."""
    if not 0.0 < alpha < math.pi / 2:
        raise ValueError("right-triangle small angle must lie in (0, pi/2)")
    w, h = math.sin(alpha), math.cos(alpha)
    u, v = Point2(w, 0.0), Point2(0.0, h)
    lower = [Point2(0, 0), Point2(w, 0), Point2(0, h)]
    upper = [Point2(w, 0), Point2(w, h), Point2(0, h)]
    t = LatticeTiling("right_triangle", u, v, [lower, upper],
                      params={"alpha": alpha})
    t.slot_names = _named_slots_by_direction(
        t, {"base": 0.0, "left": math.pi / 2,
            "hyp": (Point2(w, 0) - Point2(0, h)).angle()})
    return t


def _hexagon() -> LatticeTiling:
    """Regular hexagon tiling with unit edge (circumradius 1, vertex toward
    30 degrees so the edge midpoints face the lattice directions)."""
    u = Point2(SQRT3, 0.0)
    v = Point2(SQRT3 / 2.0, 1.5)
    verts = [unit_vector(math.pi / 6.0 + k * math.pi / 3.0) for k in range(6)]
    return LatticeTiling("regular_hexagon", u, v, [verts])


def _kaleidoscope() -> LatticeTiling:
    """The reflection-symmetric 30-60-90 tiling: unit equilateral lattice
    with every triangle cut by its three altitudes."""
    u = Point2(1.0, 0.0)
    v = Point2(0.5, SQRT3 / 2.0)
    polys = []
    for base in ([Point2(0, 0), Point2(1, 0), v],
                 [Point2(1, 0), u + v, v]):
        g = Point2((base[0].x + base[1].x + base[2].x) / 3.0,
                   (base[0].y + base[1].y + base[2].y) / 3.0)
        for k in range(3):
            a, b = base[k], base[(k + 1) % 3]
            m = Segment(a, b).midpoint
            polys.append([a, m, g])
            polys.append([m, b, g])
    return LatticeTiling("kaleidoscope_30_60_90", u, v, polys)


def _trihexagonal() -> LatticeTiling:
    """Trihexagonal tiling with unit edges: one hexagon and two triangles
    per cell, generators (2, 0) and (1, sqrt(3))."""
    u = Point2(2.0, 0.0)
    v = Point2(1.0, SQRT3)
    hexa = [unit_vector(k * math.pi / 3.0) for k in range(6)]
    down = [Point2(1.0, 0.0), Point2(1.5, SQRT3 / 2), Point2(0.5, SQRT3 / 2)]
    up = [Point2(1.0, 0.0), Point2(0.5, -SQRT3 / 2), Point2(1.5, -SQRT3 / 2)]
    return LatticeTiling("trihexagonal", u, v, [hexa, down, up])


def _named_slots_by_direction(t: LatticeTiling, names: dict) -> dict:
    out = {}
    for name, ang in names.items():
        want = norm_axis(ang)
        for s, (a, b) in enumerate(t.slots):
            if abs(norm_axis((b - a).angle()) - want) < 1e-9:
                out[name] = s
                break
    return out


# ---------------------------------------------------------------------------
# line arrangements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CentralZone:
    """Convex hull of the pairwise intersection points of an arrangement."""

    vertices: tuple  # CCW Point2 tuple; a single point for concurrent lines

    @property
    def centroid(self) -> Point2:
        n = len(self.vertices)
        return Point2(sum(p.x for p in self.vertices) / n,
                      sum(p.y for p in self.vertices) / n)

    @property
    def radius(self) -> float:
        c = self.centroid
        return max((p.dist(c) for p in self.vertices), default=0.0)

    def contains(self, p: Point2, pad: float = 0.0) -> bool:
        verts = self.vertices
        if len(verts) < 3:
            if len(verts) == 1:
                return p.dist(verts[0]) <= pad
            seg = Segment(verts[0], verts[1])
            u = max(0.0, min(1.0, seg.param_of(p)))
            return p.dist(seg.point_at(u)) <= pad
        n = len(verts)
        for i in range(n):
            a, b = verts[i], verts[(i + 1) % n]
            e = b - a
            if e.cross(p - a) < -pad * e.norm():
                return False
        return True


def central_zone(lines: Sequence[Line]) -> CentralZone:
    """Hull of all pairwise intersections; raises on parallel lines."""
    if len(lines) < 2:
        raise ValueError("need at least two lines")
    pts = []
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            q = lines[i].intersect(lines[j])
            if q is None:
                raise ValueError("parallel lines have no central zone")
            pts.append(q)
    return CentralZone(tuple(convex_hull(pts)))


class LineArrangementTiling(Tiling):
    """A finite arrangement of pairwise non-parallel lines.

    Lines are indexed per the angle-ordering convention: line 0 is the
    first input line, the rest follow by increasing CCW angle from it.
    ``alphas[i]`` is the CCW angle from line i to line i+1 (indices mod n);
    the alphas always sum to pi.
    """

    def __init__(self, lines: Sequence[Line], variant: str = "line_arrangement",
                 params: Optional[dict] = None, allow_concurrent: bool = False):
        if len(lines) < 2:
            raise ValueError("an arrangement needs at least two lines")
        base = lines[0].angle
        rest = sorted(lines[1:], key=lambda l: norm_axis(l.angle - base))
        self.lines = [lines[0]] + rest
        for i in range(len(self.lines)):
            for j in range(i + 1, len(self.lines)):
                if axis_dist_lines(self.lines[i], self.lines[j]) < 1e-12:
                    raise ValueError("parallel lines are not supported")
        self.n = len(self.lines)
        self.alphas = [norm_axis(self.lines[(i + 1) % self.n].angle
                                 - self.lines[i].angle)
                       for i in range(self.n)]
        # wrap-around entry covers the remainder to pi exactly
        self.alphas[-1] = math.pi - sum(self.alphas[:-1])
        self.variant = variant
        self.params = dict(params or {})
        self.zone = central_zone(self.lines)
        if not allow_concurrent:
            self._check_simple()
        self._build_intervals()

    def _check_simple(self) -> None:
        pts = []
        for i in range(self.n):
            for j in range(i + 1, self.n):
                pts.append(self.lines[i].intersect(self.lines[j]))
        for k, p in enumerate(pts):
            hits = sum(1 for line in self.lines if line.contains(p, 1e-9))
            if hits > 2:
                raise ValueError("arrangement is not simple: three lines meet "
                                 f"near ({p.x:.6g}, {p.y:.6g})")

    def _build_intervals(self) -> None:
        self.cuts = []
        for i, line in enumerate(self.lines):
            params = []
            for j, other in enumerate(self.lines):
                if j == i:
                    continue
                q = line.intersect(other)
                params.append(line.param_of(q))
            params.sort()
            merged = []
            for t in params:
                if not merged or t - merged[-1] > 1e-9:
                    merged.append(t)
            self.cuts.append(merged)

    # -- queries -------------------------------------------------------------

    def to_json(self) -> dict:
        if self.variant == "concurrent_lines":
            return {"variant": "concurrent_lines", **self.params}
        return {"variant": "line_arrangement",
                "lines": [{"angle": l.angle,
                           "point": list(l.project(Point2(0, 0)).as_tuple())}
                          for l in self.lines]}

    def sign_vector(self, p: Point2) -> tuple:
        out = []
        for line in self.lines:
            d = line.signed_distance(p)
            out.append(1 if d >= 0 else -1)
        return tuple(out)

    def locate(self, p: Point2) -> tuple:
        out = []
        for line in self.lines:
            d = line.signed_distance(p)
            if abs(d) < EPS_CORNER:
                raise OnBoundary(f"point ({p.x}, {p.y}) lies on line")
            out.append(1 if d > 0 else -1)
        return tuple(out)

    def interval_of(self, i: int, t: float) -> int:
        cuts = self.cuts[i]
        lo = 0
        while lo < len(cuts) and t > cuts[lo]:
            lo += 1
        return lo

    def interval_range(self, i: int, k: int) -> tuple:
        cuts = self.cuts[i]
        lo = -math.inf if k == 0 else cuts[k - 1]
        hi = math.inf if k >= len(cuts) else cuts[k]
        return lo, hi

    def edge_segment(self, edge: tuple):
        i, k = edge
        lo, hi = self.interval_range(i, k)
        line = self.lines[i]
        if math.isinf(lo) and math.isinf(hi):  # pragma: no cover
            raise ValueError("whole-line edge has no segment form")
        if math.isinf(hi):
            return Ray(line.point_at(lo), line.direction)
        if math.isinf(lo):
            return Ray(line.point_at(hi), -1.0 * line.direction)
        return Segment(line.point_at(lo), line.point_at(hi))

    def edge_line(self, edge: tuple) -> Line:
        return self.lines[edge[0]]

    def edge_tiles(self, edge: tuple) -> tuple:
        i, k = edge
        lo, hi = self.interval_range(i, k)
        mid = 0.5 * (max(lo, -1e9) + min(hi, 1e9))
        p = self.lines[i].point_at(mid)
        n = self.lines[i].normal
        eps = 1e-6
        a = self.sign_vector(Point2(p.x + eps * n.x, p.y + eps * n.y))
        b = self.sign_vector(Point2(p.x - eps * n.x, p.y - eps * n.y))
        return (a, b)

    def tile_boundary(self, tile: tuple) -> list:
        out = []
        for i, line in enumerate(self.lines):
            lo, hi = -math.inf, math.inf
            empty = False
            d = line.direction
            b0 = line.point_at(0.0)
            for j, other in enumerate(self.lines):
                if j == i:
                    continue
                a = tile[j] * (other.normal.dot(d))
                c = tile[j] * other.signed_distance(b0)
                if abs(a) < 1e-14:
                    if c < 0:
                        empty = True
                        break
                    continue
                t = -c / a
                if a > 0:
                    lo = max(lo, t)
                else:
                    hi = min(hi, t)
            if empty or hi - lo <= 1e-9:
                continue
            mid = 0.5 * (max(lo, -1e9) + min(hi, 1e9))
            k = self.interval_of(i, mid)
            if math.isinf(hi):
                geom = Ray(line.point_at(lo), d)
            elif math.isinf(lo):
                geom = Ray(line.point_at(hi), -1.0 * d)
            else:
                geom = Segment(line.point_at(lo), line.point_at(hi))
            out.append((i, k, geom, tile[i]))
        # CCW traversal of a convex face orders edges by outward normal angle
        def outward_angle(item):
            i, _k, _g, s = item
            n = self.lines[i].normal
            return math.atan2(-s * n.y, -s * n.x)
        out.sort(key=outward_angle)
        return [BoundaryEdge((i, k), g) for i, k, g, _s in out]

    def tile_color(self, tile: tuple) -> int:
        return sum(1 for s in tile if s < 0) % 2

    def edge_json(self, edge: tuple) -> list:
        return list(edge)

    def edge_from_json(self, data) -> tuple:
        return tuple(int(v) for v in data)


def axis_dist_lines(a: Line, b: Line) -> float:
    return axis_dist(a.angle, b.angle)


def concurrent_lines(sector_angles: Sequence[float]) -> LineArrangementTiling:
    """Lines through the origin with the given CCW sector angles between
    consecutive lines.  The angles must sum to pi."""
    if len(sector_angles) < 2:
        raise ValueError("need at least two lines")
    if any(a <= 0 for a in sector_angles):
        raise ValueError("sector angles must be positive")
    if abs(sum(sector_angles) - math.pi) > 1e-9:
        raise ValueError("sector angles must sum to pi")
    angs = [0.0]
    for a in sector_angles[:-1]:
        angs.append(angs[-1] + a)
    lines = [Line.from_point_angle(Point2(0.0, 0.0), a) for a in angs]
    return LineArrangementTiling(
        lines, variant="concurrent_lines",
        params={"angles": [float(a) for a in sector_angles]},
        allow_concurrent=True)


def line_arrangement(lines: Sequence[Line]) -> LineArrangementTiling:
    return LineArrangementTiling(lines)


# ---------------------------------------------------------------------------
# spec factory
# ---------------------------------------------------------------------------

def make_tiling(variant: str, **params) -> Tiling:
    if variant == "square":
        return _square()
    if variant == "regular_hexagon":
        return _hexagon()
    if variant == "equilateral_triangle":
        return _triangle(math.pi / 3, math.pi / 3, "equilateral_triangle", {})
    if variant == "kaleidoscope_30_60_90":
        return _kaleidoscope()
    if variant == "trihexagonal":
        return _trihexagonal()
    if variant == "triangle":
        return _triangle(params["alpha"], params["beta"])
    if variant == "isosceles_triangle":
        apex = params["alpha"]
        if not 0.0 < apex < math.pi:
            raise ValueError("vertex angle must lie in (0, pi)")
        base = (math.pi - apex) / 2.0
        return _triangle(base, base, "isosceles_triangle", {"alpha": apex})
    if variant == "right_triangle":
        return _right_triangle(params["alpha"])
    if variant == "concurrent_lines":
        return concurrent_lines(params["angles"])
    if variant == "line_arrangement":
        lines = [Line.from_point_angle(Point2(*spec["point"]), spec["angle"])
                 for spec in params["lines"]]
        return line_arrangement(lines)
    raise ValueError(f"unknown tiling variant {variant!r}")


def tiling_from_json(data: dict) -> Tiling:
    if not isinstance(data, dict) or "variant" not in data:
        raise ValueError("tiling spec must be an object with a 'variant' field")
    params = {k: v for k, v in data.items() if k != "variant"}
    return make_tiling(data["variant"], **params)
