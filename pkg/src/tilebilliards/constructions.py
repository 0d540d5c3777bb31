"""Closed-form start conditions for every explicitly constructible orbit:
line-arrangement cycles, triangle-tiling orbits, right-triangle escapes and
drifts, and the trihexagonal periodic/drift families.

Builders return machine-checkable expected classifications; no builder
asserts its own correctness, so the verification layer owns all tolerance
policy.  Where only an angle is pinned down and the starting position is
free within a feasibility interval, the start is placed at the interval's
midpoint (maximal corner clearance), with the interval found by a grid
scan unless a closed form exists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from .classify import Classification, classify
from .geom import Line, Point2, compose_reflections, norm_axis, norm_direction, unit_vector
from .simulate import CornerHit, TrajectoryState, make_state, trace, zone_angles
from .tilings import (
    LatticeTiling,
    LineArrangementTiling,
    Tiling,
    concurrent_lines,
    make_tiling,
)

SQRT3 = math.sqrt(3.0)


class InfeasibleConstruction(Exception):
    """The requested parameters lie outside the construction's region."""


@dataclass(frozen=True)
class ConstructionResult:
    tiling: Tiling
    start: TrajectoryState
    expected: Classification
    notes: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "tiling": self.tiling.to_json(),
            "start": {"edge": self.tiling.edge_json(self.start.edge),
                      "t": self.start.t, "dir": self.start.dir},
            "expected": self.expected.to_json(),
            "notes": self.notes,
        }


# ---------------------------------------------------------------------------
# line arrangements
# ---------------------------------------------------------------------------

def even_lines_condition(angles) -> bool:
    """Whether the alternating sum of consecutive-line angles vanishes
    (equivalently both alternating sums equal pi/2)."""
    if len(angles) % 2 != 0:
        raise ValueError("needs an even number of angles")
    s = 0.0
    for i, a in enumerate(angles):
        s += a if i % 2 == 0 else -a
    return abs(s) <= 1e-9


def circuit_isometry(tiling: LineArrangementTiling):
    """Line-to-line map of one CCW circuit starting just after line 0:
    reflections across lines 1, ..., n-1, 0 in crossing order."""
    order = list(tiling.lines[1:]) + [tiling.lines[0]]
    return compose_reflections(order)


def _fixed_line_through(tiling: LineArrangementTiling, phi: float,
                        clearance: float, side: int) -> Line:
    """A line of direction phi clearing the central zone on one side."""
    c = tiling.zone.centroid
    through = Line.from_point_angle(c, phi)
    reach = max((abs(through.signed_distance(v)) for v in tiling.zone.vertices),
                default=0.0)
    n = through.normal
    off = side * (reach + clearance)
    return Line.from_point_angle(Point2(c.x + off * n.x, c.y + off * n.y), phi)


def _is_good_circuit(tiling: LineArrangementTiling, st) -> bool:
    from .classify import good_crossing_count
    n = tiling.n
    probe = trace(tiling, st, 2 * n)
    if len(probe.records) < 2 * n + 1:
        return False
    if probe.records[1].state.edge[0] != 1 % n:
        return False
    return good_crossing_count(tiling, probe) >= 2 * n + 1


def _start_on_fixed_line(tiling: LineArrangementTiling, phi_candidates,
                         clearance: float):
    """Start state on line 0 traveling along a candidate orbit line, placed
    far enough out that a full circuit stays good (outside the zone, lines
    crossed in cyclic order, line 1 first).

    The clearance ladder implements the zoom-out argument: far enough from
    the central zone every fixed line of the circuit map gives a good
    trajectory.
    """
    base = max(clearance, 0.1 * (tiling.zone.radius + 1.0))
    for k in range(14):
        c = base * (2.0 ** k)
        for phi in phi_candidates:
            for side in (1, -1):
                L = _fixed_line_through(tiling, phi, c, side)
                p0 = L.intersect(tiling.lines[0])
                if p0 is None:
                    continue
                for direction in (L.angle, L.angle + math.pi):
                    try:
                        st = make_state(tiling, point=p0, direction=direction)
                    except (CornerHit, ValueError):
                        continue
                    if _is_good_circuit(tiling, st):
                        return st
    raise InfeasibleConstruction("no orbit line yields a good circuit")


def odd_lines_periodic(tiling: LineArrangementTiling,
                       clearance: float = 1.0) -> ConstructionResult:
    """Period-2n orbit around the central zone of an odd arrangement.

    The orbit line comes from the fixed-line family of the squared
    circuit map; its angle against line 0 (measured toward the
    intersection with line 1) equals the alternating sum
    alpha_1 + alpha_3 + ... + alpha_{n-2}.
    """
    n = tiling.n
    if n < 3 or n % 2 == 0:
        raise InfeasibleConstruction("needs an odd number of lines, >= 3")
    if abs(sum(tiling.alphas) - math.pi) > 1e-9:
        raise InfeasibleConstruction("consecutive-line angles must sum to pi")
    theta = sum(tiling.alphas[i] for i in range(1, n - 1, 2))
    sq = circuit_isometry(tiling)
    sq = sq @ sq
    kind = sq.classify()
    lam0 = tiling.lines[0].angle
    if kind.kind == "translation":
        candidates = [norm_axis(kind.vector.angle())]
    elif kind.kind == "identity":
        candidates = [norm_axis(lam0 - theta), norm_axis(lam0 + theta)]
    else:  # pragma: no cover - impossible for an odd reflection count
        raise InfeasibleConstruction(f"squared circuit map is a {kind.kind}")
    start = _start_on_fixed_line(tiling, candidates, clearance)
    return ConstructionResult(
        tiling, start, Classification("periodic", period=2 * n),
        notes={"theta": theta, "circuit_map": kind.kind})


def even_lines_periodic(tiling: LineArrangementTiling,
                        clearance: float = 1.0) -> ConstructionResult:
    """Period-2n orbit of an even arrangement satisfying the alternating
    angle condition (every good trajectory closes)."""
    n = tiling.n
    if n < 2 or n % 2 == 1:
        raise InfeasibleConstruction("needs an even number of lines, >= 2")
    if not even_lines_condition(tiling.alphas):
        raise InfeasibleConstruction("alternating angle condition fails")
    # the squared circuit map is the identity: any good line works; probe
    # sector bisectors until one gives a forward circuit
    candidates = []
    acc = tiling.lines[0].angle
    for a in tiling.alphas:
        candidates.append(norm_axis(acc + a / 2.0))
        acc += a
    start = _start_on_fixed_line(tiling, candidates, clearance)
    return ConstructionResult(
        tiling, start, Classification("periodic", period=2 * n), notes={})


def three_lines_periodic(alpha: float, beta: float, gamma: float) -> ConstructionResult:
    """Period-6 orbit around the intersection of three concurrent lines
    with sector angles alpha, beta, gamma."""
    if abs(alpha + beta + gamma - math.pi) > 1e-9:
        raise InfeasibleConstruction("sector angles must sum to pi")
    if min(alpha, beta, gamma) <= 0:
        raise InfeasibleConstruction("sector angles must be positive")
    tiling = concurrent_lines([alpha, beta, gamma])
    res = odd_lines_periodic(tiling)
    return ConstructionResult(tiling, res.start,
                              Classification("periodic", period=6),
                              notes=res.notes)


# ---------------------------------------------------------------------------
# triangle tilings
# ---------------------------------------------------------------------------

def _triangle_edge_dirs(tiling: LatticeTiling):
    u, v = tiling.translation_lattice()
    return {"base": 0.0, "left": v.angle(), "diag": (v - u).angle()}


def triangle_period6(tiling: LatticeTiling, vertex=(0, 0),
                     radius: float = 0.05) -> ConstructionResult:
    """Small period-6 orbit circling a lattice vertex of a triangle tiling.

    The three tiling lines through the vertex form a concurrent
    arrangement; the orbit is its period-2n construction scaled to stay
    within the six incident triangles.
    """
    if len(tiling.kinds) != 2 or len(tiling.kinds[0]) != 3:
        raise InfeasibleConstruction("needs a triangle tiling")
    u, v = tiling.translation_lattice()
    vx = Point2(vertex[0] * u.x + vertex[1] * v.x,
                vertex[0] * u.y + vertex[1] * v.y)
    dirs = sorted(norm_axis(d) for d in _triangle_edge_dirs(tiling).values())
    sectors = [dirs[1] - dirs[0], dirs[2] - dirs[1], math.pi - dirs[2] + dirs[0]]
    local = concurrent_lines(sectors)
    scale = radius * min(u.norm(), v.norm(), (v - u).norm())
    res = odd_lines_periodic(local, clearance=scale)
    # transplant: rotate by dirs[0] and translate to the vertex
    p_local = res.start
    p_world_point = _rotate_about(Point2(0, 0), dirs[0],
                                  _arr_point(local, p_local))
    p_world_point = p_world_point + vx
    d_world = norm_direction(p_local.dir + dirs[0])
    start = make_state(tiling, point=p_world_point, direction=d_world)
    return ConstructionResult(tiling, start,
                              Classification("periodic", period=6),
                              notes={"vertex": list(vertex), "radius": scale})


def _arr_point(tiling: LineArrangementTiling, state: TrajectoryState) -> Point2:
    return tiling.edge_line(state.edge).point_at(state.t)


def _rotate_about(c: Point2, ang: float, p: Point2) -> Point2:
    ca, sa = math.cos(ang), math.sin(ang)
    dx, dy = p.x - c.x, p.y - c.y
    return Point2(c.x + ca * dx - sa * dy, c.y + sa * dx + ca * dy)


def triangle_period10_theta_interval(alpha: float, beta: float):
    lo = max(0.0, beta - 2 * alpha, 2 * beta + 2 * alpha - math.pi, alpha)
    hi = min(math.pi, math.pi - 2 * alpha, 2 * beta - alpha, beta + 2 * alpha)
    return lo, hi


def triangle_period10(alpha: float, beta: float,
                      theta: Optional[float] = None,
                      l: Optional[float] = None) -> ConstructionResult:
    """Period-10 orbit around two vertices of a triangle tiling.

    Region (strict): beta + 2*alpha < pi, alpha < pi/3, beta > alpha.
    ``theta`` defaults to the midpoint of its feasible interval; ``l`` to
    the midpoint of (0, l_max) where l_max is found from the affine
    dependence of crossing clearances on l.
    """
    tol = 1e-12
    if not (beta + 2 * alpha < math.pi - tol and alpha < math.pi / 3 - tol
            and beta > alpha + tol):
        raise InfeasibleConstruction(
            "triangle outside the period-10 region "
            f"(alpha={alpha:.6g}, beta={beta:.6g})")
    th_lo, th_hi = triangle_period10_theta_interval(alpha, beta)
    if theta is None:
        theta = 0.5 * (th_lo + th_hi)
    if not (th_lo + tol < theta < th_hi - tol):
        raise InfeasibleConstruction(
            f"theta={theta:.6g} outside ({th_lo:.6g}, {th_hi:.6g})")
    tiling = make_tiling("triangle", alpha=alpha, beta=beta)
    l_max = _period10_l_max(tiling, theta)
    if l is None:
        l = 0.5 * l_max
    if not (tol < l < l_max - tol):
        raise InfeasibleConstruction(f"l={l:.6g} outside (0, {l_max:.6g})")
    start = _period10_start(tiling, theta, l)
    return ConstructionResult(tiling, start,
                              Classification("periodic", period=10),
                              notes={"theta": theta, "l": l, "l_max": l_max,
                                     "theta_interval": [th_lo, th_hi]})


def _period10_start(tiling: LatticeTiling, theta: float, l: float) -> TrajectoryState:
    base = tiling.slot_by_name("base")
    return make_state(tiling, edge=(0, 0, base), t=1.0 - l,
                      direction=math.pi - theta)


def _period10_l_max(tiling: LatticeTiling, theta: float) -> float:
    """Largest l before some crossing of the period-10 orbit reaches a
    vertex.  Every crossing's distance to each endpoint of its edge is
    affine in l, so two probe traces determine all the constraints."""
    probes = (0.02, 0.04)
    dists = []
    for lp in probes:
        st = _period10_start(tiling, theta, lp)
        tr = trace(tiling, st, 10)
        if len(tr.records) < 11 or tr.records[10].state.edge != tr.records[0].state.edge:
            raise InfeasibleConstruction("probe orbit does not close in 10 steps")
        per_cross = []
        for rec in tr.records[:10]:
            seg = tiling.edge_segment(rec.state.edge)
            per_cross.extend((rec.point.dist(seg.a), rec.point.dist(seg.b)))
        dists.append(per_cross)
    l_max = math.inf
    for c0, c1 in zip(*dists):
        slope = (c1 - c0) / (probes[1] - probes[0])
        if slope < -1e-9:
            l_max = min(l_max, probes[0] - c0 / slope)
    if not math.isfinite(l_max):  # pragma: no cover
        raise InfeasibleConstruction("no binding clearance found")
    return l_max


# ---------------------------------------------------------------------------
# right triangle tilings
# ---------------------------------------------------------------------------

def right_triangle_bisecting_escape(alpha: float,
                                    aim: float = 1.1) -> ConstructionResult:
    """Escaping orbit through a hypotenuse midpoint: it bisects every
    hypotenuse it meets and never crosses two legs in a row."""
    if not 0.0 < alpha < math.pi / 2:
        raise InfeasibleConstruction("small angle must lie in (0, pi/2)")
    tiling = make_tiling("right_triangle", alpha=alpha)
    hyp = tiling.slot_by_name("hyp")
    seg = tiling.edge_segment((0, 0, hyp))
    direction = norm_direction(seg.line().angle + aim)
    start = make_state(tiling, edge=(0, 0, hyp), t=0.5, direction=direction)
    return ConstructionResult(tiling, start, Classification("escaped"),
                              notes={"alpha": alpha, "aim": aim})


def right_triangle_drift(n: int) -> ConstructionResult:
    """Drift-periodic orbit of the right triangle with small angle
    pi/(2n): the perpendicular bisector of the short (horizontal) leg."""
    if n < 2:
        raise InfeasibleConstruction("n must be >= 2")
    alpha = math.pi / (2 * n)
    tiling = make_tiling("right_triangle", alpha=alpha)
    base = tiling.slot_by_name("base")
    start = make_state(tiling, edge=(0, 0, base), t=0.5,
                       direction=math.pi / 2)
    return ConstructionResult(tiling, start,
                              Classification("drift_periodic"),
                              notes={"alpha": alpha, "n": n})


# ---------------------------------------------------------------------------
# trihexagonal tiling
# ---------------------------------------------------------------------------

def _trihex_anchor(x1: float, alpha: float):
    """Start on the hexagon/up-triangle edge with the first passage cutting
    the triangle corner at (1, 0): distance x1 from the corner, crossing
    angle alpha toward it."""
    tiling = make_tiling("trihexagonal")
    p = Point2(1.0 - 0.5 * x1, -0.5 * SQRT3 * x1)
    direction = norm_direction(math.pi / 3.0 - alpha)
    return tiling, make_state(tiling, point=p, direction=direction)


def _trihex_feasible_midpoint(alpha: float, expected_kind: str,
                              expected_period: int,
                              x_range=(0.0, 1.0), samples: int = 79) -> float:
    """Midpoint of the widest x1 run whose orbit classifies as expected."""
    lo, hi = x_range
    xs = [lo + (hi - lo) * (k + 1) / (samples + 1) for k in range(samples)]
    ok = []
    for x in xs:
        try:
            tiling, st = _trihex_anchor(x, alpha)
            c = classify(tiling, st, 2 * expected_period + 8)
        except (CornerHit, ValueError):
            ok.append(False)
            continue
        ok.append(c.kind == expected_kind and c.period == expected_period)
    best, cur = None, None
    for i, good in enumerate(ok + [False]):
        if good and cur is None:
            cur = i
        if not good and cur is not None:
            if best is None or i - cur > best[1] - best[0]:
                best = (cur, i)
            cur = None
    if best is None:
        raise InfeasibleConstruction(
            f"no feasible start found for alpha={alpha:.6g}")
    return 0.5 * (xs[best[0]] + xs[best[1] - 1])


def trihex_period6(x1: float = 0.5) -> ConstructionResult:
    """Period-6 orbit circling one triangle, crossing every edge at pi/3;
    valid for any 0 < x1 < 1."""
    if not 0.0 < x1 < 1.0:
        raise InfeasibleConstruction("x1 must lie in (0, 1)")
    tiling, start = _trihex_anchor(x1, math.pi / 3.0)
    return ConstructionResult(tiling, start,
                              Classification("periodic", period=6),
                              notes={"x1": x1})


def trihex_period24(x1: Optional[float] = None) -> ConstructionResult:
    """Period-24 orbit with initial angle pi - arctan(2*sqrt(3))."""
    alpha = math.pi - math.atan(2.0 * SQRT3)
    if x1 is None:
        x1 = _trihex_feasible_midpoint(alpha, "periodic", 24)
    tiling, start = _trihex_anchor(x1, alpha)
    return ConstructionResult(tiling, start,
                              Classification("periodic", period=24),
                              notes={"x1": x1, "alpha": alpha})


def trihex_drift_6n(n: int, x1: Optional[float] = None) -> ConstructionResult:
    """Drift-periodic orbit of period 6n, initial angle
    pi - arctan(3n*sqrt(3)/(3n-2)); the angles increase toward 2*pi/3."""
    if n < 1:
        raise InfeasibleConstruction("n must be >= 1")
    alpha = math.pi - math.atan(3.0 * n * SQRT3 / (3.0 * n - 2.0)) \
        if n > 1 else math.pi - math.atan(3.0 * SQRT3)
    if x1 is None:
        x1 = _trihex_feasible_midpoint(alpha, "drift_periodic", 6 * n)
    tiling, start = _trihex_anchor(x1, alpha)
    return ConstructionResult(tiling, start,
                              Classification("drift_periodic", period=6 * n),
                              notes={"x1": x1, "alpha": alpha, "n": n})


def trihex_period12(x1: float = 0.25) -> ConstructionResult:
    """Period-12 orbit crossing hexagon edges perpendicularly and triangle
    edges at pi/6; valid for 0 < x1 < 1/2."""
    if not 0.0 < x1 < 0.5:
        raise InfeasibleConstruction("x1 must lie in (0, 1/2)")
    tiling = make_tiling("trihexagonal")
    p = Point2(-0.5 + x1, 0.5 * SQRT3)
    start = make_state(tiling, point=p, direction=-math.pi / 2.0)
    return ConstructionResult(tiling, start,
                              Classification("periodic", period=12),
                              notes={"x1": x1})


def trihex_drift_12n_minus_6(n: int, x1: Optional[float] = None) -> ConstructionResult:
    """Drift-periodic orbit of period 12n-6, initial angle
    arctan((6n-3)*sqrt(3)); same-edge crossings are 1/(2n-1) apart."""
    if n < 2:
        raise InfeasibleConstruction("n must be >= 2")
    alpha = math.atan((6.0 * n - 3.0) * SQRT3)
    if x1 is None:
        x1 = _trihex_feasible_midpoint(alpha, "drift_periodic", 12 * n - 6)
    tiling, start = _trihex_anchor(x1, alpha)
    return ConstructionResult(tiling, start,
                              Classification("drift_periodic", period=12 * n - 6),
                              notes={"x1": x1, "alpha": alpha, "n": n,
                                     "spacing": 1.0 / (2.0 * n - 1.0)})


# ---------------------------------------------------------------------------
# registry (CLI / session addressing)
# ---------------------------------------------------------------------------

def _con_three_lines(params):
    return three_lines_periodic(params["alpha"], params["beta"], params["gamma"])


def _con_odd_lines(params):
    return odd_lines_periodic(concurrent_lines(params["angles"]))


def _con_triangle_period6(params):
    tiling = make_tiling("triangle", alpha=params["alpha"], beta=params["beta"])
    return triangle_period6(tiling, tuple(params.get("vertex", (0, 0))))


def _con_triangle_period10(params):
    return triangle_period10(params["alpha"], params["beta"],
                             params.get("theta"), params.get("l"))


CONSTRUCTIONS: dict = {
    "three_lines_periodic": _con_three_lines,
    "odd_lines_periodic": _con_odd_lines,
    "triangle_period6": _con_triangle_period6,
    "triangle_period10": _con_triangle_period10,
    "right_triangle_bisecting_escape":
        lambda p: right_triangle_bisecting_escape(p["alpha"]),
    "right_triangle_drift": lambda p: right_triangle_drift(int(p["n"])),
    "trihex_period6": lambda p: trihex_period6(p.get("x1", 0.5)),
    "trihex_period12": lambda p: trihex_period12(p.get("x1", 0.25)),
    "trihex_period24": lambda p: trihex_period24(p.get("x1")),
    "trihex_drift_6n": lambda p: trihex_drift_6n(int(p["n"]), p.get("x1")),
    "trihex_drift_12n_minus_6":
        lambda p: trihex_drift_12n_minus_6(int(p["n"]), p.get("x1")),
}


def build_construction(name: str, params: Optional[dict] = None) -> ConstructionResult:
    if name not in CONSTRUCTIONS:
        raise KeyError(f"unknown construction {name!r}")
    return CONSTRUCTIONS[name](params or {})
