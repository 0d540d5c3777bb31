"""Planar geometry primitives: points, angles, lines, isometries.

All arithmetic is plain double precision.  Angle comparisons go through
circular distance so the branch cut at 0 never matters.  Directions of
travel live on [0, 2*pi); undirected line angles live on [0, pi).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

TAU = 2.0 * math.pi

UNIT_EPS = 1e-12   # unit-vector and involution tolerance
ISO_EPS = 1e-9     # isometry classification tolerance on matrix entries


# ---------------------------------------------------------------------------
# angles
# ---------------------------------------------------------------------------

def norm_direction(theta: float) -> float:
    """Normalize a direction of travel to [0, 2*pi)."""
    t = math.fmod(theta, TAU)
    if t < 0.0:
        t += TAU
    return 0.0 if t == TAU else t


def norm_axis(theta: float) -> float:
    """Normalize an undirected line angle to [0, pi)."""
    t = math.fmod(theta, math.pi)
    if t < 0.0:
        t += math.pi
    return 0.0 if t == math.pi else t


def circ_dist(a: float, b: float) -> float:
    """Circular distance between two directions, in [0, pi]."""
    d = math.fmod(abs(a - b), TAU)
    return min(d, TAU - d)


def axis_dist(a: float, b: float) -> float:
    """Circular distance between two undirected line angles, in [0, pi/2]."""
    d = math.fmod(abs(a - b), math.pi)
    return min(d, math.pi - d)


# ---------------------------------------------------------------------------
# points / vectors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Point2:
    """A point (or free vector) in the plane.  Coordinates must be finite."""

    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite coordinates ({self.x}, {self.y})")

    def __add__(self, other: "Point2") -> "Point2":
        return Point2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point2") -> "Point2":
        return Point2(self.x - other.x, self.y - other.y)

    def __mul__(self, k: float) -> "Point2":
        return Point2(self.x * k, self.y * k)

    __rmul__ = __mul__

    def __neg__(self) -> "Point2":
        return Point2(-self.x, -self.y)

    def dot(self, other: "Point2") -> float:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Point2") -> float:
        return self.x * other.y - self.y * other.x

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def dist(self, other: "Point2") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def unit(self) -> "Point2":
        n = self.norm()
        if n < UNIT_EPS:
            raise ValueError("cannot normalize near-zero vector")
        return Point2(self.x / n, self.y / n)

    def perp(self) -> "Point2":
        """Rotate by +90 degrees."""
        return Point2(-self.y, self.x)

    def angle(self) -> float:
        """Direction of this vector in [0, 2*pi)."""
        return norm_direction(math.atan2(self.y, self.x))

    def as_tuple(self) -> tuple:
        return (self.x, self.y)


def unit_vector(theta: float) -> Point2:
    return Point2(math.cos(theta), math.sin(theta))


# ---------------------------------------------------------------------------
# lines
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Line:
    """An undirected line in signed-distance form n . p = off, |n| = 1.

    The canonical representation derives the normal from the line's angle
    in [0, pi), which makes equal lines compare equal and gives every line
    a deterministic direction of traversal.
    """

    nx: float
    ny: float
    off: float

    def __post_init__(self):
        n = math.hypot(self.nx, self.ny)
        if abs(n - 1.0) > UNIT_EPS:
            raise ValueError(f"normal not unit length: {n}")

    @staticmethod
    def from_point_angle(p: Point2, theta: float) -> "Line":
        a = norm_axis(theta)
        nx, ny = -math.sin(a), math.cos(a)
        return Line(nx, ny, nx * p.x + ny * p.y)

    @staticmethod
    def from_points(a: Point2, b: Point2) -> "Line":
        d = b - a
        if d.norm() < UNIT_EPS:
            raise ValueError("coincident points do not define a line")
        return Line.from_point_angle(a, math.atan2(d.y, d.x))

    @property
    def angle(self) -> float:
        """Direction angle of the line, in [0, pi)."""
        return norm_axis(math.atan2(-self.nx, self.ny))

    @property
    def direction(self) -> Point2:
        return Point2(self.ny, -self.nx)

    @property
    def normal(self) -> Point2:
        return Point2(self.nx, self.ny)

    def signed_distance(self, p: Point2) -> float:
        return self.nx * p.x + self.ny * p.y - self.off

    def contains(self, p: Point2, tol: float = 1e-9) -> bool:
        return abs(self.signed_distance(p)) <= tol

    def project(self, p: Point2) -> Point2:
        d = self.signed_distance(p)
        return Point2(p.x - d * self.nx, p.y - d * self.ny)

    def param_of(self, p: Point2) -> float:
        """Arc-length parameter of p's projection, measured along `direction`
        from the foot of the origin."""
        return self.ny * p.x - self.nx * p.y

    def point_at(self, t: float) -> Point2:
        return Point2(self.off * self.nx + t * self.ny,
                      self.off * self.ny - t * self.nx)

    def reflect_point(self, p: Point2) -> Point2:
        d = self.signed_distance(p)
        return Point2(p.x - 2.0 * d * self.nx, p.y - 2.0 * d * self.ny)

    def reflect_direction(self, theta: float) -> float:
        """Mirror a direction of travel across this line."""
        return norm_direction(2.0 * self.angle - theta)

    def intersect(self, other: "Line") -> Optional[Point2]:
        det = self.nx * other.ny - self.ny * other.nx
        if abs(det) < 1e-14:
            return None
        x = (self.off * other.ny - other.off * self.ny) / det
        y = (self.nx * other.off - other.nx * self.off) / det
        return Point2(x, y)


# ---------------------------------------------------------------------------
# segments and rays (edge geometry carriers)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Segment:
    a: Point2
    b: Point2

    @property
    def length(self) -> float:
        return self.a.dist(self.b)

    @property
    def midpoint(self) -> Point2:
        return Point2(0.5 * (self.a.x + self.b.x), 0.5 * (self.a.y + self.b.y))

    def point_at(self, u: float) -> Point2:
        return Point2(self.a.x + u * (self.b.x - self.a.x),
                      self.a.y + u * (self.b.y - self.a.y))

    def param_of(self, p: Point2) -> float:
        d = self.b - self.a
        return (p - self.a).dot(d) / d.dot(d)

    def line(self) -> Line:
        return Line.from_points(self.a, self.b)


@dataclass(frozen=True)
class Ray:
    origin: Point2
    direction: Point2  # unit vector

    def point_at(self, s: float) -> Point2:
        return Point2(self.origin.x + s * self.direction.x,
                      self.origin.y + s * self.direction.y)


def ray_segment_intersection(origin: Point2, direction: Point2,
                             seg: Segment, s_min: float = 0.0):
    """Intersect the ray origin + s*direction (s > s_min) with a segment.

    Returns (s, u) with u the segment parameter in [0, 1], or None.  The
    endpoint tolerance is slightly permissive; corner handling is the
    caller's job.
    """
    ex = seg.b.x - seg.a.x
    ey = seg.b.y - seg.a.y
    det = direction.x * ey - direction.y * ex
    if abs(det) < 1e-14:
        return None
    qx = seg.a.x - origin.x
    qy = seg.a.y - origin.y
    s = (qx * ey - qy * ex) / det
    u = (qx * direction.y - qy * direction.x) / det
    if s <= s_min or u < -1e-12 or u > 1.0 + 1e-12:
        return None
    return s, u


# ---------------------------------------------------------------------------
# isometries
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IsometryKind:
    """Classification of a planar isometry with its defining data."""

    kind: str                       # identity | rotation | translation | reflection | glide
    angle: float = 0.0              # rotation angle in [0, 2*pi)
    center: Optional[Point2] = None
    vector: Optional[Point2] = None  # translation / glide-shift vector
    axis: Optional[Line] = None


@dataclass(frozen=True)
class Isometry:
    """Affine map p -> M p + t with orthogonal 2x2 part M = [[a, b], [c, d]]."""

    a: float
    b: float
    c: float
    d: float
    tx: float
    ty: float

    @staticmethod
    def identity() -> "Isometry":
        return Isometry(1.0, 0.0, 0.0, 1.0, 0.0, 0.0)

    @staticmethod
    def translation(v: Point2) -> "Isometry":
        return Isometry(1.0, 0.0, 0.0, 1.0, v.x, v.y)

    @staticmethod
    def rotation(center: Point2, angle: float) -> "Isometry":
        ca, sa = math.cos(angle), math.sin(angle)
        tx = center.x - ca * center.x + sa * center.y
        ty = center.y - sa * center.x - ca * center.y
        return Isometry(ca, -sa, sa, ca, tx, ty)

    @staticmethod
    def reflection(line: Line) -> "Isometry":
        psi = line.angle
        c2, s2 = math.cos(2.0 * psi), math.sin(2.0 * psi)
        # reflect across the parallel line through the origin, then correct
        # by twice the foot of the origin
        foot = line.project(Point2(0.0, 0.0))
        return Isometry(c2, s2, s2, -c2,
                        foot.x - (c2 * foot.x + s2 * foot.y),
                        foot.y - (s2 * foot.x - c2 * foot.y))

    def apply(self, p: Point2) -> Point2:
        return Point2(self.a * p.x + self.b * p.y + self.tx,
                      self.c * p.x + self.d * p.y + self.ty)

    def apply_vector(self, v: Point2) -> Point2:
        return Point2(self.a * v.x + self.b * v.y,
                      self.c * v.x + self.d * v.y)

    def apply_direction(self, theta: float) -> float:
        v = self.apply_vector(unit_vector(theta))
        return v.angle()

    def then(self, other: "Isometry") -> "Isometry":
        """The composite other o self (self applied first)."""
        return other @ self

    def __matmul__(self, other: "Isometry") -> "Isometry":
        """Matrix composition: (A @ B)(p) = A(B(p))."""
        return Isometry(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            self.a * other.tx + self.b * other.ty + self.tx,
            self.c * other.tx + self.d * other.ty + self.ty,
        )

    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    def max_entry_diff(self, other: "Isometry") -> float:
        return max(abs(self.a - other.a), abs(self.b - other.b),
                   abs(self.c - other.c), abs(self.d - other.d),
                   abs(self.tx - other.tx), abs(self.ty - other.ty))

    def _check_orthogonal(self, tol: float = ISO_EPS) -> None:
        r1 = self.a * self.a + self.b * self.b - 1.0
        r2 = self.c * self.c + self.d * self.d - 1.0
        r3 = self.a * self.c + self.b * self.d
        if max(abs(r1), abs(r2), abs(r3)) > tol:
            raise ValueError("linear part is not orthogonal")

    def classify(self, tol: float = ISO_EPS) -> IsometryKind:
        """Classify as identity / rotation / translation / reflection / glide.

        Glide versus pure reflection is decided by the norm of the
        translation component parallel to the axis (> tol means glide).
        """
        self._check_orthogonal(tol)
        t = Point2(self.tx, self.ty)
        if self.det() > 0.0:
            phi = math.atan2(self.c, self.a)
            if circ_dist(phi, 0.0) <= tol:
                if t.norm() <= tol:
                    return IsometryKind("identity")
                return IsometryKind("translation", vector=t)
            # fixed point of p -> R p + t
            det_im = (1.0 - self.a) * (1.0 - self.d) - self.b * self.c
            cx = ((1.0 - self.d) * self.tx + self.b * self.ty) / det_im
            cy = (self.c * self.tx + (1.0 - self.a) * self.ty) / det_im
            return IsometryKind("rotation", angle=norm_direction(phi),
                                center=Point2(cx, cy))
        psi = norm_axis(0.5 * math.atan2(self.b, self.a))
        u = unit_vector(psi)
        shift = t.dot(u)
        t_par = u * shift
        t_perp = t - t_par
        axis = Line.from_point_angle(t_perp * 0.5, psi)
        if abs(shift) <= tol:
            return IsometryKind("reflection", axis=axis)
        return IsometryKind("glide", axis=axis, vector=t_par)


def compose_reflections(lines: Sequence[Line]) -> Isometry:
    """Compose reflections across the given lines, first line applied first."""
    if not lines:
        raise ValueError("need at least one line")
    iso = Isometry.identity()
    for line in lines:
        iso = Isometry.reflection(line) @ iso
    return iso


def convex_hull(points: Iterable[Point2]) -> list:
    """Convex hull (CCW, no repeated first point) by monotone chain.

    Degenerate inputs (one point, collinear points) return the reduced
    vertex list rather than failing.
    """
    pts = sorted(set((p.x, p.y) for p in points))
    if len(pts) == 1:
        return [Point2(*pts[0])]
    if len(pts) == 2:
        return [Point2(*pts[0]), Point2(*pts[1])]

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2:
                ox, oy = out[-2]
                ax, ay = out[-1]
                if (ax - ox) * (p[1] - oy) - (ay - oy) * (p[0] - ox) <= 1e-12:
                    out.pop()
                else:
                    break
            out.append(p)
        return out

    lower = half(pts)
    upper = half(list(reversed(pts)))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 2:
        hull = pts[:1]
    return [Point2(x, y) for x, y in hull]


def point_in_convex_polygon(p: Point2, verts: Sequence[Point2],
                            tol: float = 0.0) -> bool:
    """Strict interior test for a CCW convex polygon (tol > 0 shrinks it)."""
    n = len(verts)
    if n == 1:
        return False
    if n == 2:
        return False
    for i in range(n):
        a, b = verts[i], verts[(i + 1) % n]
        e = b - a
        if e.cross(p - a) <= tol * e.norm():
            return False
    return True
