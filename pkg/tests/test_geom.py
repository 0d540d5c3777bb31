"""Geometry primitives: reflections, isometry classification, hulls."""

import math
import random

import pytest

from tilebilliards.geom import (
    Isometry,
    Line,
    Point2,
    circ_dist,
    compose_reflections,
    convex_hull,
    norm_axis,
    norm_direction,
    point_in_convex_polygon,
    unit_vector,
)


def reflect_matrix(angle):
    """Independent oracle: reflection across a line through the origin at
    the given angle, as a plain 2x2 matrix."""
    c, s = math.cos(2 * angle), math.sin(2 * angle)
    return ((c, s), (s, -c))


def apply2(m, v):
    return (m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1])


def test_point_rejects_non_finite():
    with pytest.raises(ValueError):
        Point2(float("nan"), 0.0)
    with pytest.raises(ValueError):
        Point2(0.0, float("inf"))


def test_reflect_point_axis():
    x_axis = Line.from_point_angle(Point2(0, 0), 0.0)
    q = x_axis.reflect_point(Point2(1, 1))
    assert abs(q.x - 1) < 1e-15 and abs(q.y + 1) < 1e-15


def test_reflect_point_fixed_on_line():
    line = Line.from_point_angle(Point2(2, -1), 0.7)
    p = line.point_at(3.3)
    q = line.reflect_point(p)
    assert p.dist(q) < 1e-12


def test_reflect_point_swap_diagonal():
    diag = Line.from_points(Point2(0, 0), Point2(1, 1))
    q = diag.reflect_point(Point2(0.3, 0.7))
    assert abs(q.x - 0.7) < 1e-12 and abs(q.y - 0.3) < 1e-12


def test_reflect_point_involution_random():
    rng = random.Random(101)
    for _ in range(1000):
        p = Point2(rng.uniform(-10, 10), rng.uniform(-10, 10))
        line = Line.from_point_angle(
            Point2(rng.uniform(-5, 5), rng.uniform(-5, 5)),
            rng.uniform(0, math.pi))
        q = line.reflect_point(line.reflect_point(p))
        assert p.dist(q) < 1e-12


def test_reflect_direction_examples():
    horiz = Line.from_point_angle(Point2(0, 0), 0.0)
    assert circ_dist(horiz.reflect_direction(math.pi / 3),
                     2 * math.pi - math.pi / 3) < 1e-15
    assert circ_dist(horiz.reflect_direction(0.0), 0.0) < 1e-15  # parallel


def test_reflect_direction_matrix_oracle():
    rng = random.Random(5)
    for _ in range(200):
        ang = rng.uniform(0, math.pi)
        d = rng.uniform(0, 2 * math.pi)
        line = Line.from_point_angle(Point2(0, 0), ang)
        got = unit_vector(line.reflect_direction(d))
        want = apply2(reflect_matrix(ang), (math.cos(d), math.sin(d)))
        assert abs(got.x - want[0]) < 1e-12 and abs(got.y - want[1]) < 1e-12
    # the spec's spot value: pi/2 across the pi/4 line lands on 0
    line = Line.from_point_angle(Point2(0, 0), math.pi / 4)
    assert circ_dist(line.reflect_direction(math.pi / 2), 0.0) < 1e-15


def test_compose_two_perpendicular_lines_is_half_turn():
    l0 = Line.from_point_angle(Point2(0, 0), 0.0)
    l1 = Line.from_point_angle(Point2(0, 0), math.pi / 2)
    iso = compose_reflections([l0, l1])
    kind = iso.classify()
    assert kind.kind == "rotation"
    assert circ_dist(kind.angle, math.pi) < 1e-12
    sq = (iso @ iso).classify()
    assert sq.kind == "identity"


def test_compose_single_line_is_reflection():
    line = Line.from_point_angle(Point2(0.4, -1.0), 1.1)
    kind = compose_reflections([line]).classify()
    assert kind.kind == "reflection"
    assert abs(kind.axis.signed_distance(line.point_at(0.0))) < 1e-12


def test_compose_concurrent_even_matches_matrix_oracle():
    # concurrent lines at 0, 20, 90, 160 degrees: alternating sums balance,
    # so the composition is a half turn and its square the identity
    deg = math.pi / 180
    lines = [Line.from_point_angle(Point2(0, 0), a * deg)
             for a in (0, 20, 90, 160)]
    iso = compose_reflections(lines)
    kind = iso.classify()
    assert kind.kind == "rotation" and circ_dist(kind.angle, math.pi) < 1e-12
    assert (iso @ iso).classify().kind == "identity"
    # numeric oracle: multiply plain reflection matrices
    m = ((1, 0), (0, 1))
    for line in lines:
        r = reflect_matrix(line.angle)
        m = ((r[0][0] * m[0][0] + r[0][1] * m[1][0],
              r[0][0] * m[0][1] + r[0][1] * m[1][1]),
             (r[1][0] * m[0][0] + r[1][1] * m[1][0],
              r[1][0] * m[0][1] + r[1][1] * m[1][1]))
    assert abs(m[0][0] - iso.a) < 1e-12 and abs(m[0][1] - iso.b) < 1e-12


def test_compose_concurrent_even_rotation_angle_formula():
    rng = random.Random(17)
    for n in (2, 4, 6):
        for _ in range(30):
            angles = sorted(rng.uniform(0, math.pi) for _ in range(n))
            if min(b - a for a, b in zip(angles, angles[1:])) < 1e-3:
                continue
            lines = [Line.from_point_angle(Point2(0, 0), a) for a in angles]
            alphas = [angles[i + 1] - angles[i] for i in range(n - 1)]
            alphas.append(math.pi - sum(alphas))
            expected = 2.0 * sum(alphas[i] for i in range(0, n, 2))
            kind = compose_reflections(lines).classify()
            if circ_dist(expected, 0.0) < 1e-12:
                assert kind.kind == "identity"
            else:
                assert kind.kind == "rotation"
                assert circ_dist(kind.angle, expected) < 1e-9


def test_compose_concurrent_odd_square_is_identity_or_translation():
    rng = random.Random(23)
    for n in (3, 5):
        for _ in range(30):
            angles = sorted(rng.uniform(0, math.pi) for _ in range(n))
            lines = [Line.from_point_angle(Point2(0, 0), a) for a in angles]
            iso = compose_reflections(lines)
            assert iso.classify().kind in ("reflection", "glide")
            sq = (iso @ iso).classify()
            assert sq.kind in ("identity", "translation")


def test_classify_identity_and_translation():
    assert Isometry.identity().classify().kind == "identity"
    kind = Isometry.translation(Point2(1, 0)).classify()
    assert kind.kind == "translation"
    assert abs(kind.vector.x - 1) < 1e-15 and abs(kind.vector.y) < 1e-15
    # fixed lines of the shift are horizontal
    assert norm_axis(kind.vector.angle()) < 1e-12


def test_classify_parallel_reflections_is_double_offset_translation():
    rng = random.Random(31)
    for _ in range(50):
        ang = rng.uniform(0, math.pi)
        p = Point2(rng.uniform(-2, 2), rng.uniform(-2, 2))
        off = rng.uniform(0.1, 3.0)
        l0 = Line.from_point_angle(p, ang)
        n = l0.normal
        l1 = Line.from_point_angle(Point2(p.x + off * n.x, p.y + off * n.y), ang)
        kind = compose_reflections([l0, l1]).classify()
        assert kind.kind == "translation"
        assert abs(kind.vector.norm() - 2 * off) < 1e-9


def test_classify_rejects_degenerate_matrix():
    with pytest.raises(ValueError):
        Isometry(1.0, 0.0, 0.0, 0.5, 0.0, 0.0).classify()


def test_classify_glide_vs_reflection_threshold():
    axis = Line.from_point_angle(Point2(0, 0), 0.3)
    refl = Isometry.reflection(axis)
    assert refl.classify().kind == "reflection"
    shift = Isometry.translation(unit_vector(0.3) * 0.5) @ refl
    kind = shift.classify()
    assert kind.kind == "glide"
    assert abs(kind.vector.norm() - 0.5) < 1e-12


def test_rotation_roundtrip():
    rng = random.Random(41)
    for _ in range(100):
        c = Point2(rng.uniform(-3, 3), rng.uniform(-3, 3))
        a = rng.uniform(0.05, 2 * math.pi - 0.05)
        kind = Isometry.rotation(c, a).classify()
        assert kind.kind == "rotation"
        assert circ_dist(kind.angle, a) < 1e-9
        assert kind.center.dist(c) < 1e-9


def gift_wrap(points):
    """Independent hull oracle (gift wrapping), CCW."""
    pts = sorted(set((p.x, p.y) for p in points))
    if len(pts) <= 2:
        return [Point2(*p) for p in pts]
    start = min(pts)
    hull = [start]
    while True:
        p = hull[-1]
        q = pts[0] if pts[0] != p else pts[1]
        for r in pts:
            if r == p:
                continue
            cr = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
            if cr < -1e-12 or (abs(cr) < 1e-12
                               and math.hypot(r[0] - p[0], r[1] - p[1])
                               > math.hypot(q[0] - p[0], q[1] - p[1])):
                q = r
        if q == start:
            break
        hull.append(q)
    pts2 = [Point2(*p) for p in hull]
    # gift wrapping above walks clockwise from the lexicographic minimum
    return [pts2[0]] + pts2[1:][::-1]


def test_convex_hull_matches_gift_wrapping():
    rng = random.Random(53)
    for _ in range(50):
        pts = [Point2(rng.uniform(-5, 5), rng.uniform(-5, 5))
               for _ in range(rng.randrange(3, 15))]
        got = convex_hull(pts)
        want = gift_wrap(pts)
        assert set((round(p.x, 9), round(p.y, 9)) for p in got) \
            == set((round(p.x, 9), round(p.y, 9)) for p in want)
        for p in pts:
            assert point_in_convex_polygon(p, got, tol=-1e-9) \
                or any(p.dist(h) < 1e-9 or abs(
                    (got[(k + 1) % len(got)] - got[k]).cross(p - got[k])) < 1e-7
                    for k, h in enumerate(got))


def test_angle_normalization():
    assert norm_direction(-0.1) == pytest.approx(2 * math.pi - 0.1)
    assert norm_direction(2 * math.pi) == 0.0
    assert norm_axis(math.pi + 0.3) == pytest.approx(0.3)
    assert circ_dist(0.05, 2 * math.pi - 0.05) == pytest.approx(0.1)
