"""Tiling construction, point location, adjacency, and arrangements."""

import json
import math
import random

import pytest

from tilebilliards.geom import Line, Point2, point_in_convex_polygon
from tilebilliards.tilings import (
    LatticeTiling,
    OnBoundary,
    Ray,
    Segment,
    central_zone,
    concurrent_lines,
    line_arrangement,
    make_tiling,
    tiling_from_json,
)

ALL_LATTICE = ["square", "regular_hexagon", "equilateral_triangle",
               "kaleidoscope_30_60_90", "trihexagonal"]
SQRT3 = math.sqrt(3)


def params_for(variant):
    return {"triangle": dict(alpha=0.6, beta=0.9),
            "isosceles_triangle": dict(alpha=math.pi / 5),
            "right_triangle": dict(alpha=0.5)}.get(variant, {})


@pytest.mark.parametrize("variant", ALL_LATTICE + ["triangle",
                                                   "isosceles_triangle",
                                                   "right_triangle"])
def test_lattice_constructs_and_roundtrips(variant):
    t = make_tiling(variant, **params_for(variant))
    spec = t.to_json()
    t2 = tiling_from_json(spec)
    assert t2.to_json() == spec
    u, v = t.translation_lattice()
    assert abs(u.cross(v)) > 1e-9


def test_locate_square():
    t = make_tiling("square")
    assert t.locate(Point2(0.5, 0.5)) == (0, 0, 0)
    assert t.locate(Point2(3.2, -1.5)) == (3, -2, 0)
    with pytest.raises(OnBoundary):
        t.locate(Point2(1.0, 0.5))


def test_locate_trihex_hexagon_center():
    t = make_tiling("trihexagonal")
    tile = t.locate(Point2(0.0, 0.0))
    assert tile == (0, 0, 0)  # the hexagon of the home cell
    far = t.locate(Point2(2 * 7 + 1 * 3, SQRT3 * 3))
    assert far == (7, 3, 0)


@pytest.mark.parametrize("variant", ALL_LATTICE + ["triangle",
                                                   "isosceles_triangle",
                                                   "right_triangle"])
def test_locate_consistent_with_boundary(variant):
    t = make_tiling(variant, **params_for(variant))
    rng = random.Random(7)
    hits = 0
    while hits < 1000:
        p = Point2(rng.uniform(-4, 4), rng.uniform(-4, 4))
        try:
            tile = t.locate(p)
        except OnBoundary:
            continue
        hits += 1
        verts = t.tile_vertices(tile)
        assert point_in_convex_polygon(p, verts, tol=0.0)


@pytest.mark.parametrize("variant", ALL_LATTICE)
def test_edge_adjacency_two_sides(variant):
    t = make_tiling(variant)
    rng = random.Random(13)
    for _ in range(200):
        slot = rng.randrange(t.slot_count)
        edge = (rng.randrange(-3, 3), rng.randrange(-3, 3), slot)
        seg = t.edge_segment(edge)
        n = (seg.b - seg.a).perp().unit()
        mid = seg.midpoint
        eps = 1e-6 * seg.length
        a = t.locate(Point2(mid.x + eps * n.x, mid.y + eps * n.y))
        b = t.locate(Point2(mid.x - eps * n.x, mid.y - eps * n.y))
        assert a != b
        assert set(t.edge_tiles(edge)) == {a, b}
        # the shared edge is reported identically from both sides
        ea = [be.edge for be in t.tile_boundary(a)]
        eb = [be.edge for be in t.tile_boundary(b)]
        assert edge in ea and edge in eb


def test_boundaries_are_ccw_with_matching_canonical_geometry():
    for variant in ALL_LATTICE:
        t = make_tiling(variant)
        for kind in range(len(t.kinds)):
            tile = (0, 0, kind)
            bes = t.tile_boundary(tile)
            area = 0.0
            for be in bes:
                area += be.geom.a.cross(be.geom.b)
                canon = t.edge_segment(be.edge)
                assert {(round(canon.a.x, 9), round(canon.a.y, 9)),
                        (round(canon.b.x, 9), round(canon.b.y, 9))} \
                    == {(round(be.geom.a.x, 9), round(be.geom.a.y, 9)),
                        (round(be.geom.b.x, 9), round(be.geom.b.y, 9))}
            assert area > 0  # CCW traversal


def test_translation_lattice_values():
    t = make_tiling("square")
    u, v = t.translation_lattice()
    assert (u.x, u.y, v.x, v.y) == (1, 0, 0, 1)
    th = make_tiling("trihexagonal")
    u, v = th.translation_lattice()
    assert abs(u.x - 2) < 1e-12 and abs(u.y) < 1e-12
    assert abs(v.x - 1) < 1e-12 and abs(v.y - SQRT3) < 1e-12


@pytest.mark.parametrize("variant", ALL_LATTICE + ["triangle"])
def test_lattice_generators_map_vertices_to_vertices(variant):
    t = make_tiling(variant, **params_for(variant))
    u, v = t.translation_lattice()
    verts = []
    for kind in range(len(t.kinds)):
        verts.extend(t.tile_vertices((0, 0, kind)))
    all_keys = set()
    for i in range(-3, 4):
        for j in range(-3, 4):
            off = Point2(i * u.x + j * v.x, i * u.y + j * v.y)
            for p in verts:
                all_keys.add((round(p.x + off.x, 9), round(p.y + off.y, 9)))
    for gen in (u, v):
        for p in verts:
            q = (round(p.x + gen.x, 9), round(p.y + gen.y, 9))
            assert q in all_keys


def test_reduce_edge_and_lattice_vector():
    t = make_tiling("trihexagonal")
    red, cell = t.reduce_edge((2, 1, 4))
    assert red == (0, 0, 4) and cell == (2, 1)
    vec = t.lattice_vector((2, 1))
    assert abs(vec.x - 5) < 1e-12 and abs(vec.y - SQRT3) < 1e-12


def test_two_coloring():
    for variant in ("square", "equilateral_triangle", "trihexagonal",
                    "kaleidoscope_30_60_90"):
        t = make_tiling(variant)
        rng = random.Random(3)
        for _ in range(120):
            slot = rng.randrange(t.slot_count)
            edge = (rng.randrange(-3, 3), rng.randrange(-3, 3), slot)
            a, b = t.edge_tiles(edge)
            assert t.tile_color(a) != t.tile_color(b)
    assert make_tiling("regular_hexagon").tile_color((0, 0, 0)) is None


def test_two_colorable_arrangement_bfs_no_odd_cycle():
    rng = random.Random(19)
    lines = [Line.from_point_angle(Point2(rng.uniform(-1, 1),
                                          rng.uniform(-1, 1)), a)
             for a in (0.1, 0.8, 1.5, 2.2, 2.9)]
    arr = line_arrangement(lines)
    seed_face = arr.locate(Point2(10.0, 10.0))
    colors = {seed_face: 0}
    frontier = [seed_face]
    seen_edges = 0
    while frontier and seen_edges < 400:
        face = frontier.pop()
        for i in range(arr.n):
            other = tuple(s if k != i else -s for k, s in enumerate(face))
            seen_edges += 1
            want = 1 - colors[face]
            if other in colors:
                assert colors[other] == want
            else:
                colors[other] = want
                frontier.append(other)
    assert len(colors) > 4


def test_alpha_lemma_sum_is_pi():
    rng = random.Random(29)
    for n in (2, 3, 5, 8):
        for _ in range(20):
            lines = []
            angs = sorted(rng.uniform(0, math.pi) for _ in range(n))
            if min((b - a for a, b in zip(angs, angs[1:])), default=1) < 1e-3:
                continue
            for a in angs:
                lines.append(Line.from_point_angle(
                    Point2(rng.uniform(-1, 1), rng.uniform(-1, 1)), a))
            try:
                arr = line_arrangement(lines)
            except ValueError:
                continue
            assert abs(sum(arr.alphas) - math.pi) < 1e-12
            assert all(a > 0 for a in arr.alphas)


def test_central_zone():
    l0 = Line.from_point_angle(Point2(0, 0), 0.0)
    l1 = Line.from_point_angle(Point2(0, 0), 1.0)
    z = central_zone([l0, l1])
    assert len(z.vertices) == 1 and z.vertices[0].dist(Point2(0, 0)) < 1e-12

    lines3 = [Line.from_point_angle(Point2(0, 0), 0.0),
              Line.from_point_angle(Point2(0, 1), 1.0),
              Line.from_point_angle(Point2(1, 0), 2.0)]
    z3 = central_zone(lines3)
    assert len(z3.vertices) == 3

    rng = random.Random(37)
    lines5 = [Line.from_point_angle(Point2(rng.uniform(-1, 1),
                                           rng.uniform(-1, 1)), a)
              for a in (0.2, 0.9, 1.4, 2.1, 2.8)]
    z5 = central_zone(lines5)
    pts = []
    for i in range(5):
        for j in range(i + 1, 5):
            pts.append(lines5[i].intersect(lines5[j]))
    for p in pts:
        assert z5.contains(p, pad=1e-9)

    with pytest.raises(ValueError):
        central_zone([l0, Line.from_point_angle(Point2(0, 1), 0.0)])


def test_line_arrangement_rejects_non_simple_and_parallel():
    l0 = Line.from_point_angle(Point2(0, 0), 0.0)
    l1 = Line.from_point_angle(Point2(0, 0), 1.0)
    l2 = Line.from_point_angle(Point2(0, 0), 2.0)
    with pytest.raises(ValueError):
        line_arrangement([l0, l1, l2])  # triple point
    with pytest.raises(ValueError):
        line_arrangement([l0, Line.from_point_angle(Point2(0, 1), 0.0)])
    concurrent_lines([1.0, 1.0, math.pi - 2.0])  # explicitly allowed


def test_arrangement_locate_and_unbounded_boundary():
    rng = random.Random(43)
    lines = [Line.from_point_angle(Point2(rng.uniform(-1, 1),
                                          rng.uniform(-1, 1)), a)
             for a in (0.15, 0.85, 1.55, 2.25, 2.95)]
    arr = line_arrangement(lines)
    p = Point2(50.0, 40.0)
    face = arr.locate(p)
    # brute-force sign-vector oracle
    assert face == tuple(1 if l.signed_distance(p) > 0 else -1 for l in lines)
    bes = arr.tile_boundary(face)
    assert any(isinstance(be.geom, Ray) for be in bes)
    # two crossing lines: every face of the quadrant decomposition is
    # bounded by two rays
    arr2 = concurrent_lines([1.2, math.pi - 1.2])
    face2 = arr2.locate(Point2(5, 1))
    bes2 = arr2.tile_boundary(face2)
    assert len(bes2) == 2 and all(isinstance(be.geom, Ray) for be in bes2)


def test_arrangement_face_edges_consistent_with_locate():
    rng = random.Random(47)
    lines = [Line.from_point_angle(Point2(rng.uniform(-1, 1),
                                          rng.uniform(-1, 1)), a)
             for a in (0.3, 1.0, 1.7, 2.4)]
    arr = line_arrangement(lines)
    for _ in range(200):
        p = Point2(rng.uniform(-6, 6), rng.uniform(-6, 6))
        try:
            face = arr.locate(p)
        except OnBoundary:
            continue
        for be in arr.tile_boundary(face):
            geom = be.geom
            if isinstance(geom, Segment):
                mid = geom.midpoint
            else:
                mid = geom.point_at(1.0)
            # interval index of the midpoint matches the edge reference
            i, k = be.edge
            assert arr.interval_of(i, arr.lines[i].param_of(mid)) == k


def test_json_formats():
    spec = {"variant": "triangle", "alpha": 0.6283, "beta": 0.9425}
    t = tiling_from_json(spec)
    assert t.to_json() == spec
    spec2 = {"variant": "line_arrangement",
             "lines": [{"angle": 0.0, "point": [0.0, 0.0]},
                       {"angle": 1.0, "point": [0.5, 0.5]}]}
    arr = tiling_from_json(spec2)
    rt = arr.to_json()
    assert rt["variant"] == "line_arrangement" and len(rt["lines"]) == 2
    with pytest.raises(ValueError):
        tiling_from_json({"variant": "penrose"})
    with pytest.raises(ValueError):
        tiling_from_json(json.loads('{"no_variant": 1}'))
