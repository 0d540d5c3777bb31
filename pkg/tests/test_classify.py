"""Classifier: recurrence detection, drift witnesses, spirals, escape
certificates."""

import math
import random

import pytest

from tilebilliards.classify import (
    classify,
    detect_spiral,
    escape_certificate_right_triangle,
)
from tilebilliards.geom import Point2
from tilebilliards.simulate import make_state, trace
from tilebilliards.tilings import concurrent_lines, make_tiling
import tilebilliards.constructions as con

DEG = math.pi / 180


def test_square_zigzag_drift():
    t = make_tiling("square")
    st = make_state(t, edge=(0, 0, 0), t=0.5, direction=80 * DEG)
    c = classify(t, st, 100)
    assert (c.kind, c.period) == ("drift_periodic", 2)
    assert abs(c.drift[0]) < 1e-12 and abs(c.drift[1] - 2) < 1e-12
    assert c.witness["displacement_residual"] < 1e-9


def test_square_vertex_orbit():
    t = make_tiling("square")
    st = make_state(t, edge=(0, 0, 0), t=0.9, direction=150 * DEG)
    c = classify(t, st, 100)
    assert (c.kind, c.period) == ("periodic", 4)


def test_perpendicular_lines_periodic_4():
    arr = concurrent_lines([math.pi / 2, math.pi / 2])
    st = make_state(arr, point=Point2(1.0, 0.0), direction=135 * DEG)
    c = classify(arr, st, 100)
    assert (c.kind, c.period) == ("periodic", 4)


def test_two_lines_88_escapes_with_spiral_delta():
    arr = concurrent_lines([88 * DEG, 92 * DEG])
    st = make_state(arr, point=Point2(1.0, 0.0), direction=150 * DEG)
    c = classify(arr, st, 1000)
    assert c.kind == "escaped"
    # per-2-crossing drift is half the per-return value of -8 degrees
    assert c.spiral_delta == pytest.approx(-4 * DEG, abs=1e-12)


def test_corner_hit_kind():
    t = make_tiling("square")
    st = make_state(t, edge=(0, 0, 0), t=0.5,
                    direction=math.atan2(1.0, 0.5))
    c = classify(t, st, 100)
    assert c.kind == "corner_hit"


def test_isosceles_all_periodic_or_drift():
    t = make_tiling("isosceles_triangle", alpha=math.pi / 5)
    rng = random.Random(71)
    done = 0
    while done < 60:
        try:
            st = make_state(t, edge=(0, 0, rng.randrange(3)),
                            t=rng.uniform(0.05, 0.95),
                            direction=rng.uniform(0, 2 * math.pi))
        except Exception:
            continue
        c = classify(t, st, 5000)
        if c.kind == "corner_hit":
            continue
        done += 1
        assert c.kind in ("periodic", "drift_periodic")


def test_no_false_periodicity_double_confirmation():
    # replaying one more period reproduces the matched state again
    t = make_tiling("trihexagonal")
    r = con.trihex_period24()
    c = classify(r.tiling, r.start, 200)
    p = c.period
    tr = trace(r.tiling, r.start, 3 * p)
    for k in (p, 2 * p, 3 * p):
        assert tr.records[k].state.edge == tr.records[0].state.edge
        assert abs(tr.records[k].state.t - tr.records[0].state.t) < 1e-7


def test_drift_witness_is_lattice_vector():
    r = con.trihex_drift_6n(2)
    c = classify(r.tiling, r.start, 200)
    assert (c.kind, c.period) == ("drift_periodic", 12)
    u, v = r.tiling.translation_lattice()
    i, j = c.witness["cells"]
    vec = Point2(i * u.x + j * v.x, i * u.y + j * v.y)
    assert abs(vec.x - c.drift[0]) < 1e-12 and abs(vec.y - c.drift[1]) < 1e-12
    tr = trace(r.tiling, r.start, 12)
    disp = tr.records[12].point - tr.records[0].point
    assert math.hypot(disp.x - c.drift[0], disp.y - c.drift[1]) < 1e-9


def test_detect_spiral_requires_constant_magnitude():
    arr = concurrent_lines([88 * DEG, 92 * DEG])
    st = make_state(arr, point=Point2(1.0, 0.0), direction=150 * DEG)
    tr = trace(arr, st, 100)
    assert detect_spiral(arr, tr) == pytest.approx(-4 * DEG, abs=1e-12)
    # a periodic trajectory has zero delta, not a spiral
    arr2 = concurrent_lines([math.pi / 2, math.pi / 2])
    st2 = make_state(arr2, point=Point2(1.0, 0.0), direction=135 * DEG)
    assert detect_spiral(arr2, trace(arr2, st2, 40)) is None


def test_escape_certificate():
    r = con.right_triangle_bisecting_escape(0.3)
    tr = trace(r.tiling, r.start, 500)
    assert escape_certificate_right_triangle(r.tiling, tr)

    # a periodic vertex orbit crosses two legs in a row somewhere
    t = make_tiling("right_triangle", alpha=0.5)
    rng = random.Random(3)
    found_false = False
    for _ in range(200):
        try:
            st = make_state(t, edge=(0, 0, rng.randrange(3)),
                            t=rng.uniform(0.1, 0.9),
                            direction=rng.uniform(0, 2 * math.pi))
        except Exception:
            continue
        c = classify(t, st, 400)
        if c.kind == "periodic":
            tr = trace(t, st, c.period + 1)
            if not escape_certificate_right_triangle(t, tr):
                found_false = True
                break
    assert found_false

    with pytest.raises(ValueError):
        escape_certificate_right_triangle(make_tiling("square"), tr)


def test_below_midpoint_persistence_flips_at_double_leg_crossings():
    # the sign of (t - 1/2) at hypotenuse crossings is constant between
    # consecutive leg-leg pairs and flips exactly there
    t = make_tiling("right_triangle", alpha=0.36)
    rng = random.Random(11)
    checked = 0
    while checked < 10:
        try:
            st = make_state(t, edge=(0, 0, t.slot_by_name("hyp")),
                            t=rng.uniform(0.1, 0.45),
                            direction=rng.uniform(0, 2 * math.pi))
            tr = trace(t, st, 300)
        except Exception:
            continue
        if len(tr.records) < 301:
            continue
        hyp = t.slot_by_name("hyp")
        events = []  # (index, kind) kind: 'h' sign, 'LL' flip
        prev_leg = False
        for rec in tr.records:
            is_leg = rec.state.edge[2] != hyp
            if is_leg and prev_leg:
                events.append(("flip", rec.index))
            if not is_leg:
                if abs(rec.state.t - 0.5) < 1e-12:
                    continue
                events.append(("sign", 1 if rec.state.t > 0.5 else -1))
            prev_leg = is_leg
        signs = [e for e in events if e[0] == "sign"]
        if len(signs) < 5 or not any(e[0] == "flip" for e in events):
            continue
        checked += 1
        cur = None
        for e in events:
            if e[0] == "flip":
                cur = -cur if cur is not None else None
            else:
                if cur is None:
                    cur = e[1]
                assert e[1] == cur


def test_unknown_is_honest():
    # a trihex start with no recurrence within the budget stays unknown
    t = make_tiling("trihexagonal")
    st = make_state(t, edge=(0, 0, 0), t=0.377, direction=0.913)
    c = classify(t, st, 300)
    assert c.kind in ("unknown", "corner_hit", "periodic", "drift_periodic")
    if c.kind == "unknown":
        assert c.witness["steps"] == 300


def test_classification_json():
    t = make_tiling("square")
    st = make_state(t, edge=(0, 0, 0), t=0.5, direction=80 * DEG)
    data = classify(t, st, 50).to_json()
    assert data["kind"] == "drift_periodic" and data["period"] == 2
    assert data["drift"] == [0, 2]
