"""Dev scratch: calibrate dynamics against known результаты. Not shipped."""
import math
from tilebilliards.geom import Line, Point2, unit_vector
from tilebilliards.tilings import make_tiling, concurrent_lines
from tilebilliards.simulate import make_state, trace, state_point, zone_angles, passage_angles

DEG = math.pi / 180


def show(label, val):
    print(f"{label}: {val}")


# 1. all tilings construct
for variant, kw in [("square", {}), ("regular_hexagon", {}),
                    ("equilateral_triangle", {}), ("kaleidoscope_30_60_90", {}),
                    ("trihexagonal", {}), ("triangle", dict(alpha=0.6, beta=0.9)),
                    ("isosceles_triangle", dict(alpha=math.pi/5)),
                    ("right_triangle", dict(alpha=0.5))]:
    t = make_tiling(variant, **kw)
    print(variant, "slots:", t.slot_count, "kinds:", len(t.kinds),
          "colors:", t._colors is not None, "names:", t.slot_names)

# 2. square zigzag: bottom edge t=0.5 dir=80deg
sq = make_tiling("square")
st = make_state(sq, edge=(0, 0, sq.slot_by_name("bottom")), t=0.5, direction=80*DEG)
tr = trace(sq, st, 6)
for r in tr.records:
    print(" sq", r.index, r.state.edge, round(r.state.t, 4), round(r.state.dir/DEG, 2),
          (round(r.point.x, 3), round(r.point.y, 3)))

# vertical exact
st = make_state(sq, edge=(0, 0, sq.slot_by_name("bottom")), t=0.5, direction=90*DEG)
tr = trace(sq, st, 4)
print("vertical:", [(r.state.edge, round(r.state.t,3), round(r.state.dir/DEG,1)) for r in tr.records])

# square vertex orbit: dir pointing to cut corner: from bottom edge t=0.9 dir=120deg
st = make_state(sq, edge=(0, 0, sq.slot_by_name("bottom")), t=0.9, direction=120*DEG)
tr = trace(sq, st, 8)
print("sq corner orbit:", [(r.state.edge, round(r.state.t,3), round(r.state.dir/DEG,1)) for r in tr.records])

# 3. two perpendicular lines, start (1,0) dir 135 deg -> period 4
arr = concurrent_lines([math.pi/2, math.pi/2])
st = make_state(arr, point=Point2(1.0, 0.0), direction=135*DEG)
tr = trace(arr, st, 9)
print("perp lines:", [( r.state.edge, round(r.state.t,3), round(r.state.dir/DEG,1),
                        (round(r.point.x,3), round(r.point.y,3))) for r in tr.records], tr.termination)
print("zone angles:", [round(a/DEG,2) if a is not None else None for a in zone_angles(arr, tr)])

# 4. 88 deg two lines: theta_0 = 30 deg: start (1,0) dir 150
arr = concurrent_lines([88*DEG, 92*DEG])
st = make_state(arr, point=Point2(1.0, 0.0), direction=150*DEG)
tr = trace(arr, st, 30)
angs = zone_angles(arr, tr)
print("88deg angles:", [round(a/DEG, 3) if a is not None else None for a in angs])
print("returns delta (lag4):", [round((angs[i+4]-angs[i])/DEG, 6) for i in range(0, 10) if angs[i+4] is not None and angs[i] is not None])
print("termination:", tr.termination, "steps:", len(tr.records))

# 5. trihex period-6 anchor: p=(1-x1/2, -x1*sqrt3/2) dir = 60deg - 60deg = 0
th = make_tiling("trihexagonal")
x1 = 0.5
p = Point2(1 - x1/2, -x1*math.sqrt(3)/2)
st = make_state(th, point=p, direction=0.0)
tr = trace(th, st, 13)
print("trihex p6:", [(r.state.edge, round(r.state.t,4), round(r.state.dir/DEG,1)) for r in tr.records])
pa = passage_angles(th, tr)
print("trihex p6 passage:", [(round(d.x,4), round(d.alpha/DEG,2)) if d else None for d in pa])

# 6. equilateral triangle tiling: random-ish start
eq = make_tiling("equilateral_triangle")
st = make_state(eq, edge=(0, 0, eq.slot_by_name("base")), t=0.37, direction=75*DEG)
tr = trace(eq, st, 13)
print("equilateral:", [(r.state.edge, round(r.state.t,3), round(r.state.dir/DEG,1)) for r in tr.records])
pa = passage_angles(eq, tr)
print("equilateral passage:", [(round(d.x,3), round(d.alpha/DEG,2)) if d else None for d in pa])
