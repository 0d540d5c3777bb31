"""Deterministic SVG rendering of tilings and trajectories.

Output is byte-stable for identical inputs: elements are emitted in a
fixed order and every coordinate is formatted with six decimals.  Tiles
of two-colorable tilings are shaded in two tones; tilings without a
two-coloring are drawn unshaded.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .geom import Point2
from .simulate import Trajectory
from .tilings import LatticeTiling, LineArrangementTiling, Tiling


@dataclass(frozen=True)
class RenderStyle:
    """Stroke widths and palette; all lengths in plane units."""

    px_per_unit: float = 60.0
    edge_width: float = 0.015
    trajectory_width: float = 0.04
    edge_color: str = "#5b5b5b"
    trajectory_colors: tuple = ("#c0392b", "#2471a3", "#1e8449", "#8e44ad")
    fill_even: str = "#f4f0e8"
    fill_odd: str = "#d8e4ee"
    background: str = "#ffffff"

    @staticmethod
    def from_json(data: dict) -> "RenderStyle":
        known = {f for f in RenderStyle.__dataclass_fields__}
        bad = set(data) - known
        if bad:
            raise ValueError(f"unknown style fields: {sorted(bad)}")
        if "trajectory_colors" in data:
            data = dict(data, trajectory_colors=tuple(data["trajectory_colors"]))
        return RenderStyle(**data)


def _f(x: float) -> str:
    # normalize negative zero so output is platform-stable
    if x == 0.0:
        x = 0.0
    return f"{x:.6f}"


def _poly_points(points) -> str:
    return " ".join(f"{_f(p.x)},{_f(p.y)}" for p in points)


def _auto_viewport(trajectories, pad: float) -> tuple:
    xs, ys = [], []
    for tr in trajectories:
        for p in _traj_points(tr):
            xs.append(p.x)
            ys.append(p.y)
    if not xs:
        return (-3.0, -3.0, 3.0, 3.0)
    return (min(xs) - pad, min(ys) - pad, max(xs) + pad, max(ys) + pad)


def _traj_points(tr) -> list:
    if isinstance(tr, Trajectory):
        return tr.points()
    return [p if isinstance(p, Point2) else Point2(p[0], p[1]) for p in tr]


def render_svg(tiling: Tiling, trajectories: Sequence = (),
               viewport: Optional[tuple] = None,
               style: Optional[RenderStyle] = None) -> str:
    """Render the tiling (clipped to the viewport) with trajectory
    polylines over it.  ``trajectories`` holds Trajectory objects or bare
    point sequences; ``viewport`` is (xmin, ymin, xmax, ymax), default the
    trajectory bounding box padded by two edge lengths."""
    style = style or RenderStyle()
    if viewport is None:
        viewport = _auto_viewport(trajectories, pad=2.0)
    x0, y0, x1, y1 = viewport
    if not (x1 > x0 and y1 > y0):
        raise ValueError("viewport must have positive area")
    w = (x1 - x0) * style.px_per_unit
    h = (y1 - y0) * style.px_per_unit

    out = []
    out.append(
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_f(w)}" height="{_f(h)}" '
        f'viewBox="{_f(x0)} {_f(-y1)} {_f(x1 - x0)} {_f(y1 - y0)}">')
    # flip the y axis so plane coordinates read the usual way
    out.append(f'<g transform="scale(1,-1)">')
    out.append(f'<rect x="{_f(x0)}" y="{_f(y0)}" width="{_f(x1 - x0)}" '
               f'height="{_f(y1 - y0)}" fill="{style.background}"/>')
    out.append('<clipPath id="vp">'
               f'<rect x="{_f(x0)}" y="{_f(y0)}" width="{_f(x1 - x0)}" '
               f'height="{_f(y1 - y0)}"/></clipPath>')
    out.append('<g clip-path="url(#vp)">')

    if isinstance(tiling, LatticeTiling):
        _render_lattice(out, tiling, viewport, style)
    elif isinstance(tiling, LineArrangementTiling):
        _render_arrangement(out, tiling, viewport, style)

    for k, tr in enumerate(trajectories):
        pts = _traj_points(tr)
        color = style.trajectory_colors[k % len(style.trajectory_colors)]
        out.append(f'<polyline points="{_poly_points(pts)}" fill="none" '
                   f'stroke="{color}" '
                   f'stroke-width="{_f(style.trajectory_width)}" '
                   'stroke-linejoin="round" stroke-linecap="round"/>')
    out.append("</g></g></svg>")
    return "\n".join(out) + "\n"


def _cell_range(tiling: LatticeTiling, viewport, margin: float = 2.0):
    x0, y0, x1, y1 = viewport
    corners = [Point2(x0 - margin, y0 - margin), Point2(x1 + margin, y0 - margin),
               Point2(x0 - margin, y1 + margin), Point2(x1 + margin, y1 + margin)]
    ss, ts = [], []
    for c in corners:
        s, t = tiling._frac(c)
        ss.append(s)
        ts.append(t)
    return (math.floor(min(ss)) - 1, math.ceil(max(ss)) + 1,
            math.floor(min(ts)) - 1, math.ceil(max(ts)) + 1)


def _render_lattice(out, tiling: LatticeTiling, viewport, style) -> None:
    x0, y0, x1, y1 = viewport
    i0, i1, j0, j1 = _cell_range(tiling, viewport)

    def visible(points) -> bool:
        return (min(p.x for p in points) <= x1 and max(p.x for p in points) >= x0
                and min(p.y for p in points) <= y1 and max(p.y for p in points) >= y0)

    if tiling.tile_color((0, 0, 0)) is not None:
        for i in range(i0, i1 + 1):
            for j in range(j0, j1 + 1):
                for kind in range(len(tiling.kinds)):
                    if tiling.tile_color((i, j, kind)) != 1:
                        continue
                    verts = tiling.tile_vertices((i, j, kind))
                    if not visible(verts):
                        continue
                    out.append(f'<polygon points="{_poly_points(verts)}" '
                               f'fill="{style.fill_odd}" stroke="none"/>')
    for i in range(i0, i1 + 1):
        for j in range(j0, j1 + 1):
            for slot in range(tiling.slot_count):
                seg = tiling.edge_segment((i, j, slot))
                if not visible((seg.a, seg.b)):
                    continue
                out.append(f'<line x1="{_f(seg.a.x)}" y1="{_f(seg.a.y)}" '
                           f'x2="{_f(seg.b.x)}" y2="{_f(seg.b.y)}" '
                           f'stroke="{style.edge_color}" '
                           f'stroke-width="{_f(style.edge_width)}"/>')


def _render_arrangement(out, tiling: LineArrangementTiling, viewport,
                        style) -> None:
    x0, y0, x1, y1 = viewport
    diag = math.hypot(x1 - x0, y1 - y0) + 1.0
    cx, cy = 0.5 * (x0 + x1), 0.5 * (y0 + y1)
    # parity shading: the union of half-planes with even-odd fill colors
    # each face by the parity of its negative-side count
    paths = []
    for line in tiling.lines:
        d = line.direction
        n = line.normal
        m = line.project(Point2(cx, cy))
        a = Point2(m.x - diag * d.x, m.y - diag * d.y)
        b = Point2(m.x + diag * d.x, m.y + diag * d.y)
        c = Point2(b.x - diag * n.x, b.y - diag * n.y)
        e = Point2(a.x - diag * n.x, a.y - diag * n.y)
        paths.append(f"M {_f(a.x)} {_f(a.y)} L {_f(b.x)} {_f(b.y)} "
                     f"L {_f(c.x)} {_f(c.y)} L {_f(e.x)} {_f(e.y)} Z")
    out.append(f'<rect x="{_f(x0)}" y="{_f(y0)}" width="{_f(x1 - x0)}" '
               f'height="{_f(y1 - y0)}" fill="{style.fill_even}"/>')
    out.append(f'<path d="{" ".join(paths)}" fill="{style.fill_odd}" '
               'fill-rule="evenodd" stroke="none"/>')
    for line in tiling.lines:
        d = line.direction
        m = line.project(Point2(cx, cy))
        a = Point2(m.x - diag * d.x, m.y - diag * d.y)
        b = Point2(m.x + diag * d.x, m.y + diag * d.y)
        out.append(f'<line x1="{_f(a.x)}" y1="{_f(a.y)}" '
                   f'x2="{_f(b.x)}" y2="{_f(b.y)}" '
                   f'stroke="{style.edge_color}" '
                   f'stroke-width="{_f(style.edge_width)}"/>')


def tiling_edges_in_viewport(tiling: Tiling, viewport) -> list:
    """Edge segments (clipped by bounding-box test) for client drawing."""
    x0, y0, x1, y1 = viewport
    out = []
    if isinstance(tiling, LatticeTiling):
        i0, i1, j0, j1 = _cell_range(tiling, viewport, margin=1.0)
        for i in range(i0, i1 + 1):
            for j in range(j0, j1 + 1):
                for slot in range(tiling.slot_count):
                    seg = tiling.edge_segment((i, j, slot))
                    if min(seg.a.x, seg.b.x) > x1 or max(seg.a.x, seg.b.x) < x0 \
                            or min(seg.a.y, seg.b.y) > y1 \
                            or max(seg.a.y, seg.b.y) < y0:
                        continue
                    out.append([seg.a.x, seg.a.y, seg.b.x, seg.b.y])
    elif isinstance(tiling, LineArrangementTiling):
        diag = math.hypot(x1 - x0, y1 - y0) + 1.0
        cx, cy = 0.5 * (x0 + x1), 0.5 * (y0 + y1)
        for line in tiling.lines:
            d = line.direction
            m = line.project(Point2(cx, cy))
            out.append([m.x - diag * d.x, m.y - diag * d.y,
                        m.x + diag * d.x, m.y + diag * d.y])
    return out


def shaded_tiles_in_viewport(tiling: Tiling, viewport) -> list:
    """Filled tile polygons (two-coloring class 1) for client drawing."""
    out = []
    if isinstance(tiling, LatticeTiling) and tiling.tile_color((0, 0, 0)) is not None:
        x0, y0, x1, y1 = viewport
        i0, i1, j0, j1 = _cell_range(tiling, viewport, margin=1.0)
        for i in range(i0, i1 + 1):
            for j in range(j0, j1 + 1):
                for kind in range(len(tiling.kinds)):
                    if tiling.tile_color((i, j, kind)) != 1:
                        continue
                    verts = tiling.tile_vertices((i, j, kind))
                    if min(p.x for p in verts) > x1 or max(p.x for p in verts) < x0 \
                            or min(p.y for p in verts) > y1 \
                            or max(p.y for p in verts) < y0:
                        continue
                    out.append([[p.x, p.y] for p in verts])
    return out
