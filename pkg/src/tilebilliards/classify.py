"""Asymptotic classification of traced trajectories.

The dynamics is invertible, so a recurrence of the initial state is the
only kind that can occur: the classifier compares every new crossing
against the start, in full for periodicity and modulo the translation
lattice for drift-periodicity.  Reported periodicity is double-confirmed
by continuing one more period; drift requires two consecutive equal drift
vectors.  "unknown" is an honest outcome.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .geom import circ_dist
from .simulate import (
    CornerHit,
    CrossingRecord,
    Escaped,
    Trajectory,
    TrajectoryState,
    _DirTracker,
    state_point,
    step,
    zone_angles,
)
from .tilings import LatticeTiling, LineArrangementTiling, Tiling

EPS_MATCH = 1e-7      # default state-recurrence tolerance
EPS_RESIDUAL = 1e-9   # drift-vector and spiral-delta tolerances


@dataclass(frozen=True)
class Classification:
    kind: str  # periodic | drift_periodic | escaped | spiraling | corner_hit | unknown
    period: Optional[int] = None
    drift: Optional[tuple] = None          # (dx, dy) lattice translation
    spiral_delta: Optional[float] = None   # per-n-crossing angle drift
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.period is not None:
            out["period"] = self.period
        if self.drift is not None:
            out["drift"] = list(self.drift)
        if self.spiral_delta is not None:
            out["spiral_delta"] = self.spiral_delta
        if self.witness:
            out["witness"] = self.witness
        return out


def _states_match(a: TrajectoryState, b: TrajectoryState, eps: float) -> bool:
    return (a.edge == b.edge and abs(a.t - b.t) <= eps
            and circ_dist(a.dir, b.dir) <= eps)


def _reduced(tiling: Tiling, state: TrajectoryState):
    if isinstance(tiling, LatticeTiling):
        (ri, rj, slot), cell = tiling.reduce_edge(state.edge)
        return (ri, rj, slot), cell
    return state.edge, (0, 0)


def classify(tiling: Tiling, start: TrajectoryState, max_steps: int,
             eps_match: float = EPS_MATCH) -> Classification:
    """Trace up to ``max_steps`` crossings and classify the result.

    Stops early once a recurrence is confirmed.  The trace used for the
    decision is kept on the returned witness only as indices; use
    ``trace`` to replay.
    """
    if max_steps < 2:
        raise ValueError("max_steps must be >= 2")
    lattice = isinstance(tiling, LatticeTiling)
    records = [CrossingRecord(start, state_point(tiling, start), 0)]
    red0, cell0 = _reduced(tiling, start)

    period_candidate = None   # (p, residuals)
    drift_candidate = None    # (p, cell_delta)
    termination = None
    state = start
    tracker = _DirTracker(tiling, start.dir)
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

        if period_candidate is None and _states_match(state, start, eps_match):
            p = k
            period_candidate = (p, {
                "t_residual": abs(state.t - start.t),
                "dir_residual": circ_dist(state.dir, start.dir),
            })
            continue
        if period_candidate is not None:
            p, resid = period_candidate
            if k == 2 * p:
                if _states_match(state, start, eps_match):
                    return Classification(
                        "periodic", period=p,
                        witness={"match_index": p, "confirm_index": 2 * p,
                                 "eps_match": eps_match, **resid})
                period_candidate = None  # failed confirmation; keep scanning
        if lattice and drift_candidate is None and period_candidate is None:
            red, cell = _reduced(tiling, state)
            if red == red0 and cell != cell0 \
                    and abs(state.t - start.t) <= eps_match \
                    and circ_dist(state.dir, start.dir) <= eps_match:
                drift_candidate = (k, (cell[0] - cell0[0], cell[1] - cell0[1]))
                continue
        if lattice and drift_candidate is not None and period_candidate is None:
            p, delta = drift_candidate
            if k == 2 * p:
                red, cell = _reduced(tiling, state)
                ok = (red == red0
                      and abs(state.t - start.t) <= eps_match
                      and circ_dist(state.dir, start.dir) <= eps_match
                      and (cell[0] - cell0[0], cell[1] - cell0[1])
                      == (2 * delta[0], 2 * delta[1]))
                if ok:
                    vec = tiling.lattice_vector(delta)
                    disp = records[p].point - records[0].point
                    return Classification(
                        "drift_periodic", period=p, drift=(vec.x, vec.y),
                        witness={"match_index": p, "confirm_index": 2 * p,
                                 "eps_match": eps_match,
                                 "cells": list(delta),
                                 "displacement_residual":
                                     math.hypot(disp.x - vec.x, disp.y - vec.y)})
                drift_candidate = None

    traj = Trajectory(records, termination or "max_steps")
    if termination == "corner_hit":
        return Classification("corner_hit",
                              witness={"steps": len(records) - 1})
    if termination == "escaped_arrangement":
        out = Classification("escaped", witness={"steps": len(records) - 1})
        if isinstance(tiling, LineArrangementTiling):
            delta = detect_spiral(tiling, traj)
            if delta is not None:
                out = Classification("escaped", spiral_delta=delta,
                                     witness=out.witness)
        return out
    if isinstance(tiling, LineArrangementTiling):
        delta = detect_spiral(tiling, traj)
        if delta is not None:
            return Classification("spiraling", spiral_delta=delta,
                                  witness={"steps": len(records) - 1})
    return Classification("unknown", witness={"steps": len(records) - 1})


def detect_spiral(tiling: LineArrangementTiling, traj: Trajectory,
                  tol: float = EPS_RESIDUAL) -> Optional[float]:
    """Per-n-crossing angle drift of a good trajectory, if it is constant.

    Returns delta = theta_{i+n} - theta_i measured at i = 0 when the
    deltas have constant magnitude and either constant or parity-
    alternating sign across all available blocks (an odd-n perturbation
    alternates per block).  None when the pattern is absent, the
    trajectory is too short, or it is not good (consecutive crossings on
    one line).
    """
    n = tiling.n
    angles = zone_angles(tiling, traj)
    usable = []
    for a in angles[:-1]:
        if a is None:
            break
        usable.append(a)
    if len(usable) < n + 2:
        return None
    deltas = [usable[i + n] - usable[i] for i in range(len(usable) - n)]
    mag = abs(deltas[0])
    if mag <= tol:
        return None
    if any(abs(abs(d) - mag) > tol for d in deltas):
        return None
    signs = [1 if d > 0 else -1 for d in deltas]
    constant = all(s == signs[0] for s in signs)
    parity = all(s == (signs[0] if i % 2 == 0 else -signs[0])
                 for i, s in enumerate(signs))
    if not (constant or parity):
        return None
    return deltas[0]


def good_crossing_count(tiling: LineArrangementTiling, traj: Trajectory) -> int:
    """Number of leading crossings that stay outside the central zone and
    hit the lines in consistent cyclic order (either orientation)."""
    count = 0
    sense = 0
    prev = None
    for rec in traj.records:
        if tiling.zone.contains(rec.point, pad=1e-9):
            break
        line = rec.state.edge[0]
        if prev is not None:
            stp = (line - prev) % tiling.n
            if stp == 1:
                s = 1
            elif stp == tiling.n - 1:
                s = -1
            else:
                break
            if sense == 0:
                sense = s
            elif s != sense:
                break
        prev = line
        count += 1
    return count


def escape_certificate_right_triangle(tiling: LatticeTiling,
                                      traj: Trajectory) -> bool:
    """True iff no two consecutive crossings both lie on leg edges.

    A right-triangle trajectory with this property always travels toward
    the same quadrant and is therefore unbounded, so the certificate
    establishes escape without waiting out max_steps.
    """
    if tiling.variant != "right_triangle":
        raise ValueError("certificate applies to right-triangle tilings")
    hyp = tiling.slot_by_name("hyp")
    prev_leg = False
    for rec in traj.records:
        slot = rec.state.edge[2]
        leg = slot != hyp
        if leg and prev_leg:
            return False
        prev_leg = leg
    return True
