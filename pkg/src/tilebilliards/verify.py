"""Verification harness: parameterized experiment suites, one per claimed
result, each emitting a structured pass/fail report.

Suites are deterministic given a seed; reports serialize to canonical JSON
(runtime excluded, so reruns are byte-identical) and to human-readable
text.  A failing suite always carries one concrete counterexample with
the full start state for replay.
"""

from __future__ import annotations

import json
import math
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import constructions as con
from .classify import (
    classify,
    detect_spiral,
    escape_certificate_right_triangle,
    good_crossing_count,
)
from .geom import Line, Point2, axis_dist, compose_reflections, unit_vector
from .simulate import (
    CornerHit,
    make_state,
    reversed_state,
    passage_angles,
    trace,
    zone_angles,
    _shared_vertex,
)
from .tilings import LineArrangementTiling, line_arrangement, make_tiling

SQRT3 = math.sqrt(3.0)
DEFAULT_MAX_STEPS = 100_000
SWEEP_MAX_STEPS = 10_000


@dataclass
class CaseResult:
    params: dict
    expected: str
    observed: str
    residuals: dict
    passed: bool

    def to_json(self) -> dict:
        return {"params": self.params, "expected": self.expected,
                "observed": self.observed, "residuals": self.residuals,
                "passed": self.passed}


@dataclass
class VerificationReport:
    theorem_id: str
    seed: int
    grid: dict
    cases: list
    passed: bool
    runtime_s: float
    counterexample: Optional[dict] = None

    def to_json(self, include_runtime: bool = False) -> dict:
        out = {
            "theorem_id": self.theorem_id,
            "seed": self.seed,
            "grid": self.grid,
            "cases": [c.to_json() for c in self.cases],
            "passed": self.passed,
            "counterexample": self.counterexample,
        }
        if include_runtime:
            out["runtime_s"] = self.runtime_s
        return out

    def to_canonical_json(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def to_text(self) -> str:
        lines = [f"[{'PASS' if self.passed else 'FAIL'}] {self.theorem_id} "
                 f"(seed={self.seed}, cases={len(self.cases)}, "
                 f"runtime={self.runtime_s:.2f}s)"]
        for c in self.cases:
            if not c.passed:
                lines.append(f"  FAIL {c.params} expected={c.expected} "
                             f"observed={c.observed} residuals={c.residuals}")
        if self.counterexample:
            lines.append(f"  counterexample: {self.counterexample}")
        return "\n".join(lines)


def _finish(theorem_id, seed, grid, cases, t0) -> VerificationReport:
    passed = all(c.passed for c in cases) and bool(cases)
    counter = None
    for c in cases:
        if not c.passed:
            counter = c.to_json()
            break
    return VerificationReport(theorem_id, seed, grid, cases, passed,
                              time.time() - t0, counter)


# ---------------------------------------------------------------------------
# sampling helpers
# ---------------------------------------------------------------------------

def random_simple_arrangement(rng: random.Random, n: int,
                              min_gap: float = 0.06) -> LineArrangementTiling:
    """A simple arrangement of n pairwise non-parallel lines with all
    consecutive angles at least min_gap apart."""
    while True:
        angs = sorted(rng.uniform(0.0, math.pi) for _ in range(n))
        gaps = [angs[i + 1] - angs[i] for i in range(n - 1)]
        gaps.append(math.pi - angs[-1] + angs[0])
        if min(gaps) < min_gap:
            continue
        lines = [Line.from_point_angle(
            Point2(rng.uniform(-1, 1), rng.uniform(-1, 1)), a) for a in angs]
        try:
            return line_arrangement(lines)
        except ValueError:
            continue


def random_even_arrangement(rng: random.Random, n: int,
                            satisfy: bool) -> LineArrangementTiling:
    """A simple even arrangement whose alternating angle sum is zero
    (satisfy) or moderately nonzero (so good trajectories still exist)."""
    while True:
        if satisfy:
            s_even = math.pi / 2
        else:
            s_even = math.pi / 2 + rng.choice([1, -1]) * rng.uniform(0.04, 0.15)
        evens = [rng.uniform(0.2, 1.0) for _ in range(n // 2)]
        odds = [rng.uniform(0.2, 1.0) for _ in range(n // 2)]
        evens = [a * s_even / sum(evens) for a in evens]
        odds = [a * (math.pi - s_even) / sum(odds) for a in odds]
        alphas = []
        for e, o in zip(evens, odds):
            alphas.extend((e, o))
        dirs = [0.0]
        for a in alphas[:-1]:
            dirs.append(dirs[-1] + a)
        lines = [Line.from_point_angle(
            Point2(rng.uniform(-1, 1), rng.uniform(-1, 1)), d) for d in dirs]
        try:
            return line_arrangement(lines)
        except ValueError:
            continue


def sample_good_start(arr: LineArrangementTiling, rng: random.Random,
                      tries: int = 2000, theta: Optional[float] = None):
    """A start on a circle strictly containing the central zone whose first
    2n crossings stay outside the zone in cyclic order.  Returns None if
    no good start is found (a logged outcome for strongly non-closing
    arrangements, not an error)."""
    radius = arr.zone.radius * 1.5 + 1.0
    c = arr.zone.centroid
    n = arr.n
    for _ in range(tries):
        ang = rng.uniform(0.0, 2.0 * math.pi)
        p = Point2(c.x + radius * math.cos(ang), c.y + radius * math.sin(ang))
        toward = math.atan2(c.y - p.y, c.x - p.x)
        if theta is None:
            d = toward + rng.choice([1, -1]) * (math.pi / 2 + rng.uniform(-0.25, 0.25))
        else:
            d = toward + rng.choice([1, -1]) * (math.pi / 2 + theta)
        best = None
        for i, line in enumerate(arr.lines):
            den = line.normal.dot(unit_vector(d))
            if abs(den) < 1e-12:
                continue
            s = -line.signed_distance(p) / den
            if s > 1e-9 and (best is None or s < best[0]):
                best = (s, i)
        if best is None:
            continue
        q = Point2(p.x + best[0] * math.cos(d), p.y + best[0] * math.sin(d))
        try:
            st = make_state(arr, point=q, direction=d)
        except (CornerHit, ValueError):
            continue
        probe = trace(arr, st, 2 * n)
        if len(probe.records) == 2 * n + 1 \
                and good_crossing_count(arr, probe) >= 2 * n + 1:
            return st
    return None


def random_lattice_start(tiling, rng: random.Random, tries: int = 200):
    for _ in range(tries):
        slot = rng.randrange(tiling.slot_count)
        t = rng.uniform(0.02, 0.98)
        d = rng.uniform(0.0, 2.0 * math.pi)
        try:
            return make_state(tiling, edge=(0, 0, slot), t=t, direction=d)
        except (CornerHit, ValueError):
            continue
    raise RuntimeError("could not sample a lattice start")  # pragma: no cover


def _kind_str(c) -> str:
    if c.period is not None:
        return f"{c.kind}({c.period})"
    return c.kind


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

def _suite_mf_regular_tilings(seed: int, starts: int = 100) -> VerificationReport:
    t0 = time.time()
    rng = random.Random(seed)
    allowed = {
        "equilateral_triangle": {("periodic", 6)},
        "square": {("periodic", 4), ("drift_periodic", 2)},
        "regular_hexagon": {("periodic", 6), ("drift_periodic", 2)},
        "kaleidoscope_30_60_90": {("periodic", 4), ("periodic", 6),
                                  ("periodic", 12)},
    }
    cases = []
    for variant, ok in allowed.items():
        tiling = make_tiling(variant)
        counts: dict = {}
        bad = 0
        resampled = 0
        done = 0
        while done < starts:
            st = random_lattice_start(tiling, rng)
            c = classify(tiling, st, 2000)
            if c.kind == "corner_hit":
                resampled += 1
                continue
            done += 1
            counts[_kind_str(c)] = counts.get(_kind_str(c), 0) + 1
            if (c.kind, c.period) not in ok:
                bad += 1
        cases.append(CaseResult(
            {"tiling": variant, "starts": starts, "resampled": resampled},
            "all in " + str(sorted(f"{k}({p})" for k, p in ok)),
            str(dict(sorted(counts.items()))),
            {"off_family": bad}, bad == 0))
    return _finish("mf_regular_tilings", seed, {"starts": starts}, cases, t0)


def _two_line_arrangement(alpha: float) -> LineArrangementTiling:
    return line_arrangement([
        Line.from_point_angle(Point2(0.0, 0.0), 0.0),
        Line.from_point_angle(Point2(0.0, 0.0), alpha)])


def _suite_ek_two_lines(seed: int, random_angles: int = 20,
                        starts: int = 50, returns: int = 10) -> VerificationReport:
    t0 = time.time()
    rng = random.Random(seed)
    cases = []

    arr = _two_line_arrangement(math.pi / 2)
    periodic4 = 0
    for _ in range(starts):
        st = sample_good_start(arr, rng)
        c = classify(arr, st, 64)
        if (c.kind, c.period) == ("periodic", 4):
            periodic4 += 1
    cases.append(CaseResult({"alpha_deg": 90.0, "starts": starts},
                            f"periodic(4) x{starts}", f"periodic(4) x{periodic4}",
                            {}, periodic4 == starts))

    # near-right angles keep trajectories good for >= `returns` circuits;
    # theta_0 is placed at the survivable end of the drift range
    angles = [math.pi / 2 + rng.choice([1, -1]) * rng.uniform(0.005, 0.018)
              for _ in range(random_angles)]
    for alpha in angles:
        arr = _two_line_arrangement(alpha)
        expected_delta = 4.0 * alpha - 2.0 * math.pi
        blocks = 2 * (returns + 2)
        if expected_delta > 0:
            theta0 = 0.25
        else:
            theta0 = min(math.pi - alpha - 0.2,
                         blocks * abs(expected_delta) / 2.0 + 0.5)
        st = None
        for d in (math.pi - theta0, math.pi + theta0):
            cand = make_state(arr, point=Point2(1.0, 0.0), direction=d)
            probe = trace(arr, cand, 1)
            if len(probe.records) > 1 and probe.records[1].state.edge[0] == 1:
                st = cand
                break
        if st is None:  # pragma: no cover
            cases.append(CaseResult({"alpha": alpha}, "good start", "none",
                                    {}, False))
            continue
        tr = trace(arr, st, 4 * (returns + 1))
        angs = zone_angles(arr, tr)
        usable = []
        for a in angs[:-1]:
            if a is None:
                break
            usable.append(a)
        worst = 0.0
        enough = len(usable) >= 4 * returns + 1
        if enough:
            for k in range(returns):
                d = usable[4 * (k + 1)] - usable[4 * k]
                worst = max(worst, abs(d - expected_delta))
        c = classify(arr, st, 400)
        ok = enough and worst <= 1e-9 and c.kind != "periodic"
        cases.append(CaseResult(
            {"alpha": alpha, "returns": returns},
            f"delta={expected_delta:.6g}, non-periodic",
            f"classified {_kind_str(c)}",
            {"max_delta_residual": worst, "good_crossings": len(usable)}, ok))
    return _finish("ek_two_lines", seed,
                   {"random_angles": random_angles, "starts": starts}, cases, t0)


def _suite_ek_three_lines(seed: int, trials: int = 10) -> VerificationReport:
    t0 = time.time()
    rng = random.Random(seed)
    cases = []
    for _ in range(trials):
        a = rng.uniform(0.3, math.pi - 0.9)
        b = rng.uniform(0.3, math.pi - a - 0.45)
        g = math.pi - a - b
        r = con.three_lines_periodic(a, b, g)
        c = classify(r.tiling, r.start, 100)
        resid = max(c.witness.get("t_residual", math.inf),
                    c.witness.get("dir_residual", math.inf)) \
            if c.kind == "periodic" else math.inf
        cases.append(CaseResult(
            {"alpha": a, "beta": b, "gamma": g}, "periodic(6)",
            _kind_str(c), {"return_residual": resid},
            (c.kind, c.period) == ("periodic", 6) and resid < 1e-7))
    return _finish("ek_three_lines", seed, {"trials": trials}, cases, t0)


def _suite_odd_lines_2n(seed: int, trials: int = 10) -> VerificationReport:
    t0 = time.time()
    rng = random.Random(seed)
    cases = []
    for n in (3, 5, 7):
        for _ in range(trials):
            arr = random_simple_arrangement(rng, n)
            r = con.odd_lines_periodic(arr)
            c = classify(arr, r.start, 40 * n)
            resid = max(c.witness.get("t_residual", math.inf),
                        c.witness.get("dir_residual", math.inf)) \
                if c.kind == "periodic" else math.inf
            theta_traced = zone_angles(arr, trace(arr, r.start, 3))[0]
            theta_resid = abs(theta_traced - r.notes["theta"])
            ok = (c.kind, c.period) == ("periodic", 2 * n) \
                and resid < 1e-7 and theta_resid < 1e-7
            cases.append(CaseResult(
                {"n": n, "alphas": [round(a, 6) for a in arr.alphas]},
                f"periodic({2 * n})", _kind_str(c),
                {"return_residual": resid, "theta_residual": theta_resid}, ok))
    return _finish("odd_lines_2n", seed, {"trials_per_n": trials}, cases, t0)


def _suite_even_lines_condition(seed: int, arrangements: int = 10,
                                starts: int = 50) -> VerificationReport:
    t0 = time.time()
    rng = random.Random(seed)
    cases = []
    for satisfy in (True, False):
        for k in range(arrangements):
            n = rng.choice([4, 6])
            arr = random_even_arrangement(rng, n, satisfy)
            sq = compose_reflections(arr.lines)
            kind2 = (sq @ sq).classify()
            periodic = 0
            sampled = 0
            for _ in range(starts):
                st = sample_good_start(arr, rng)
                if st is None:
                    continue
                sampled += 1
                c = classify(arr, st, 40 * n)
                if c.kind == "periodic":
                    periodic += 1
            if satisfy:
                ok = sampled == starts and periodic == sampled \
                    and kind2.kind == "identity"
                expected = f"periodic(2n) x{starts}; squared map identity"
            else:
                ok = sampled == starts and periodic == 0 \
                    and kind2.kind == "rotation"
                expected = "zero periodic; squared map nontrivial rotation"
            cases.append(CaseResult(
                {"n": n, "satisfy": satisfy, "index": k,
                 "alternating_sum": sum(a if i % 2 == 0 else -a
                                        for i, a in enumerate(arr.alphas))},
                expected,
                f"periodic x{periodic}/{sampled}; squared map {kind2.kind}",
                {}, ok))
    return _finish("even_lines_condition", seed,
                   {"arrangements": arrangements, "starts": starts}, cases, t0)


def _suite_spiral_odd_perturbation(seed: int) -> VerificationReport:
    t0 = time.time()
    rng = random.Random(seed)
    arr = random_simple_arrangement(rng, 3)
    base = con.odd_lines_periodic(arr)
    p0 = arr.edge_line(base.start.edge).point_at(base.start.t)
    theta_base = zone_angles(arr, trace(arr, base.start, 4))[0]
    cases = []
    for eps in (1e-3, -1e-3, 1e-5, -1e-5):
        st = None
        for sgn in (1, -1):
            cand = make_state(arr, point=p0, direction=base.start.dir + sgn * eps)
            th0 = zone_angles(arr, trace(arr, cand, 4))[0]
            if abs((th0 - theta_base) - eps) < 1e-9 * abs(eps) + 1e-14:
                st = cand
                break
        if st is None:  # pragma: no cover
            cases.append(CaseResult({"eps": eps}, "oriented perturbation",
                                    "none", {}, False))
            continue
        tr = trace(arr, st, 40)
        angs = zone_angles(arr, tr)
        blocks = [angs[i + 3] - angs[i] for i in (0, 2, 4, 6, 8)]
        resid = abs(blocks[0] + 2 * eps)
        sign_ok = all(b * blocks[0] > 0 for b in blocks)
        delta = detect_spiral(arr, tr)
        cases.append(CaseResult(
            {"eps": eps}, f"theta_3 - theta_0 = {-2 * eps:+.3e}",
            f"{blocks[0]:+.6e}; detect_spiral={delta}",
            {"residual": resid, "cycles_checked": len(blocks)},
            resid <= 1e-9 and sign_ok and delta is not None
            and abs(delta + 2 * eps) <= 1e-9))
    return _finish("spiral_odd_perturbation", seed,
                   {"alphas": [round(a, 6) for a in arr.alphas]}, cases, t0)


def _leg_theta(tiling, tr) -> float:
    legs = {tiling.slot_by_name("left"), tiling.slot_by_name("diag")}
    leg_angle = {}
    for s in legs:
        seg = tiling.edge_segment((0, 0, s))
        leg_angle[s] = (seg.b - seg.a).angle()
    vals = [axis_dist(rec.state.dir, leg_angle[rec.state.edge[2]])
            for rec in tr.records if rec.state.edge[2] in legs]
    return min(vals) if vals else math.nan


def _suite_iso_classification(seed: int, starts: int = 100) -> VerificationReport:
    t0 = time.time()
    rng = random.Random(seed)
    cases = []
    for apex in (math.pi / 5, math.pi / 7, 0.4):
        tiling = make_tiling("isosceles_triangle", alpha=apex)
        counts: dict = {}
        bad = 0
        done = 0
        while done < starts:
            st = random_lattice_start(tiling, rng)
            c = classify(tiling, st, SWEEP_MAX_STEPS)
            if c.kind == "corner_hit":
                continue
            done += 1
            counts[c.kind] = counts.get(c.kind, 0) + 1
            if c.kind not in ("periodic", "drift_periodic"):
                bad += 1
        cases.append(CaseResult(
            {"vertex_angle": apex, "starts": starts},
            "all periodic or drift_periodic", str(dict(sorted(counts.items()))),
            {"other": bad}, bad == 0))
    return _finish("iso_classification", seed, {"starts": starts}, cases, t0)


def _suite_iso_period_bounds(seed: int, starts: int = 60) -> VerificationReport:
    t0 = time.time()
    rng = random.Random(seed)
    cases = []
    for apex in (math.pi / 5, math.pi / 7, 0.4):
        tiling = make_tiling("isosceles_triangle", alpha=apex)
        checked = 0
        violations = []
        while checked < starts:
            st = random_lattice_start(tiling, rng)
            c = classify(tiling, st, SWEEP_MAX_STEPS)
            if c.kind not in ("periodic", "drift_periodic"):
                continue
            tr = trace(tiling, st, c.period)
            theta = _leg_theta(tiling, tr)
            if math.isnan(theta) or theta < 1e-6 or theta > apex - 1e-6:
                continue  # boundary of the bound's hypothesis
            n = math.floor((math.pi - theta) / apex)
            if theta + n * apex >= math.pi - 1e-12:
                n -= 1
            checked += 1
            if n % 2 == 0:
                bound = 2 * n + 4 if c.kind == "drift_periodic" else 2 * n + 2
            else:
                bound = 2 * n + 2 if c.kind == "drift_periodic" else 2 * n + 4
            if c.period > bound:
                violations.append({"kind": c.kind, "period": c.period,
                                   "bound": bound, "theta": theta, "n": n})
        cases.append(CaseResult(
            {"vertex_angle": apex, "starts": checked},
            "periods within parity-split bounds",
            f"{len(violations)} violations",
            {"violations": violations[:3]}, not violations))
    return _finish("iso_period_bounds", seed, {"starts": starts}, cases, t0)


def _suite_right_bisect_escape(seed: int, steps: int = 10_000) -> VerificationReport:
    t0 = time.time()
    cases = []
    for alpha in (math.pi / 8, 0.3, 1.0):
        r = con.right_triangle_bisecting_escape(alpha)
        tr = trace(r.tiling, r.start, steps)
        cert = escape_certificate_right_triangle(r.tiling, tr)
        hyp = r.tiling.slot_by_name("hyp")
        devs = [abs(rec.state.t - 0.5) for rec in tr.records
                if rec.state.edge[2] == hyp]
        worst = max(devs) if devs else math.inf
        ok = cert and len(tr.records) == steps + 1 and worst <= 1e-9
        cases.append(CaseResult(
            {"alpha": alpha, "steps": steps},
            "certificate true, every hypotenuse crossing at t=0.5",
            f"certificate={cert}, crossings={len(devs)}",
            {"max_midpoint_residual": worst}, ok))
    return _finish("right_bisect_escape", seed, {"steps": steps}, cases, t0)


def _suite_right_drift(seed: int) -> VerificationReport:
    t0 = time.time()
    cases = []
    for n in (2, 3, 5):
        r = con.right_triangle_drift(n)
        c = classify(r.tiling, r.start, 4000)
        resid = c.witness.get("displacement_residual", math.inf) \
            if c.kind == "drift_periodic" else math.inf
        cases.append(CaseResult(
            {"n": n, "alpha": math.pi / (2 * n)}, "drift_periodic",
            _kind_str(c), {"drift_residual": resid},
            c.kind == "drift_periodic" and resid < 1e-9))
    return _finish("right_drift_pi_over_2n", seed, {}, cases, t0)


def _suite_triangle_period10_region(seed: int) -> VerificationReport:
    t0 = time.time()
    cases = []
    r = con.triangle_period10(math.pi / 5, 3 * math.pi / 10, 3 * math.pi / 10, 0.19)
    c = classify(r.tiling, r.start, 100)
    cases.append(CaseResult(
        {"alpha": math.pi / 5, "beta": 3 * math.pi / 10,
         "theta": 3 * math.pi / 10, "l": 0.19},
        "periodic(10)", _kind_str(c), {"l_max": r.notes["l_max"]},
        (c.kind, c.period) == ("periodic", 10)))
    for label, a, b in (("equilateral", math.pi / 3, math.pi / 3),
                        ("isosceles_apex_ge_pi3",
                         (math.pi - 1.2) / 2, (math.pi - 1.2) / 2)):
        try:
            con.triangle_period10(a, b)
            ok, observed = False, "constructed"
        except con.InfeasibleConstruction as e:
            ok, observed = True, f"InfeasibleConstruction: {e}"
        cases.append(CaseResult({"case": label, "alpha": a, "beta": b},
                                "InfeasibleConstruction", observed, {}, ok))
    inv = scan_triangle_34()
    cases.append(CaseResult(
        {"tiling": "triangle 8/79/93 deg", "scan": "12x60 grid"},
        "inventory contains periodic(34)",
        f"periods found: {sorted(inv['histogram'].get('periodic', {}))[:12]}",
        {}, 34 in inv["histogram"].get("periodic", {})))
    return _finish("triangle_period10_region", seed, {}, cases, t0)


def scan_triangle_34():
    tiling = make_tiling("triangle", alpha=8 * math.pi / 180,
                         beta=79 * math.pi / 180)
    return scan(tiling, edge=(0, 0, 0), t_values=12, dir_values=60,
                max_steps=400)


def _trihex_lemma_cases(seed: int, lemma: str, samples: int) -> list:
    rng = random.Random(seed)
    tiling = make_tiling("trihexagonal")
    A = Point2(-0.5, -SQRT3 / 2)
    B = Point2(0.5, -SQRT3 / 2)
    C = Point2(1.0, 0.0)
    D = Point2(0.5, SQRT3 / 2)
    E = Point2(-0.5, SQRT3 / 2)
    T = Point2(1.5, SQRT3 / 2)

    def on_edge(p, a, b):
        return abs((b - a).cross(p - a)) < 1e-9 \
            and -1e-9 < (p - a).dot(b - a) < (b - a).dot(b - a) + 1e-9

    def ray_angle(u, v):
        cth = max(-1.0, min(1.0, u.dot(v) / (u.norm() * v.norm())))
        return math.acos(cth)

    worst = 0.0
    hits = 0
    tries = 0
    limit = 200 * samples
    while hits < samples and tries < limit:
        tries += 1
        x1 = rng.uniform(0.02, 0.98)
        if lemma == "turner":
            a = rng.uniform(0.05, math.pi - 0.05)
            try:
                _, st = con._trihex_anchor(x1, a)
                tr = trace(tiling, st, 3)
            except (CornerHit, ValueError):
                continue
            if len(tr.records) < 4:
                continue
            kinds = [rec.state.side[2] for rec in tr.records[:3]]
            if not (kinds[0] in (1, 2) and kinds[1] == 0 and kinds[2] in (1, 2)):
                continue
            if tr.records[0].state.side == tr.records[2].state.side:
                continue
            if _shared_vertex(tiling, tr.records[1].state.edge,
                              tr.records[2].state.edge) is None:
                continue
            pa = passage_angles(tiling, tr)
            if pa[0] is None or pa[3] is None:
                continue
            hits += 1
            worst = max(worst, abs(pa[3].x - pa[0].x),
                        abs(pa[3].alpha - (math.pi - pa[0].alpha)))
            continue

        a = rng.uniform(math.pi / 3 + 0.05, math.pi - 0.05) \
            if lemma in ("quadrilateral", "quad_triangle") \
            else rng.uniform(0.05, math.pi - 0.05)
        p1 = Point2(B.x - x1, B.y)
        if lemma == "quadrilateral":
            x2f = (math.sin(a) * (2 * x1 + 1) + SQRT3 * math.cos(a)) \
                / (2 * math.sin(a - math.pi / 3))
            if not 0.02 < x2f < 0.98:
                continue
            try:
                st = make_state(tiling, point=p1, direction=math.pi - a)
                tr = trace(tiling, st, 1)
            except (CornerHit, ValueError):
                continue
            if len(tr.records) < 2 or not on_edge(tr.records[1].point, C, D):
                continue
            hits += 1
            p2 = tr.records[1].point
            a2 = ray_angle(tr.records[0].point - p2, C - p2)
            worst = max(worst, abs(p2.dist(C) - x2f),
                        abs(a2 - (a - math.pi / 3)))
        elif lemma == "pentagon":
            x2f = x1 + SQRT3 / math.tan(a)
            if not 0.02 < x2f < 0.98:
                continue
            try:
                st = make_state(tiling, point=p1, direction=math.pi - a)
                tr = trace(tiling, st, 1)
            except (CornerHit, ValueError):
                continue
            if len(tr.records) < 2 or not on_edge(tr.records[1].point, D, E):
                continue
            hits += 1
            p2 = tr.records[1].point
            a2 = ray_angle(tr.records[0].point - p2, D - p2)
            worst = max(worst, abs(p2.dist(D) - x2f), abs(a2 - a))
        elif lemma == "quad_triangle":
            x3f = 0.5 + x1 + (SQRT3 / 2) / math.tan(a)
            x2f = (math.sin(a) * (2 * x1 + 1) + SQRT3 * math.cos(a)) \
                / (2 * math.sin(a - math.pi / 3))
            if not (0.02 < x3f < 0.98 and 0.02 < x2f < 0.98):
                continue
            try:
                st = make_state(tiling, point=p1, direction=math.pi - a)
                tr = trace(tiling, st, 2)
            except (CornerHit, ValueError):
                continue
            if len(tr.records) < 3 or not on_edge(tr.records[2].point, C, T):
                continue
            hits += 1
            p3 = tr.records[2].point
            a3 = ray_angle(tr.records[1].point - p3, C - p3)
            worst = max(worst, abs(p3.dist(C) - x3f),
                        abs(a3 - (math.pi - a)))
    formulas = {
        "turner": "x4 = x1, alpha4 = pi - alpha1",
        "quadrilateral":
            "x2 = (sin(a)(2x1+1) + sqrt3 cos(a)) / (2 sin(a - pi/3)), "
            "alpha2 = a - pi/3",
        "quad_triangle": "x3 = 1/2 + x1 + (sqrt3/2) cot(a), alpha3 = pi - a",
        "pentagon": "x2 = x1 + sqrt3 cot(a), alpha2 = a",
    }
    return [CaseResult({"samples": hits, "tries": tries},
                       formulas[lemma] + " within 1e-9",
                       f"max residual {worst:.3e}",
                       {"max_residual": worst},
                       hits >= samples and worst <= 1e-9)]


def _suite_trihex_lemma(lemma: str):
    def run(seed: int, samples: int = 1000) -> VerificationReport:
        t0 = time.time()
        cases = _trihex_lemma_cases(seed, lemma, samples)
        return _finish(f"trihex_lemma_{lemma}", seed, {"samples": samples},
                       cases, t0)
    return run


def _expect_orbit(builder: Callable, params: dict, expected_kind: str,
                  expected_period: int, max_steps: int) -> CaseResult:
    try:
        r = builder()
    except con.InfeasibleConstruction as e:  # pragma: no cover
        return CaseResult(params, f"{expected_kind}({expected_period})",
                          f"InfeasibleConstruction: {e}", {}, False)
    c = classify(r.tiling, r.start, max_steps)
    return CaseResult(params, f"{expected_kind}({expected_period})",
                      _kind_str(c), dict(x1=r.notes.get("x1")),
                      (c.kind, c.period) == (expected_kind, expected_period))


def _suite_trihex_period6(seed: int) -> VerificationReport:
    t0 = time.time()
    cases = [_expect_orbit(lambda x=x: con.trihex_period6(x), {"x1": x},
                           "periodic", 6, 40) for x in (0.5, 0.1, 0.9)]
    tr = trace(*_orbit(con.trihex_period6(0.5)), 7)
    pa = passage_angles(make_tiling("trihexagonal"), tr)
    worst = max(abs(d.alpha - math.pi / 3) for d in pa if d is not None)
    cases.append(CaseResult({"x1": 0.5}, "every crossing at pi/3",
                            f"max residual {worst:.3e}",
                            {"max_residual": worst}, worst <= 1e-9))
    return _finish("trihex_period6", seed, {}, cases, t0)


def _orbit(r):
    return r.tiling, r.start


def _suite_trihex_period12(seed: int) -> VerificationReport:
    t0 = time.time()
    cases = [_expect_orbit(lambda x=x: con.trihex_period12(x), {"x1": x},
                           "periodic", 12, 60) for x in (0.25, 0.1, 0.4)]
    return _finish("trihex_period12", seed, {}, cases, t0)


def _suite_trihex_period24(seed: int) -> VerificationReport:
    t0 = time.time()
    cases = [_expect_orbit(con.trihex_period24, {}, "periodic", 24, 120)]
    # instability: a 1e-3 angle perturbation destroys periodicity
    r = con.trihex_period24()
    tiling = r.tiling
    p = tiling.edge_segment(r.start.edge).point_at(r.start.t)
    st = make_state(tiling, point=p, direction=r.start.dir + 1e-3)
    c = classify(tiling, st, SWEEP_MAX_STEPS)
    cases.append(CaseResult({"perturbation": 1e-3}, "not periodic(24)",
                            _kind_str(c), {},
                            (c.kind, c.period) != ("periodic", 24)))
    # reversal: still periodic(24)
    c = classify(tiling, reversed_state(tiling, r.start), 120)
    cases.append(CaseResult({"reversed": True}, "periodic(24)", _kind_str(c),
                            {}, (c.kind, c.period) == ("periodic", 24)))
    return _finish("trihex_period24", seed, {}, cases, t0)


def _suite_trihex_drift_6n(seed: int) -> VerificationReport:
    t0 = time.time()
    cases = [_expect_orbit(lambda n=n: con.trihex_drift_6n(n), {"n": n},
                           "drift_periodic", 6 * n, 20 * n + 40)
             for n in (1, 2, 4)]
    alphas = [con.trihex_drift_6n(n).notes["alpha"] for n in (1, 2, 3, 4, 6)]
    mono = all(a < b for a, b in zip(alphas, alphas[1:])) \
        and all(a < 2 * math.pi / 3 for a in alphas)
    cases.append(CaseResult({"n": [1, 2, 3, 4, 6]},
                            "angles increase toward 2pi/3",
                            str([round(a, 6) for a in alphas]), {}, mono))
    return _finish("trihex_drift_6n", seed, {}, cases, t0)


def _spacing_case(n: int) -> CaseResult:
    """Density mechanism of the 12n-6 drift family: some edge collects
    exactly n parallel crossings, consecutive ones 1/(2n-1) apart, total
    span (n-1)/(2n-1); no edge collects more than n."""
    r = con.trihex_drift_12n_minus_6(n)
    period = 12 * n - 6
    tr = trace(r.tiling, r.start, 2 * period + 2)
    groups: dict = {}
    for rec in tr.records:
        key = (rec.state.edge, round(rec.state.dir, 6))
        groups.setdefault(key, []).append(rec)
    expected = 1.0 / (2 * n - 1)
    span_expected = (n - 1.0) / (2 * n - 1)
    max_hits = max(len(g) for g in groups.values())
    worst = None
    full_families = 0
    for recs in groups.values():
        if len(recs) < n:
            continue
        spacings = [a.point.dist(b.point) for a, b in zip(recs, recs[1:])]
        resid = max(abs(d - expected) for d in spacings)
        span = recs[0].point.dist(recs[-1].point)
        resid = max(resid, abs(span - span_expected))
        if resid <= 1e-9:
            full_families += 1
        worst = resid if worst is None else min(worst, resid)
    ok = max_hits == n and full_families > 0
    return CaseResult({"n": n, "period": period,
                       "full_families": full_families, "max_hits": max_hits},
                      f"n parallel hits per edge, spacing {expected:.6g}",
                      f"best family residual "
                      f"{worst if worst is not None else 'n/a'}",
                      {"best_residual": worst}, ok)


def _suite_trihex_drift_12n6(seed: int) -> VerificationReport:
    t0 = time.time()
    cases = [_expect_orbit(lambda n=n: con.trihex_drift_12n_minus_6(n),
                           {"n": n}, "drift_periodic", 12 * n - 6,
                           30 * n + 40) for n in (2, 3, 4)]
    cases.extend(_spacing_case(n) for n in (2, 3, 4))
    alphas = [con.trihex_drift_12n_minus_6(n).notes["alpha"]
              for n in (2, 3, 4, 6)]
    mono = all(a < b for a, b in zip(alphas, alphas[1:])) \
        and all(a < math.pi / 2 for a in alphas)
    cases.append(CaseResult({"n": [2, 3, 4, 6]},
                            "angles increase toward pi/2",
                            str([round(a, 6) for a in alphas]), {}, mono))
    return _finish("trihex_drift_12n_minus_6", seed, {}, cases, t0)


def _suite_dense_spacing(seed: int) -> VerificationReport:
    t0 = time.time()
    cases = [_spacing_case(n) for n in range(2, 9)]
    spacings = [1.0 / (2 * n - 1) for n in range(2, 9)]
    cases.append(CaseResult({"n": "2..8"}, "spacing decreases toward 0",
                            str([round(s, 6) for s in spacings]), {},
                            all(a > b for a, b in zip(spacings, spacings[1:]))))
    return _finish("dense_spacing", seed, {"n": [2, 3, 4, 5, 6, 7, 8]},
                   cases, t0)


THEOREMS: dict = {
    "mf_regular_tilings": _suite_mf_regular_tilings,
    "ek_two_lines": _suite_ek_two_lines,
    "ek_three_lines": _suite_ek_three_lines,
    "odd_lines_2n": _suite_odd_lines_2n,
    "even_lines_condition": _suite_even_lines_condition,
    "spiral_odd_perturbation": _suite_spiral_odd_perturbation,
    "iso_classification": _suite_iso_classification,
    "iso_period_bounds": _suite_iso_period_bounds,
    "right_bisect_escape": _suite_right_bisect_escape,
    "right_drift_pi_over_2n": _suite_right_drift,
    "triangle_period10_region": _suite_triangle_period10_region,
    "trihex_lemma_turner": _suite_trihex_lemma("turner"),
    "trihex_lemma_quadrilateral": _suite_trihex_lemma("quadrilateral"),
    "trihex_lemma_quad_triangle": _suite_trihex_lemma("quad_triangle"),
    "trihex_lemma_pentagon": _suite_trihex_lemma("pentagon"),
    "trihex_period6": _suite_trihex_period6,
    "trihex_period12": _suite_trihex_period12,
    "trihex_period24": _suite_trihex_period24,
    "trihex_drift_6n": _suite_trihex_drift_6n,
    "trihex_drift_12n_minus_6": _suite_trihex_drift_12n6,
    "dense_spacing": _suite_dense_spacing,
}


def verify_theorem(theorem_id: str, seed: int = 1, **grid) -> VerificationReport:
    if theorem_id not in THEOREMS:
        raise KeyError(f"unknown theorem id {theorem_id!r}; known: "
                       + ", ".join(sorted(THEOREMS)))
    return THEOREMS[theorem_id](seed, **grid)


# ---------------------------------------------------------------------------
# scan
# ---------------------------------------------------------------------------

def scan(tiling, edge: tuple, t_values, dir_values, max_steps: int = 400,
         eps_match: float = 1e-7) -> dict:
    """Classify a grid of starts on one edge and inventory the orbits.

    ``t_values`` / ``dir_values`` may be counts (uniform grids over (0,1)
    and (0, pi)) or explicit sequences.  Orbits are deduplicated by their
    cell-reduced state set; the histogram maps period to start count.
    """
    if isinstance(t_values, int):
        t_values = [(i + 0.5) / t_values for i in range(t_values)]
    if isinstance(dir_values, int):
        dir_values = [math.pi * (j + 0.5) / dir_values for j in range(dir_values)]
    histogram: dict = {}
    orbits: dict = {}
    unknown = 0
    corner = 0
    for t in t_values:
        for d in dir_values:
            try:
                st = make_state(tiling, edge=edge, t=t, direction=d)
            except (CornerHit, ValueError):
                corner += 1
                continue
            c = classify(tiling, st, max_steps, eps_match)
            if c.kind in ("periodic", "drift_periodic"):
                histogram.setdefault(c.kind, {})
                histogram[c.kind][c.period] = \
                    histogram[c.kind].get(c.period, 0) + 1
                tr = trace(tiling, st, c.period)
                key_states = []
                for rec in tr.records[:c.period]:
                    red, _cell = tiling.reduce_edge(rec.state.edge)
                    key_states.append((red, round(rec.state.t, 7),
                                       round(rec.state.dir, 7)))
                key = (c.kind, c.period, min(key_states))
                if key not in orbits:
                    orbits[key] = {"kind": c.kind, "period": c.period,
                                   "start": {"edge": list(edge), "t": t,
                                             "dir": d}}
            elif c.kind == "corner_hit":
                corner += 1
            else:
                unknown += 1
    return {
        "histogram": histogram,
        "orbits": sorted(orbits.values(),
                         key=lambda o: (o["kind"], o["period"],
                                        o["start"]["t"], o["start"]["dir"])),
        "unknown": unknown,
        "corner": corner,
    }
