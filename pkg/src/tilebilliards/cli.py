"""Command-line interface: simulate, classify, construct, verify, scan,
render, serve.

Machine-readable JSON goes to stdout; progress and human-readable report
text go to stderr.  Exit codes: 0 success (for ``verify``: aggregate
pass), 1 verification failure, 2 invalid tiling/start specification,
3 infeasible construction.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .classify import classify
from .constructions import CONSTRUCTIONS, InfeasibleConstruction, build_construction
from .geom import Point2
from .render import RenderStyle, render_svg
from .simulate import CornerHit, make_state, trace
from .tilings import LatticeTiling, tiling_from_json
from .verify import THEOREMS, scan, verify_theorem


def _load_json_arg(text: str):
    if text.startswith("@"):
        return json.loads(Path(text[1:]).read_text())
    return json.loads(text)


def _tiling_from_args(args):
    try:
        return tiling_from_json(_load_json_arg(args.tiling))
    except (ValueError, KeyError, json.JSONDecodeError) as e:
        print(f"invalid tiling spec: {e}", file=sys.stderr)
        raise SystemExit(2)


def _parse_edge(tiling, text: str) -> tuple:
    parts = [p.strip() for p in text.split(",")]
    out = []
    for p in parts:
        if p.lstrip("-").isdigit():
            out.append(int(p))
        elif isinstance(tiling, LatticeTiling):
            try:
                out.append(tiling.slot_by_name(p))
            except KeyError as e:
                print(e, file=sys.stderr)
                raise SystemExit(2)
        else:
            print(f"non-integer edge component {p!r}", file=sys.stderr)
            raise SystemExit(2)
    return tuple(out)


def _start_from_args(tiling, args):
    try:
        if args.construct:
            res = build_construction(args.construct,
                                     json.loads(args.params or "{}"))
            return res.tiling, res.start, res
        if tiling is None:
            print("need --tiling or --construct", file=sys.stderr)
            raise SystemExit(2)
        if args.point:
            x, y = (float(v) for v in args.point.split(","))
            st = make_state(tiling, point=Point2(x, y), direction=args.dir)
        else:
            if args.edge is None or args.t is None:
                print("need --edge and --t (or --point)", file=sys.stderr)
                raise SystemExit(2)
            st = make_state(tiling, edge=_parse_edge(tiling, args.edge),
                            t=args.t, direction=args.dir)
        return tiling, st, None
    except InfeasibleConstruction as e:
        print(f"infeasible construction: {e}", file=sys.stderr)
        raise SystemExit(3)
    except (CornerHit, ValueError, KeyError, json.JSONDecodeError) as e:
        print(f"invalid start: {e}", file=sys.stderr)
        raise SystemExit(2)


def cmd_simulate(args) -> int:
    tiling = _tiling_from_args(args) if args.tiling else None
    tiling, start, _res = _start_from_args(tiling, args)
    traj = trace(tiling, start, args.max_steps)
    cls = classify(tiling, start, args.max_steps, args.eps_match)
    json.dump({"trajectory": traj.to_json(tiling),
               "classification": cls.to_json()}, sys.stdout)
    print()
    return 0


def cmd_construct(args) -> int:
    try:
        res = build_construction(args.name, json.loads(args.params or "{}"))
    except KeyError as e:
        print(e, file=sys.stderr)
        print("known constructions:", ", ".join(sorted(CONSTRUCTIONS)),
              file=sys.stderr)
        return 2
    except InfeasibleConstruction as e:
        print(f"infeasible construction: {e}", file=sys.stderr)
        return 3
    json.dump(res.to_json(), sys.stdout)
    print()
    return 0


def cmd_verify(args) -> int:
    ids = sorted(THEOREMS) if args.id == "all" else [args.id]
    all_pass = True
    for tid in ids:
        try:
            rep = verify_theorem(tid, seed=args.seed)
        except KeyError as e:
            print(e, file=sys.stderr)
            return 2
        all_pass &= rep.passed
        print(rep.to_text(), file=sys.stderr)
        if args.out:
            outdir = Path(args.out)
            outdir.mkdir(parents=True, exist_ok=True)
            (outdir / f"{tid}.json").write_text(rep.to_canonical_json())
            (outdir / f"{tid}.txt").write_text(rep.to_text() + "\n")
    return 0 if all_pass else 1


def cmd_scan(args) -> int:
    tiling = _tiling_from_args(args)
    edge = _parse_edge(tiling, args.edge)
    result = scan(tiling, edge, args.t_steps, args.dir_steps, args.max_steps)
    out = json.dumps(result, sort_keys=True)
    if args.out:
        Path(args.out).write_text(out)
    else:
        print(out)
    if args.csv:
        lines = ["kind,period,count"]
        for kind, periods in sorted(result["histogram"].items()):
            for period, count in sorted(periods.items()):
                lines.append(f"{kind},{period},{count}")
        Path(args.csv).write_text("\n".join(lines) + "\n")
    return 0


def cmd_render(args) -> int:
    style = RenderStyle.from_json(_load_json_arg(args.style)) \
        if args.style else None
    viewport = tuple(float(v) for v in args.viewport.split(",")) \
        if args.viewport else None
    if args.construct:
        try:
            res = build_construction(args.construct,
                                     json.loads(args.params or "{}"))
        except InfeasibleConstruction as e:
            print(f"infeasible construction: {e}", file=sys.stderr)
            return 3
        tiling = res.tiling
        traj = trace(tiling, res.start, args.max_steps)
        trajectories = [traj]
    else:
        tiling = _tiling_from_args(args)
        trajectories = []
        if args.input:
            data = _load_json_arg(args.input)
            pts = [(r["x"], r["y"]) for r in data["trajectory"]["records"]] \
                if "trajectory" in data else \
                [(r["x"], r["y"]) for r in data["records"]]
            trajectories = [pts]
    svg = render_svg(tiling, trajectories, viewport, style)
    Path(args.out).write_text(svg)
    print(f"wrote {args.out}", file=sys.stderr)
    return 0


def cmd_serve(args) -> int:
    from .session import serve_forever
    serve_forever(args.port, args.assets)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tilebilliards",
                                description=__doc__.strip().splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    sim = sub.add_parser("simulate", help="trace and classify one trajectory")
    sim.add_argument("--tiling", help="tiling spec JSON (or @file)")
    sim.add_argument("--construct", help="named construction instead of a start")
    sim.add_argument("--params", help="construction parameters JSON")
    sim.add_argument("--edge", help="edge reference, e.g. 0,0,bottom")
    sim.add_argument("--t", type=float, help="position along the edge")
    sim.add_argument("--point", help="alternative start: point x,y on an edge")
    sim.add_argument("--dir", type=float, default=0.0,
                     help="direction of travel, radians")
    sim.add_argument("--max-steps", type=int, default=1000)
    sim.add_argument("--eps-match", type=float, default=1e-7)
    sim.set_defaults(fn=cmd_simulate)

    conp = sub.add_parser("construct", help="build a named start condition")
    conp.add_argument("name")
    conp.add_argument("--params", help="parameters JSON, e.g. '{\"n\": 3}'")
    conp.set_defaults(fn=cmd_construct)

    ver = sub.add_parser("verify", help="run a verification suite")
    ver.add_argument("id", help="theorem id, or 'all'")
    ver.add_argument("--seed", type=int, default=1)
    ver.add_argument("--out", help="directory for report files")
    ver.set_defaults(fn=cmd_verify)

    sc = sub.add_parser("scan", help="classify a start grid, inventory orbits")
    sc.add_argument("--tiling", required=True)
    sc.add_argument("--edge", default="0,0,0")
    sc.add_argument("--t-steps", type=int, default=12)
    sc.add_argument("--dir-steps", type=int, default=60)
    sc.add_argument("--max-steps", type=int, default=400)
    sc.add_argument("--out", help="write JSON here instead of stdout")
    sc.add_argument("--csv", help="also write a period histogram CSV")
    sc.set_defaults(fn=cmd_scan)

    ren = sub.add_parser("render", help="render a tiling + trajectory to SVG")
    ren.add_argument("--tiling")
    ren.add_argument("--construct")
    ren.add_argument("--params")
    ren.add_argument("--input", help="trajectory JSON (or @file)")
    ren.add_argument("--viewport", help="x0,y0,x1,y1")
    ren.add_argument("--style", help="style JSON (or @file)")
    ren.add_argument("--max-steps", type=int, default=600)
    ren.add_argument("--out", required=True)
    ren.set_defaults(fn=cmd_render)

    srv = sub.add_parser("serve", help="run the session protocol endpoint")
    srv.add_argument("--port", type=int, default=8642)
    srv.add_argument("--assets", help="static asset directory for the explorer")
    srv.set_defaults(fn=cmd_serve)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    raise SystemExit(main())
