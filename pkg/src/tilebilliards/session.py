"""Session protocol endpoint: JSON request/response over local HTTP.

One protocol serves the browser explorer, notebooks, and test harnesses.
Requests are POSTs to /api carrying ``{"v": 1, "op": ..., ...}``;
responses always carry ``"v": 1`` and either the result fields or an
``"error"`` object.  Requests are stateless; compiled tilings are kept in
a small LRU cache keyed by their canonical JSON.
"""

from __future__ import annotations

import json
import math
import threading
from functools import lru_cache
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Optional

from .classify import classify
from .constructions import CONSTRUCTIONS, InfeasibleConstruction, build_construction
from .render import RenderStyle, render_svg, shaded_tiles_in_viewport, tiling_edges_in_viewport
from .simulate import CornerHit, Trajectory, make_state, trace
from .tilings import Tiling, tiling_from_json
from .geom import Point2

PROTOCOL_VERSION = 1
MAX_INTERACTIVE_STEPS = 50_000


class SessionError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


@lru_cache(maxsize=64)
def _compile_tiling(canonical: str) -> Tiling:
    return tiling_from_json(json.loads(canonical))


def compile_tiling(spec: dict) -> Tiling:
    try:
        return _compile_tiling(json.dumps(spec, sort_keys=True))
    except (ValueError, KeyError, TypeError) as e:
        raise SessionError("invalid_tiling", str(e))


def _start_state(tiling: Tiling, start: dict):
    try:
        if "edge" in start:
            edge = tiling.edge_from_json(start["edge"])
            return make_state(tiling, edge=edge, t=float(start["t"]),
                              direction=float(start["dir"]))
        if "point" in start:
            x, y = start["point"]
            return make_state(tiling, point=Point2(float(x), float(y)),
                              direction=float(start["dir"]))
    except CornerHit as e:
        raise SessionError("corner_start", str(e))
    except (ValueError, KeyError, TypeError) as e:
        raise SessionError("invalid_start", str(e))
    raise SessionError("invalid_start", "need 'edge'+'t' or 'point', plus 'dir'")


def _clamp_steps(req: dict, default: int = 2000) -> int:
    steps = int(req.get("max_steps", default))
    if steps < 1:
        raise SessionError("invalid_request", "max_steps must be >= 1")
    return min(steps, MAX_INTERACTIVE_STEPS)


def handle_request(req: dict) -> dict:
    """Dispatch one protocol request; returns the response body."""
    try:
        if not isinstance(req, dict):
            raise SessionError("invalid_request", "request must be an object")
        if req.get("v", PROTOCOL_VERSION) != PROTOCOL_VERSION:
            raise SessionError("unsupported_version",
                               f"protocol version must be {PROTOCOL_VERSION}")
        op = req.get("op")
        if op == "trace":
            tiling = compile_tiling(req["tiling"])
            st = _start_state(tiling, req.get("start", {}))
            steps = _clamp_steps(req)
            traj = trace(tiling, st, steps)
            cls = classify(tiling, st, steps,
                           float(req.get("eps_match", 1e-7)))
            return {"v": 1, "trajectory": traj.to_json(tiling),
                    "classification": cls.to_json()}
        if op == "classify":
            tiling = compile_tiling(req["tiling"])
            st = _start_state(tiling, req.get("start", {}))
            cls = classify(tiling, st, _clamp_steps(req),
                           float(req.get("eps_match", 1e-7)))
            return {"v": 1, "classification": cls.to_json()}
        if op == "construct":
            name = req.get("name")
            if name not in CONSTRUCTIONS:
                raise SessionError("unknown_construction",
                                   f"no construction named {name!r}")
            try:
                result = build_construction(name, req.get("params") or {})
            except InfeasibleConstruction as e:
                raise SessionError("infeasible_construction", str(e))
            steps = _clamp_steps(req, default=600)
            traj = trace(result.tiling, result.start, steps)
            cls = classify(result.tiling, result.start, steps)
            return {"v": 1, "construction": result.to_json(),
                    "trajectory": traj.to_json(result.tiling),
                    "classification": cls.to_json()}
        if op == "constructions":
            return {"v": 1, "names": sorted(CONSTRUCTIONS)}
        if op == "tiling_edges":
            tiling = compile_tiling(req["tiling"])
            vp = req.get("viewport")
            if not (isinstance(vp, (list, tuple)) and len(vp) == 4):
                raise SessionError("invalid_request",
                                   "viewport must be [x0, y0, x1, y1]")
            vp = tuple(float(v) for v in vp)
            if not (vp[2] > vp[0] and vp[3] > vp[1]):
                raise SessionError("invalid_request",
                                   "viewport must have positive area")
            return {"v": 1,
                    "edges": tiling_edges_in_viewport(tiling, vp),
                    "shaded": shaded_tiles_in_viewport(tiling, vp)}
        if op == "render":
            tiling = compile_tiling(req["tiling"])
            records = req.get("trajectory", {}).get("records", [])
            pts = [(r["x"], r["y"]) for r in records]
            vp = req.get("viewport")
            style = RenderStyle.from_json(req.get("style", {})) \
                if req.get("style") else None
            svg = render_svg(tiling, [pts] if pts else [],
                             tuple(vp) if vp else None, style)
            return {"v": 1, "svg": svg}
        raise SessionError("unknown_op", f"unsupported op {op!r}")
    except SessionError as e:
        return {"v": 1, "error": {"code": e.code, "message": str(e)}}
    except KeyError as e:
        return {"v": 1, "error": {"code": "invalid_request",
                                  "message": f"missing field {e}"}}


class _Handler(BaseHTTPRequestHandler):
    assets_dir: Optional[Path] = None

    def log_message(self, fmt, *args):  # quiet by default
        pass

    def _send_json(self, body: dict, status: int = 200) -> None:
        data = json.dumps(body).encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(data)

    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "POST, GET, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.end_headers()

    def do_POST(self):
        if self.path.rstrip("/") != "/api":
            self._send_json({"v": 1, "error": {"code": "not_found",
                                               "message": self.path}}, 404)
            return
        try:
            length = int(self.headers.get("Content-Length", "0"))
            req = json.loads(self.rfile.read(length) or b"{}")
        except (ValueError, json.JSONDecodeError) as e:
            self._send_json({"v": 1, "error": {"code": "bad_json",
                                               "message": str(e)}}, 400)
            return
        body = handle_request(req)
        self._send_json(body, 400 if "error" in body else 200)

    def do_GET(self):
        if self.path.rstrip("/") == "/api":
            self._send_json({"v": 1, "ok": True,
                             "ops": ["trace", "classify", "construct",
                                     "constructions", "tiling_edges",
                                     "render"]})
            return
        if self.assets_dir is None:
            self._send_json({"v": 1, "error": {"code": "no_assets",
                                               "message": "no asset dir"}}, 404)
            return
        rel = self.path.lstrip("/") or "index.html"
        target = (self.assets_dir / rel).resolve()
        if not str(target).startswith(str(self.assets_dir.resolve())) \
                or not target.is_file():
            self.send_response(404)
            self.end_headers()
            return
        ctype = {
            ".html": "text/html", ".js": "text/javascript",
            ".css": "text/css", ".svg": "image/svg+xml",
            ".json": "application/json", ".map": "application/json",
        }.get(target.suffix, "application/octet-stream")
        data = target.read_bytes()
        self.send_response(200)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)


def serve(port: int, assets: Optional[str] = None,
          host: str = "127.0.0.1") -> ThreadingHTTPServer:
    """Start the endpoint; returns the server (caller runs serve_forever
    or uses it as a handle in tests)."""
    handler = type("Handler", (_Handler,), {
        "assets_dir": Path(assets) if assets else None})
    server = ThreadingHTTPServer((host, port), handler)
    return server


def serve_forever(port: int, assets: Optional[str] = None) -> None:
    server = serve(port, assets)
    host, actual_port = server.server_address[:2]
    print(f"session endpoint on http://{host}:{actual_port}/api")
    try:
        server.serve_forever()
    except KeyboardInterrupt:  # pragma: no cover
        server.shutdown()
