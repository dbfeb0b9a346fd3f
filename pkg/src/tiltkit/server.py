"""HTTP session service for interactive mutation of tilting sets."""

from __future__ import annotations

import json
import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.encoders import jsonable_encoder
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from . import dynkin as dk
from . import graph as gr
from . import lattice as lat
from . import rigid as rg
from . import seeds as sd
from . import sheaves as sh


class BackendSpec(BaseModel):
    """Backend selector: exactly one of weights (coh) or quiver (dynkin)."""

    kind: str
    weights: str | None = None
    quiver: str | None = None


class CreateSessionBody(BaseModel):
    backend: BackendSpec
    window: str | None = None


class MutateBody(BaseModel):
    index: int


class ReachBody(BaseModel):
    m: str
    n: str


@dataclass
class _Session:
    """One interactive mutation walk, matrix carried alongside the set."""

    id: str
    backend: rg.Backend
    backend_doc: dict
    window: rg.SearchWindow | None
    current: rg.RigidSet
    matrix: sd.ExchangeMatrix
    history: list[gr.PathStep] = field(default_factory=list)
    touched: float = field(default_factory=time.monotonic)
    lock: threading.Lock = field(default_factory=threading.Lock)


def _build_backend(spec: BackendSpec) -> tuple[rg.Backend, dict]:
    if spec.kind == "coh":
        if not spec.weights or spec.quiver:
            raise ValueError("coh backend takes a weights literal and no quiver")
        w = lat.WeightType.parse(spec.weights)
        return rg.CohBackend(w), {"kind": "coh", "weights": str(w)}
    if spec.kind == "dynkin":
        if not spec.quiver or spec.weights:
            raise ValueError("dynkin backend takes a quiver literal and no weights")
        q = dk.parse_quiver(spec.quiver)
        return rg.DynkinBackend(q), {"kind": "dynkin", "quiver": spec.quiver}
    raise ValueError(f"unknown backend kind {spec.kind!r}")


def _initial_matrix(backend: rg.Backend, start: rg.RigidSet) -> sd.ExchangeMatrix:
    """Exchange matrix of the canonical set, rows in element order.

    Dynkin sets read it off the quiver.  coh sets get the arm-and-relation
    quiver of the canonical set: one arrow chain per weight running from the
    degree-0 bundle up to the degree-c bundle (a weight of 1 contributes a
    direct arrow), plus t-2 return arrows from degree c back to degree 0.
    """
    if isinstance(backend, rg.DynkinBackend):
        return sd.ExchangeMatrix.from_quiver(backend.quiver)
    w = backend.weight
    pos = {e: i for i, e in enumerate(start.elements)}
    n = len(start.elements)
    rows = [[0] * n for _ in range(n)]

    def arrow(a: sh.SheafObject, b: sh.SheafObject) -> None:
        i, j = pos[a], pos[b]
        rows[i][j] += 1
        rows[j][i] -= 1

    origin = sh.LineBundle(lat.zero(w))
    top = sh.LineBundle(lat.canonical(w))
    for i, p in enumerate(w.p, start=1):
        prev: sh.SheafObject = origin
        for j in range(1, p):
            cur = sh.LineBundle(lat.scalar_mul(j, lat.gen(w, i)))
            arrow(prev, cur)
            prev = cur
        arrow(prev, top)
    for _ in range(w.t - 2):
        arrow(top, origin)
    return sd.ExchangeMatrix(tuple(tuple(r) for r in rows))


def _state_doc(sess: _Session) -> dict:
    return {
        "id": sess.id,
        "backend": sess.backend_doc,
        "key": sess.current.key,
        "rank": len(sess.current.elements),
        "elements": [str(e) for e in sess.current.elements],
        "matrix": [list(r) for r in sess.matrix.rows],
        "history": [
            {"index": s.index, "out": s.out, "into": s.into} for s in sess.history
        ],
    }


def _apply(sess: _Session, index: int) -> tuple[str, str]:
    """One mutation step: advance the set and transport the matrix."""
    after = rg.mutate(sess.current, index, window=sess.window)
    out = str(sess.current.elements[index])
    added = next(e for e in after.elements if e not in sess.current.elements)
    replaced = list(sess.current.elements)
    replaced[index] = added
    # rows follow element order, so the mutated matrix is re-sorted with them
    perm = tuple(after.elements.index(e) for e in replaced)
    sess.matrix = sess.matrix.mutate(index).permuted(perm)
    sess.current = after
    sess.history.append(gr.PathStep(index, out, str(added)))
    return out, str(added)


def _ext_pair(backend: rg.Backend, a, b) -> list[int]:
    if isinstance(backend, rg.CohBackend):
        return [sh.ext1_dim(a, b), sh.ext1_dim(b, a)]
    return [dk.ext1_c(backend.quiver, a, b), dk.ext1_c(backend.quiver, b, a)]


def create_app(ui_dir: str | None = None, session_ttl: float = 3600.0) -> FastAPI:
    """Build the service; ui_dir (or frontend/dist if present) is mounted at /."""
    app = FastAPI(title="tiltkit")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions: dict[str, _Session] = {}
    store_lock = threading.Lock()

    @app.exception_handler(RequestValidationError)
    async def _invalid(request, exc):  # noqa: ANN001
        detail = {"error": "bad_request", "detail": jsonable_encoder(exc.errors())}
        return JSONResponse(status_code=400, content={"detail": detail})

    def _sweep() -> None:
        now = time.monotonic()
        with store_lock:
            dead = [k for k, s in sessions.items() if now - s.touched > session_ttl]
            for k in dead:
                del sessions[k]

    def _get(sid: str) -> _Session:
        _sweep()
        with store_lock:
            sess = sessions.get(sid)
        if sess is None:
            raise HTTPException(404, detail={"error": "unknown_session", "id": sid})
        sess.touched = time.monotonic()
        return sess

    @app.get("/api/v1/health")
    def health() -> dict:
        return {"status": "ok", "sessions": len(sessions)}

    @app.post("/api/v1/sessions", status_code=201)
    def create_session(body: CreateSessionBody) -> dict:
        try:
            backend, doc = _build_backend(body.backend)
            window = rg.SearchWindow.parse(body.window) if body.window else None
            start = rg.canonical_tilting(backend)
        except ValueError as exc:
            raise HTTPException(
                400, detail={"error": "bad_request", "detail": str(exc)}
            )
        sess = _Session(
            id=uuid.uuid4().hex[:12],
            backend=backend,
            backend_doc=doc,
            window=window,
            current=start,
            matrix=_initial_matrix(backend, start),
        )
        _sweep()
        with store_lock:
            sessions[sess.id] = sess
        return _state_doc(sess)

    @app.get("/api/v1/sessions/{sid}")
    def get_state(sid: str) -> dict:
        sess = _get(sid)
        with sess.lock:
            return _state_doc(sess)

    @app.post("/api/v1/sessions/{sid}/mutate")
    def mutate_session(sid: str, body: MutateBody) -> dict:
        sess = _get(sid)
        with sess.lock:
            if not 0 <= body.index < len(sess.current.elements):
                raise HTTPException(
                    400,
                    detail={
                        "error": "bad_index",
                        "detail": f"index {body.index} out of range",
                    },
                )
            try:
                out, into = _apply(sess, body.index)
            except rg.ComplementNotInWindow as exc:
                raise HTTPException(
                    409,
                    detail={
                        "error": "complement_not_in_window",
                        "index": body.index,
                        "window": str(exc.window) if exc.window else None,
                        "detail": str(exc),
                    },
                )
            doc = _state_doc(sess)
            doc["exchanged"] = {"index": body.index, "out": out, "into": into}
            return doc

    @app.post("/api/v1/sessions/{sid}/undo")
    def undo(sid: str) -> dict:
        sess = _get(sid)
        with sess.lock:
            if not sess.history:
                raise HTTPException(
                    400, detail={"error": "empty_history", "detail": "nothing to undo"}
                )
            steps = sess.history[:-1]
            sess.current = rg.canonical_tilting(sess.backend)
            sess.matrix = _initial_matrix(sess.backend, sess.current)
            sess.history = []
            for st in steps:
                out, into = _apply(sess, st.index)
                if (out, into) != (st.out, st.into):
                    raise HTTPException(
                        500,
                        detail={
                            "error": "replay_diverged",
                            "detail": f"expected {st.out}->{st.into}, got {out}->{into}",
                        },
                    )
            return _state_doc(sess)

    @app.get("/api/v1/sessions/{sid}/neighborhood")
    def neighborhood(sid: str, depth: int = 1, budget: int = 400) -> dict:
        sess = _get(sid)
        if not 0 <= depth <= 6:
            raise HTTPException(
                400,
                detail={"error": "bad_depth", "detail": "depth must be in 0..6"},
            )
        if not 1 <= budget <= 2000:
            raise HTTPException(
                400,
                detail={"error": "bad_budget", "detail": "budget must be in 1..2000"},
            )
        with sess.lock:
            g = gr.explore(
                sess.current, budget=budget, window=sess.window, max_depth=depth
            )
            doc = json.loads(g.to_json())
            doc["center"] = sess.current.key
            return doc

    @app.post("/api/v1/sessions/{sid}/reach")
    def reach_chain(sid: str, body: ReachBody) -> dict:
        sess = _get(sid)
        try:
            m = sess.backend.parse(body.m)
            n = sess.backend.parse(body.n)
            cert = gr.reach(sess.backend, m, n, window=sess.window)
        except ValueError as exc:
            raise HTTPException(
                400, detail={"error": "bad_request", "detail": str(exc)}
            )
        except (gr.NotReachable, gr.NotFoundWithinBudget) as exc:
            raise HTTPException(
                409, detail={"error": "not_reachable", "detail": str(exc)}
            )
        doc = json.loads(cert.to_json())
        doc["links"] = [
            {"a": str(u), "b": str(v), "ext1": _ext_pair(sess.backend, u, v)}
            for u, v in zip(cert.chain, cert.chain[1:])
        ]
        doc["ok"] = True
        return doc

    @app.get("/api/v1/sessions/{sid}/export")
    def export(sid: str, format: str = "json", depth: int = 2, budget: int = 400):
        sess = _get(sid)
        if format not in ("json", "dot"):
            raise HTTPException(
                400,
                detail={"error": "bad_format", "detail": "format must be json or dot"},
            )
        with sess.lock:
            g = gr.explore(
                sess.current, budget=budget, window=sess.window, max_depth=depth
            )
        if format == "dot":
            return PlainTextResponse(g.to_dot())
        return JSONResponse(json.loads(g.to_json()))

    root = Path(ui_dir) if ui_dir else Path(__file__).resolve().parents[2] / "frontend" / "dist"
    if root.is_dir():
        app.mount("/", StaticFiles(directory=str(root), html=True), name="ui")
    return app
