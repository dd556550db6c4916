"""Embedded HTTP/JSON service for the browser explorer and other clients.

Sessions are in-memory with LRU eviction; mutations within one session
are serialized by a per-session lock, stateless endpoints are pure.
Errors use the shape {"error": code, "detail": text} with status
400/404/422.
"""

from __future__ import annotations

import secrets
import threading
from collections import OrderedDict

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .errors import (
    ClusterKitError,
    NotExchangeable,
    NotSkewSymmetrizable,
    ParseError,
)
from .morphism import check_morphism, morphism_from_json
from .pairs import (
    classify_cotorsion_pairs,
    component_report,
    enumerate_complete_pairs,
)
from .quiver import quiver_of_seed, to_dot
from .reports import decomposition_json, graph_json, pair_json, verdict_json
from .seed import (
    Seed,
    apply_sequence,
    digest,
    enumerate_class,
    mutate,
    seed_from_json,
    seed_to_json,
    validate,
)

SESSION_CAP = 256
GRAPH_RADIUS_DEFAULT = 2
GRAPH_SEED_CAP = 128


class ApiError(Exception):
    def __init__(self, status: int, code: str, detail: str):
        super().__init__(detail)
        self.status = status
        self.code = code
        self.detail = detail


class Session:
    def __init__(self, sid: str, root: Seed):
        self.id = sid
        self.root = root
        self.current = root
        self.history = []  # (variable name, digest of the resulting seed)
        self.lock = threading.Lock()


class SessionStore:
    """LRU-evicting session table; all mutations behind one lock."""

    def __init__(self, cap: int = SESSION_CAP):
        self.cap = cap
        self._lock = threading.Lock()
        self._table: OrderedDict = OrderedDict()

    def create(self, root: Seed) -> Session:
        sid = secrets.token_hex(8)
        session = Session(sid, root)
        with self._lock:
            self._table[sid] = session
            while len(self._table) > self.cap:
                self._table.popitem(last=False)
        return session

    def get(self, sid: str) -> Session:
        with self._lock:
            if sid not in self._table:
                raise ApiError(404, "unknown_session", f"no session {sid}")
            self._table.move_to_end(sid)
            return self._table[sid]


def _state_payload(session: Session) -> dict:
    seed = session.current
    rows = seed.rows
    quiver = quiver_of_seed(seed, validate(seed))
    return {
        "session": session.id,
        "seed": seed_to_json(seed),
        "digest": digest(seed),
        "quiver_dot": to_dot(quiver),
        "arrows": {
            "valued": [
                {
                    "source": a.source.name,
                    "target": a.target.name,
                    "v": [a.v1, a.v2],
                }
                for a in quiver.valued_arrows
            ],
            "frozen": [
                {"source": a.source.name, "target": a.target.name, "mult": a.mult}
                for a in quiver.frozen_arrows
            ],
        },
        "exchangeable": [v.name for v in seed.matrix.ex],
        "frozen": [v.name for v in seed.matrix.fx],
        "variables": {rows[i].name: str(seed.values[i]) for i in range(len(rows))},
        "history": [
            {"variable": name, "digest": dg} for name, dg in session.history
        ],
    }


async def _json_body(request: Request):
    try:
        return await request.json()
    except Exception:
        raise ApiError(400, "bad_json", "request body is not valid JSON") from None


def _parse_seed(obj) -> Seed:
    try:
        seed = seed_from_json(obj)
        validate(seed)
        return seed
    except (ParseError, NotSkewSymmetrizable) as exc:
        raise ApiError(400, type(exc).__name__, str(exc)) from None


def create_app(store: SessionStore | None = None) -> FastAPI:
    app = FastAPI(title="clusterkit", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    sessions = store or SessionStore()

    @app.exception_handler(ApiError)
    async def api_error(_, exc: ApiError):
        return JSONResponse(
            status_code=exc.status,
            content={"error": exc.code, "detail": exc.detail},
        )

    @app.exception_handler(ClusterKitError)
    async def kit_error(_, exc: ClusterKitError):
        return JSONResponse(
            status_code=400,
            content={"error": type(exc).__name__, "detail": str(exc)},
        )

    @app.post("/sessions", status_code=201)
    async def create_session(request: Request):
        seed = _parse_seed(await _json_body(request))
        session = sessions.create(seed)
        return _state_payload(session)

    @app.get("/sessions/{sid}")
    async def get_session(sid: str):
        return _state_payload(sessions.get(sid))

    @app.post("/sessions/{sid}/mutate")
    async def mutate_session(sid: str, request: Request):
        body = await _json_body(request)
        name = body.get("variable") if isinstance(body, dict) else None
        if not isinstance(name, str):
            raise ApiError(400, "bad_request", 'body must be {"variable": name}')
        session = sessions.get(sid)
        with session.lock:
            try:
                session.current = mutate(session.current, name)
            except NotExchangeable as exc:
                raise ApiError(422, "NotExchangeable", str(exc)) from None
            session.history.append((name, digest(session.current)))
            return _state_payload(session)

    @app.post("/sessions/{sid}/undo")
    async def undo(sid: str):
        session = sessions.get(sid)
        with session.lock:
            if not session.history:
                raise ApiError(400, "nothing_to_undo", "history is empty")
            session.history.pop()
            session.current = apply_sequence(
                session.root, [name for name, _ in session.history]
            )
            return _state_payload(session)

    @app.get("/sessions/{sid}/graph")
    async def graph(sid: str, budget: int = GRAPH_RADIUS_DEFAULT):
        session = sessions.get(sid)
        with session.lock:
            current = session.current
        mclass = enumerate_class(
            current, max_seeds=GRAPH_SEED_CAP, max_depth=max(0, budget)
        )
        return graph_json(mclass, current=digest(current))

    @app.post("/check-morphism")
    async def check(request: Request):
        body = await _json_body(request)
        try:
            spec = morphism_from_json(body)
        except ParseError as exc:
            raise ApiError(400, "ParseError", str(exc)) from None
        depth = body.get("depth") if isinstance(body, dict) else None
        verdict = check_morphism(spec, depth=depth)
        return verdict_json(verdict)

    @app.post("/decompose")
    async def decompose_endpoint(request: Request):
        seed = _parse_seed(await _json_body(request))
        return decomposition_json(seed)

    @app.post("/complete-pairs")
    async def complete_pairs(request: Request):
        body = await _json_body(request)
        if not isinstance(body, dict) or "seed" not in body:
            raise ApiError(400, "bad_request", 'body must contain "seed"')
        seed = _parse_seed(body["seed"])
        if body.get("all"):
            classification = classify_cotorsion_pairs(seed)
            return {
                "classifications": [
                    {
                        "freezing": list(ex0),
                        **component_report(seed, ex0),
                        "pairs": [pair_json(p) for p in pairs],
                    }
                    for ex0, pairs in classification.items()
                ]
            }
        freezing = body.get("freeze", [])
        if not isinstance(freezing, list):
            raise ApiError(400, "bad_request", '"freeze" must be a list of names')
        try:
            pairs = enumerate_complete_pairs(seed, freezing)
        except (NotExchangeable, ValueError) as exc:
            raise ApiError(422, "NotExchangeable", str(exc)) from None
        return {
            **component_report(seed, freezing),
            "pairs": [pair_json(p) for p in pairs],
        }

    return app
