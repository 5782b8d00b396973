"""HTTP layer: session CRUD, control commands, snapshots, live frame streams.

The API is deliberately small. Configs and control payloads are parsed by
hand so every validation failure comes back as a 422 naming the offending
dotted fields, matching the ConfigurationError contract used everywhere else.
Frames stream as server-sent events with periodic comment keepalives so
proxies do not drop quiet connections.
"""
from __future__ import annotations

import json
from contextlib import asynccontextmanager
from pathlib import Path

import numpy as np
from fastapi import FastAPI, HTTPException, Request
from fastapi.responses import HTMLResponse, JSONResponse, StreamingResponse
from fastapi.staticfiles import StaticFiles

from .errors import ConfigurationError, DomainError
from .session import FrameBuffer, Session, SessionManager, config_from_dict

KEEPALIVE_SECONDS = 15.0

_STATIC_DIR = Path(__file__).parent / "static"

_PLACEHOLDER = """<!doctype html>
<title>blochboard</title>
<h1>blochboard API</h1>
<p>The web UI bundle is not installed. The JSON API lives under /sessions.</p>
"""


def _error_payload(message: str, fields: list[str] | None = None) -> dict:
    detail = {"message": message}
    if fields:
        detail["fields"] = fields
    return {"detail": detail}


def _json_default(value):
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    raise TypeError(f"not JSON serializable: {type(value)!r}")


def _encode(frame: dict) -> str:
    return json.dumps(frame, separators=(",", ":"), default=_json_default)


async def _read_json_object(request: Request) -> dict:
    try:
        body = await request.body()
        payload = json.loads(body) if body else {}
    except json.JSONDecodeError:
        raise ConfigurationError("request body is not valid JSON", fields=["body"])
    if not isinstance(payload, dict):
        raise ConfigurationError("request body must be a JSON object", fields=["body"])
    return payload


def _control_args(payload: dict) -> dict:
    problems = []
    known = {"command", "seed", "lr", "batch_size"}
    problems.extend(sorted(k for k in payload if k not in known))
    command = payload.get("command")
    if not isinstance(command, str):
        problems.append("command")
    args = {}
    for key, kind in (("seed", int), ("lr", float), ("batch_size", int)):
        if key not in payload or payload[key] is None:
            continue
        value = payload[key]
        ok = not isinstance(value, bool) and isinstance(value, (int, float))
        if kind is int:
            ok = ok and float(value).is_integer()
        if not ok:
            problems.append(key)
            continue
        args[key] = kind(value)
    if problems:
        raise ConfigurationError(
            "invalid control payload: " + ", ".join(problems), fields=problems
        )
    return {"command": command, **args}


def _sse_stream(session: Session, buf: FrameBuffer, keepalive: float):
    try:
        while not buf.closed:
            frame = buf.take(timeout=keepalive)
            if frame is None:
                if buf.closed:
                    break
                yield ": keepalive\n\n"
                continue
            yield f"data: {_encode(frame)}\n\n"
    finally:
        session.unsubscribe(buf)


def create_app(
    manager: SessionManager | None = None,
    keepalive_seconds: float = KEEPALIVE_SECONDS,
) -> FastAPI:
    """Build the application; pass a manager to control ttl/tick behavior."""
    owned = manager is None
    if owned:
        manager = SessionManager()

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        yield
        if owned:
            manager.close_all()

    app = FastAPI(title="blochboard", lifespan=lifespan)
    app.state.manager = manager

    @app.exception_handler(ConfigurationError)
    async def on_config_error(request: Request, exc: ConfigurationError):
        return JSONResponse(
            status_code=422, content=_error_payload(str(exc), exc.fields)
        )

    @app.exception_handler(DomainError)
    async def on_domain_error(request: Request, exc: DomainError):
        return JSONResponse(status_code=409, content=_error_payload(str(exc)))

    def _session(session_id: str) -> Session:
        try:
            return manager.get(session_id)
        except KeyError:
            raise HTTPException(
                status_code=404, detail={"message": f"unknown session {session_id!r}"}
            )

    @app.post("/sessions", status_code=201)
    async def create_session(request: Request):
        payload = await _read_json_object(request)
        config = config_from_dict(payload)
        session = manager.create(config)
        return {"session_id": session.session_id, "frame": session.snapshot()}

    @app.get("/sessions")
    async def list_sessions():
        return {"sessions": manager.ids()}

    @app.get("/sessions/{session_id}")
    async def snapshot(session_id: str):
        return _session(session_id).snapshot()

    @app.delete("/sessions/{session_id}", status_code=204)
    async def remove_session(session_id: str):
        try:
            manager.remove(session_id)
        except KeyError:
            raise HTTPException(
                status_code=404, detail={"message": f"unknown session {session_id!r}"}
            )

    @app.post("/sessions/{session_id}/control")
    async def control(session_id: str, request: Request):
        session = _session(session_id)
        payload = await _read_json_object(request)
        args = _control_args(payload)
        try:
            return session.control(
                args["command"],
                seed=args.get("seed"),
                lr=args.get("lr"),
                batch_size=args.get("batch_size"),
            )
        except ValueError as exc:
            if isinstance(exc, ConfigurationError):
                raise
            raise ConfigurationError(str(exc), fields=["command"])

    @app.get("/sessions/{session_id}/stream")
    async def stream(session_id: str):
        session = _session(session_id)
        buf = session.subscribe()
        return StreamingResponse(
            _sse_stream(session, buf, keepalive_seconds),
            media_type="text/event-stream",
            headers={"Cache-Control": "no-cache", "X-Accel-Buffering": "no"},
        )

    if _STATIC_DIR.is_dir() and (_STATIC_DIR / "index.html").is_file():
        app.mount("/", StaticFiles(directory=_STATIC_DIR, html=True), name="ui")
    else:

        @app.get("/", response_class=HTMLResponse)
        async def index():
            return _PLACEHOLDER

    return app
