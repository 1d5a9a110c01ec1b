"""HTTP session service: a human client schedules the robots over JSON.

Every session wraps one engine state.  The server only enumerates what
the engine allows and applies the client's chosen action, so the client
is exactly the adversary of the execution model: it decides who is
activated, when staged moves land, and how symmetric ties break.
"""

from __future__ import annotations

import secrets
import threading
import time
from dataclasses import dataclass, field
from typing import Literal, Optional

from fastapi import FastAPI, HTTPException
from fastapi.responses import PlainTextResponse
from pydantic import BaseModel

from .cli import _sample_initial, trace_header
from .config import ConfigSyntaxError, format_config, parse_config
from .engine import (
    EngineState,
    InitError,
    SchedulerContractError,
    Trace,
    TraceEvent,
    action_from_json,
    enabled_actions,
    explored,
    init,
    is_quiescent,
    step,
)
from .grid import InvalidDimension, parse_grid
from .protocols.registry import UnsupportedInstance, get_protocol, protocol_names


class CreateSession(BaseModel):
    grid: str
    k: int
    protocol: Optional[str] = None
    model: Literal["atom", "corda"] = "corda"
    mode: Literal["weak", "strong"] = "weak"
    initial: Optional[str] = None
    seed: int = 0


class ActionBody(BaseModel):
    action: dict


@dataclass
class Session:
    id: str
    state: EngineState
    header: dict
    history: list[tuple[dict, EngineState]] = field(default_factory=list)
    events: list[TraceEvent] = field(default_factory=list)
    touched: float = field(default_factory=time.monotonic)
    lock: threading.Lock = field(default_factory=threading.Lock)


def _state_json(s: Session) -> dict:
    st = s.state
    return {
        "id": s.id,
        "grid": str(st.grid),
        "model": st.model,
        "mode": st.mode,
        "step": st.step,
        "robots": [[x, y] for x, y in st.robots],
        "config": [[x, y, n] for (x, y), n in st.config().counts],
        "pending": [
            None
            if p is None
            else {
                "targets": [[x, y] for x, y in sorted(p.targets)],
                "snapshot_step": p.snapshot_step,
                "age": st.step - p.snapshot_step,
            }
            for p in st.pending
        ],
        "visited": [[x, y] for x, y in sorted(st.visited)],
        "enabled_actions": [a.to_json() for a in enabled_actions(st)],
        "quiescent": is_quiescent(st),
        "explored": explored(st),
    }


def create_app(static_dir: Optional[str] = None, ttl: float = 3600.0) -> FastAPI:
    app = FastAPI(title="gridexplore sessions")
    sessions: dict[str, Session] = {}
    store_lock = threading.Lock()

    def _purge() -> None:
        now = time.monotonic()
        for sid in [s for s, v in sessions.items() if now - v.touched > ttl]:
            del sessions[sid]

    def _get(sid: str) -> Session:
        with store_lock:
            _purge()
            s = sessions.get(sid)
        if s is None:
            raise HTTPException(404, f"no session {sid}")
        s.touched = time.monotonic()
        return s

    @app.get("/meta/protocols")
    def meta_protocols():
        return {"protocols": protocol_names()}

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSession):
        try:
            grid = parse_grid(body.grid)
            protocol = get_protocol(grid, body.k, body.protocol)
            if body.initial is not None:
                initial = parse_config(grid, body.initial)
            else:
                initial = _sample_initial(grid, body.k, body.seed)
            state = init(grid, initial, protocol, body.model, body.mode)
        except (
            InvalidDimension,
            UnsupportedInstance,
            ConfigSyntaxError,
            InitError,
            ValueError,
        ) as e:
            raise HTTPException(422, str(e))
        header = trace_header(
            grid, body.k, body.protocol, body.model, body.mode, format_config(initial)
        )
        s = Session(id=secrets.token_hex(8), state=state, header=header)
        with store_lock:
            _purge()
            sessions[s.id] = s
        return {"id": s.id, "state": _state_json(s)}

    @app.get("/sessions/{sid}")
    def get_session(sid: str):
        return _state_json(_get(sid))

    @app.post("/sessions/{sid}/actions")
    def post_action(sid: str, body: ActionBody):
        s = _get(sid)
        with s.lock:
            try:
                action = action_from_json(body.action)
                new_state, event = step(s.state, action)
            except (SchedulerContractError, KeyError, TypeError, ValueError) as e:
                raise HTTPException(409, str(e))
            s.history.append((body.action, s.state))
            s.events.append(event)
            s.state = new_state
        return _state_json(s)

    @app.post("/sessions/{sid}/undo")
    def undo(sid: str):
        s = _get(sid)
        with s.lock:
            if not s.history:
                raise HTTPException(409, "nothing to undo")
            _, prior = s.history.pop()
            s.events.pop()
            s.state = prior
        return _state_json(s)

    @app.delete("/sessions/{sid}")
    def delete_session(sid: str):
        with store_lock:
            if sid not in sessions:
                raise HTTPException(404, f"no session {sid}")
            del sessions[sid]
        return {"deleted": True}

    @app.get("/sessions/{sid}/trace", response_class=PlainTextResponse)
    def get_trace(sid: str):
        s = _get(sid)
        with s.lock:
            trace = Trace(
                header=s.header,
                events=list(s.events),
                explored=explored(s.state),
                quiescent=is_quiescent(s.state),
                timeout=False,
            )
            return "\n".join(trace.to_lines()) + "\n"

    if static_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="static")

    return app
