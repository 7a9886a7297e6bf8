"""Session-oriented HTTP API for the interactive feedback loop.

One collection per server process.  Each session persists as an append-only
JSONL log (one record per mutating call) replayed on startup, so state
survives restarts.  Requests to the same session are serialized; the index is
immutable and read lock-free.
"""

from __future__ import annotations

import json
import secrets
import threading
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from pertinex.corpus import Collection, QueryRecord, stats
from pertinex.feedback import (
    DEFAULT_EXPANSION_K,
    ExpandedQuery,
    Method,
    build_expanded_query,
    score_expanded,
)
from pertinex.scoring import Index, ScoredList, build_index, score_query


class ServiceError(Exception):
    def __init__(self, status: int, error: str, detail: str):
        self.status = status
        self.error = error
        self.detail = detail


@dataclass
class Session:
    session_id: str
    goals: tuple[str, ...]
    judged: list[str] = field(default_factory=list)  # insertion-ordered, unique
    seen: set[str] = field(default_factory=set)      # every object id ever returned
    method: str = "none"
    expanded: ExpandedQuery | None = None
    last_results: ScoredList = field(default_factory=list)
    iteration: int = 0
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)


class SessionStore:
    """File-backed store: one JSONL log per session, replayed on construction."""

    def __init__(self, index: Index, directory: str | Path):
        self.index = index
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self._sessions: dict[str, Session] = {}
        self._store_lock = threading.Lock()
        for log in sorted(self.directory.glob("*.jsonl")):
            self._replay(log)

    def _log_path(self, session_id: str) -> Path:
        return self.directory / f"{session_id}.jsonl"

    def _append(self, session_id: str, record: dict) -> None:
        with open(self._log_path(session_id), "a", encoding="utf-8") as fh:
            fh.write(json.dumps(record, sort_keys=True) + "\n")

    def _replay(self, log: Path) -> None:
        session = None
        for line in log.read_text(encoding="utf-8").splitlines():
            record = json.loads(line)
            op = record["op"]
            if op == "create":
                session = self._apply_create(record["session_id"], tuple(record["goals"]))
            elif op == "mark":
                self._apply_mark(session, record["object_ids"])
            elif op == "expand":
                self._apply_expand(session, record["method"], record["k"])

    # -- state transitions (pure of I/O; used by both live calls and replay) --

    def _apply_create(self, session_id: str, goals: tuple[str, ...]) -> Session:
        results = score_query(self.index, QueryRecord(id=session_id, goals=goals))
        session = Session(session_id=session_id, goals=goals, last_results=results,
                          seen={r.object_id for r in results})
        self._sessions[session_id] = session
        return session

    def _apply_mark(self, session: Session, object_ids: list[str]) -> None:
        for oid in object_ids:
            if oid not in session.judged:
                session.judged.append(oid)

    def _apply_expand(self, session: Session, method: str, k: int) -> None:
        eq = build_expanded_query(
            self.index, set(session.judged),
            QueryRecord(id=session.session_id, goals=session.goals),
            Method(method), k=k,
        )
        reranked = score_expanded(self.index, eq)
        judged = set(session.judged)
        session.last_results = [r for r in reranked if r.object_id not in judged]
        session.seen.update(r.object_id for r in session.last_results)
        session.method = method
        session.expanded = eq
        session.iteration += 1

    # -- public operations --

    def create(self, goals: list[str]) -> Session:
        if not goals:
            raise ServiceError(400, "empty_query", "query must contain at least one goal")
        session_id = secrets.token_hex(16)
        with self._store_lock:
            session = self._apply_create(session_id, tuple(goals))
            self._append(session_id, {"op": "create", "session_id": session_id, "goals": goals})
        return session

    def get(self, session_id: str) -> Session:
        session = self._sessions.get(session_id)
        if session is None:
            raise ServiceError(404, "unknown_session", f"no session {session_id!r}")
        return session

    def mark(self, session_id: str, object_ids: list[str]) -> Session:
        session = self.get(session_id)
        with session.lock:
            for oid in object_ids:
                if oid not in session.seen:
                    raise ServiceError(
                        400, "unseen_object",
                        f"object {oid!r} was never returned in this session",
                    )
            self._apply_mark(session, object_ids)
            self._append(session_id, {"op": "mark", "object_ids": object_ids})
        return session

    def expand(self, session_id: str, method: str, k: int) -> Session:
        session = self.get(session_id)
        with session.lock:
            if not session.judged:
                raise ServiceError(409, "empty_judged_set", "mark at least one object first")
            self._apply_expand(session, method, k)
            self._append(session_id, {"op": "expand", "method": method, "k": k})
        return session


class CreateSessionRequest(BaseModel):
    goals: list[str]


class FeedbackRequest(BaseModel):
    object_ids: list[str]


class ExpandRequest(BaseModel):
    method: str
    k: int = DEFAULT_EXPANSION_K


def _results_json(results: ScoredList) -> list[dict]:
    return [{"object_id": r.object_id, "score": r.score} for r in results]


def _session_json(session: Session) -> dict:
    doc = {
        "session_id": session.session_id,
        "goals": list(session.goals),
        "judged": list(session.judged),
        "method": session.method,
        "iteration": session.iteration,
        "results": _results_json(session.last_results),
    }
    if session.expanded is not None:
        doc["expanded"] = {
            "original": list(session.expanded.original),
            "added": [
                {"goal": g, "weight": session.expanded.weights[g]}
                for g in session.expanded.added
            ],
        }
    return doc


def create_app(collection: Collection, session_dir: str | Path) -> FastAPI:
    app = FastAPI(title="pertinex")
    index = build_index(collection)
    store = SessionStore(index, session_dir)
    app.state.store = store

    @app.exception_handler(ServiceError)
    async def service_error_handler(request, exc: ServiceError):
        return JSONResponse(status_code=exc.status,
                            content={"error": exc.error, "detail": exc.detail})

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionRequest):
        session = store.create(body.goals)
        return {"session_id": session.session_id,
                "results": _results_json(session.last_results)}

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        return _session_json(store.get(session_id))

    @app.post("/sessions/{session_id}/feedback")
    def mark_pertinent(session_id: str, body: FeedbackRequest):
        return _session_json(store.mark(session_id, body.object_ids))

    @app.post("/sessions/{session_id}/expand")
    def expand(session_id: str, body: ExpandRequest):
        if body.method not in ("prf", "ppf"):
            raise ServiceError(400, "bad_method", "method must be 'prf' or 'ppf'")
        session = store.expand(session_id, body.method, body.k)
        eq = session.expanded
        return {
            "added": [{"goal": g, "weight": eq.weights[g]} for g in eq.added],
            "results": _results_json(session.last_results),
        }

    @app.get("/collection/stats")
    def collection_stats():
        s = stats(collection)
        return {
            "object_count": s.object_count,
            "query_count": s.query_count,
            "vocabulary_size": s.vocabulary_size,
            "avg_goals_per_query": s.avg_goals_per_query,
            "avg_goals_per_object": s.avg_goals_per_object,
        }

    ui_dir = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    if ui_dir.is_dir():
        from fastapi.staticfiles import StaticFiles
        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
