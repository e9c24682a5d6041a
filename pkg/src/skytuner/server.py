"""HTTP+JSON API over live optimization sessions.

One rating may be in flight per session (guarded by a per-session lock);
session logs are rewritten after every accepted rating so a crash never
loses more than the pending proposal, which replays deterministically.
"""

from __future__ import annotations

import threading
from pathlib import Path

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .analysis import compare_groups, comparison_json
from .design_space import catalog_json, to_physical
from .engine import OptimizerConfig
from .objectives import RatingScaleError, RawRatings, aggregate
from .session import (
    CONDITIONS,
    SessionError,
    SessionState,
    export_session,
    import_session,
    start_session,
    submit_rating,
)
import json

from .analysis import session_front


class SessionStore:
    """In-memory registry with JSONL persistence per session."""

    def __init__(self, directory: str | Path | None = None):
        self.directory = Path(directory) if directory else None
        if self.directory:
            self.directory.mkdir(parents=True, exist_ok=True)
        self._sessions: dict[str, SessionState] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()
        if self.directory:
            for path in sorted(self.directory.glob("*.jsonl")):
                state = import_session(path)
                self._sessions[state.session_id] = state
                self._locks[state.session_id] = threading.Lock()

    def add(self, state: SessionState) -> None:
        with self._registry_lock:
            self._sessions[state.session_id] = state
            self._locks[state.session_id] = threading.Lock()
        self.persist(state)

    def get(self, session_id: str) -> SessionState:
        try:
            return self._sessions[session_id]
        except KeyError:
            raise HTTPException(status_code=404, detail=f"no session {session_id}")

    def lock(self, session_id: str) -> threading.Lock:
        return self._locks[session_id]

    def persist(self, state: SessionState) -> None:
        if self.directory:
            export_session(state, self.directory / f"{state.session_id}.jsonl")


class StartSessionBody(BaseModel):
    label: str = Field(min_length=1)
    condition: str
    rng_seed: int = 0


class RatingsBody(BaseModel):
    trust: float
    understanding: float
    mental_demand: float
    perceived_safety: list[float]
    acceptance_useful: float
    acceptance_satisfying: float
    aesthetics: float


def _design_payload(state: SessionState) -> dict:
    design = state.pending_design()
    return {
        "run_index": state.run_index,
        "phase": state.phase,
        "proposal_kind": state.proposal_kind(),
        "design": [float(v) for v in design],
        "physical": to_physical(design).to_dict(),
    }


def _summary_payload(state: SessionState) -> dict:
    payload = {
        "session_id": state.session_id,
        "participant_label": state.participant_label,
        "condition": state.condition,
        "created_at": state.created_at,
        "phase": state.phase,
        "complete": state.complete,
        "total_runs": state.config.total_runs,
        "runs_rated": len(state.records),
        "aggregate_trace": state.aggregate_trace(),
    }
    if not state.complete:
        payload.update(_design_payload(state))
    return payload


def create_app(store: SessionStore | None = None) -> FastAPI:
    store = store or SessionStore()
    app = FastAPI(title="skytuner", version="0.1.0")
    app.state.store = store

    @app.get("/catalog")
    def catalog() -> list:
        return json.loads(catalog_json())

    @app.post("/sessions")
    def create_session(body: StartSessionBody) -> dict:
        if body.condition not in CONDITIONS:
            raise HTTPException(
                status_code=422,
                detail=f"condition must be one of {list(CONDITIONS)}",
            )
        state = start_session(
            body.label,
            body.condition,
            OptimizerConfig(rng_seed=body.rng_seed),
        )
        store.add(state)
        return {"session_id": state.session_id, **_design_payload(state)}

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str) -> dict:
        return _summary_payload(store.get(session_id))

    @app.post("/sessions/{session_id}/ratings")
    def post_rating(session_id: str, body: RatingsBody) -> dict:
        state = store.get(session_id)
        lock = store.lock(session_id)
        if not lock.acquire(blocking=False):
            raise HTTPException(
                status_code=409, detail="a rating for this session is already in flight"
            )
        try:
            try:
                raw = RawRatings(
                    trust=body.trust,
                    understanding=body.understanding,
                    mental_demand=body.mental_demand,
                    perceived_safety=tuple(body.perceived_safety),
                    acceptance_useful=body.acceptance_useful,
                    acceptance_satisfying=body.acceptance_satisfying,
                    aesthetics=body.aesthetics,
                )
            except RatingScaleError as exc:
                raise HTTPException(status_code=400, detail=str(exc))
            try:
                result = submit_rating(state, raw)
            except SessionError as exc:
                raise HTTPException(status_code=409, detail=str(exc))
            store.persist(state)
            payload = {
                "complete": result.complete,
                "runs_rated": len(state.records),
                "aggregate": aggregate(state.records[-1].objectives),
            }
            if not result.complete:
                payload.update(_design_payload(state))
            return payload
        finally:
            lock.release()

    @app.get("/sessions/{session_id}/pareto")
    def get_pareto(session_id: str) -> dict:
        state = store.get(session_id)
        if not state.records:
            return {"session_id": session_id, "entries": []}
        front = session_front(state)
        entries = [
            {
                "run_index": state.records[idx].run_index,
                "design": [float(v) for v in state.records[idx].design],
                "objectives": [float(v) for v in state.records[idx].objectives],
            }
            for idx in front.source_indices
        ]
        return {"session_id": session_id, "entries": entries}

    @app.get("/analysis/compare")
    def compare(group_a: str, group_b: str) -> dict:
        ids_a = [s for s in group_a.split(",") if s]
        ids_b = [s for s in group_b.split(",") if s]
        if not ids_a or not ids_b:
            raise HTTPException(status_code=422, detail="both groups need session ids")
        try:
            comparison = compare_groups(
                [store.get(sid) for sid in ids_a],
                [store.get(sid) for sid in ids_b],
            )
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return json.loads(comparison_json(comparison))

    return app
