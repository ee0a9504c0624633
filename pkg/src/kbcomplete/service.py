"""HTTP session service for interactive completion.

One session per expert; mutations are optimistic-concurrency controlled by a
revision number the client must echo back.  A mismatch (or a stale question
id) answers 409 and leaves the session untouched.  Counterexamples that fail
to refute the pending question answer 422 with the offending attribute names.

With a data directory configured, every mutation persists the session's
snapshot document, so a restarted server resumes where the experts left off.
"""

from __future__ import annotations

import json
import threading
import uuid
from pathlib import Path
from typing import Literal, Optional

from fastapi import Body, FastAPI, HTTPException, Response
from pydantic import BaseModel

from . import completion as co
from .concepts import to_text
from .errors import (
    CounterexampleError,
    FormatError,
    InputError,
    SessionStateError,
    StaleQuestionError,
)
from .formats import write_pcxt
from .parsing import parse_ontology, render_ontology
from .partial import PartialObjectDescription

__all__ = ["create_app", "serve"]


class CounterexampleBody(BaseModel):
    object: str
    present: list[str] = []
    absent: list[str] = []


class CreateSessionBody(BaseModel):
    ontology: Optional[str] = None
    names: Optional[list[str]] = None
    order: Optional[list[str]] = None
    snapshot: Optional[str] = None


class AnswerBody(BaseModel):
    revision: int
    questionId: int
    verdict: Literal["yes", "no"]
    counterexample: Optional[CounterexampleBody] = None


class UndoBody(BaseModel):
    revision: int
    eventIndex: int


class RevisionBody(BaseModel):
    revision: int


class _Entry:
    def __init__(self, session: co.CompletionSession):
        self.session = session
        self.revision = 1
        self.lock = threading.Lock()


def _question_json(question: Optional[co.Question]) -> Optional[dict]:
    if question is None:
        return None
    lhs = to_text(question.premise_concept())
    rhs = to_text(question.conclusion_concept())
    return {
        "id": question.id,
        "premise": sorted(question.implication.premise),
        "conclusion": sorted(question.implication.conclusion),
        "implicationText": str(question.implication),
        "gciText": f"{lhs} => {rhs}",
    }


def _event_json(index: int, event: co.Event) -> dict:
    if isinstance(event, co.YesEvent):
        return {
            "index": index,
            "kind": "yes",
            "premise": sorted(event.implication.premise),
            "conclusion": sorted(event.implication.conclusion),
            "implicationText": str(event.implication),
        }
    if isinstance(event, co.NoEvent):
        return {
            "index": index,
            "kind": "no",
            "premise": sorted(event.implication.premise),
            "conclusion": sorted(event.implication.conclusion),
            "implicationText": str(event.implication),
            "object": event.pod.object_id,
            "present": sorted(event.pod.present),
            "absent": sorted(event.pod.absent),
        }
    return {"index": index, "kind": "reorder", "order": list(event.order)}


def _context_json(session: co.CompletionSession) -> dict:
    pctx = session.state.pctx
    rows = []
    for pod in pctx.pods:
        cells = "".join(
            "+" if a in pod.present else "-" if a in pod.absent else "?"
            for a in pctx.attributes
        )
        rows.append({"object": pod.object_id, "cells": cells})
    return {"attributes": list(pctx.attributes), "rows": rows}


def _view(session_id: str, entry: _Entry, dropped: Optional[list] = None) -> dict:
    session = entry.session
    question = None
    if session.status is co.Status.RUNNING:
        question = _question_json(co.current_question(session))
    view = {
        "sessionId": session_id,
        "status": session.status.value,
        "revision": entry.revision,
        "names": list(session.names),
        "order": list(session.state.order),
        "question": question,
        "history": [_event_json(i, e) for i, e in enumerate(session.log)],
        "context": _context_json(session),
    }
    if dropped is not None:
        view["dropped"] = [
            {"index": d.index, "kind": _event_json(d.index, d.event)["kind"], "reason": d.reason}
            for d in dropped
        ]
    return view


def create_app(data_dir: Optional[str] = None, node_budget: int = co.DEFAULT_NODE_BUDGET) -> FastAPI:
    app = FastAPI(title="kbcomplete session service")
    sessions: dict[str, _Entry] = {}
    store = Path(data_dir) if data_dir is not None else None

    def _persist(session_id: str, entry: _Entry) -> None:
        if store is None:
            return
        store.mkdir(parents=True, exist_ok=True)
        (store / f"{session_id}.session").write_text(
            co.snapshot_text(entry.session), encoding="utf-8"
        )
        meta = {"revision": entry.revision, "paused": entry.session.status is co.Status.PAUSED}
        (store / f"{session_id}.meta.json").write_text(json.dumps(meta), encoding="utf-8")

    def _restore() -> None:
        if store is None or not store.is_dir():
            return
        for path in sorted(store.glob("*.session")):
            session_id = path.stem
            try:
                session, _dropped = co.resume(path.read_text(encoding="utf-8"), node_budget)
            except (FormatError, InputError):
                continue
            entry = _Entry(session)
            meta_path = store / f"{session_id}.meta.json"
            if meta_path.exists():
                meta = json.loads(meta_path.read_text(encoding="utf-8"))
                entry.revision = int(meta.get("revision", 1))
                if meta.get("paused") and session.status is co.Status.RUNNING:
                    entry.session = co.pause(session)[0]
            sessions[session_id] = entry

    _restore()

    def _entry(session_id: str) -> _Entry:
        entry = sessions.get(session_id)
        if entry is None:
            raise HTTPException(404, f"no session {session_id}")
        return entry

    def _check_revision(entry: _Entry, revision: int) -> None:
        if revision != entry.revision:
            raise HTTPException(
                409, f"stale revision {revision}; the session is at {entry.revision}"
            )

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionBody):
        try:
            if body.snapshot is not None:
                session, _dropped = co.resume(body.snapshot, node_budget)
            else:
                if body.ontology is None or body.names is None:
                    raise HTTPException(422, "provide ontology and names, or a snapshot")
                kb = parse_ontology(body.ontology)
                session = co.start(kb, body.names, body.order, node_budget)
        except (FormatError, InputError) as exc:
            raise HTTPException(422, str(exc)) from None
        session_id = uuid.uuid4().hex
        entry = _Entry(session)
        sessions[session_id] = entry
        _persist(session_id, entry)
        return {"sessionId": session_id, "revision": entry.revision}

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        return _view(session_id, _entry(session_id))

    @app.post("/sessions/{session_id}/answer")
    def answer(session_id: str, body: AnswerBody):
        entry = _entry(session_id)
        with entry.lock:
            _check_revision(entry, body.revision)
            try:
                if body.verdict == "yes":
                    entry.session = co.answer_yes(entry.session, body.questionId)
                else:
                    if body.counterexample is None:
                        raise HTTPException(422, "a no answer needs a counterexample")
                    ce = body.counterexample
                    pod = PartialObjectDescription(
                        ce.object, frozenset(ce.present), frozenset(ce.absent)
                    )
                    entry.session = co.answer_no(entry.session, body.questionId, pod)
            except (StaleQuestionError, SessionStateError) as exc:
                raise HTTPException(409, str(exc)) from None
            except CounterexampleError as exc:
                raise HTTPException(
                    422, {"message": str(exc), "attributes": list(exc.attributes)}
                ) from None
            except InputError as exc:
                raise HTTPException(422, str(exc)) from None
            entry.revision += 1
            _persist(session_id, entry)
            return _view(session_id, entry)

    @app.post("/sessions/{session_id}/undo")
    def undo(session_id: str, body: UndoBody):
        entry = _entry(session_id)
        with entry.lock:
            _check_revision(entry, body.revision)
            try:
                entry.session, dropped = co.undo(entry.session, body.eventIndex)
            except InputError as exc:
                raise HTTPException(422, str(exc)) from None
            entry.revision += 1
            _persist(session_id, entry)
            return _view(session_id, entry, dropped)

    @app.post("/sessions/{session_id}/postpone")
    def postpone(session_id: str, body: RevisionBody):
        entry = _entry(session_id)
        with entry.lock:
            _check_revision(entry, body.revision)
            try:
                question = co.current_question(entry.session)
                if question is None:
                    raise HTTPException(409, "session is complete; nothing to postpone")
                entry.session = co.postpone(entry.session, question.id)
            except SessionStateError as exc:
                raise HTTPException(409, str(exc)) from None
            entry.revision += 1
            _persist(session_id, entry)
            return _view(session_id, entry)

    @app.post("/sessions/{session_id}/pause")
    def pause(session_id: str, body: RevisionBody):
        entry = _entry(session_id)
        with entry.lock:
            _check_revision(entry, body.revision)
            try:
                entry.session, snapshot = co.pause(entry.session)
            except SessionStateError as exc:
                raise HTTPException(409, str(exc)) from None
            entry.revision += 1
            _persist(session_id, entry)
            return Response(
                snapshot,
                media_type="text/plain; charset=utf-8",
                headers={"X-Revision": str(entry.revision)},
            )

    @app.post("/sessions/{session_id}/resume")
    def resume(session_id: str, snapshot: str = Body(..., media_type="text/plain")):
        entry = _entry(session_id)
        with entry.lock:
            if entry.session.status is not co.Status.PAUSED:
                raise HTTPException(409, "session is not paused")
            try:
                entry.session, dropped = co.resume(snapshot, node_budget)
            except (FormatError, InputError) as exc:
                raise HTTPException(422, str(exc)) from None
            entry.revision += 1
            _persist(session_id, entry)
            return _view(session_id, entry, dropped)

    @app.get("/sessions/{session_id}/export")
    def export(session_id: str):
        entry = _entry(session_id)
        session = entry.session
        return {
            "ontology": render_ontology(session.kb),
            "context": write_pcxt(session.state.pctx),
        }

    return app


def serve(
    port: int = 8000,
    data_dir: Optional[str] = None,
    node_budget: int = co.DEFAULT_NODE_BUDGET,
    host: str = "127.0.0.1",
) -> None:
    import uvicorn

    uvicorn.run(create_app(data_dir, node_budget), host=host, port=port, log_level="warning")
