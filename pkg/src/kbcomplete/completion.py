"""Interactive knowledge base completion.

A completion session interrogates an expert about subsumptions between
conjunctions of chosen concept names, relative to a starting knowledge base.
Confirmed questions become terminology axioms; rejected ones contribute a
counterexample individual described by membership assertions.  The engine is
the partial-context exploration from :mod:`.partial`; the knowledge base
supplies the initial partial context through instance checks.

Sessions are event sourced.  The derived state (partial context, accepted
implications, grown knowledge base) is always the fold of the event log over
the initial knowledge base, so undoing an answer is dropping its event and
replaying, and a paused session serializes as just the inputs plus the log.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Optional, Protocol, Sequence, Union

from . import partial as _partial
from .concepts import Atomic, Concept, conj, neg
from .errors import (
    CounterexampleError,
    InputError,
    SessionStateError,
    SnapshotError,
    StaleQuestionError,
)
from .fca import FormalContext, Implication
from .formats import read_envelope, write_envelope
from .ontology import ABox, KnowledgeBase
from .parsing import parse_ontology, render_ontology
from .partial import ExplorationState, PartialContext, PartialObjectDescription
from .reasoner import DEFAULT_NODE_BUDGET, Verdict, abox_consistent, instance_check
from .semantics import Interpretation, context_of_interpretation

__all__ = [
    "YesEvent",
    "NoEvent",
    "ReorderEvent",
    "Event",
    "DroppedEvent",
    "Question",
    "Status",
    "CompletionSession",
    "induced_partial_context",
    "start",
    "current_question",
    "answer_yes",
    "answer_no",
    "postpone",
    "undo",
    "pause",
    "resume",
    "snapshot_text",
    "oracle_expert",
    "run_with_expert",
    "SNAPSHOT_TAG",
    "SNAPSHOT_VERSION",
]

SNAPSHOT_TAG = "kbcomplete-session"
SNAPSHOT_VERSION = 1


@dataclass(frozen=True)
class YesEvent:
    """The expert confirmed the implication; it became an axiom."""

    implication: Implication


@dataclass(frozen=True)
class NoEvent:
    """The expert rejected the implication with a counterexample."""

    implication: Implication
    pod: PartialObjectDescription


@dataclass(frozen=True)
class ReorderEvent:
    """The expert postponed a question by changing the attribute order."""

    order: tuple[str, ...]


Event = Union[YesEvent, NoEvent, ReorderEvent]


@dataclass(frozen=True)
class DroppedEvent:
    """A logged event that no longer applies after editing the history."""

    index: int
    event: Event
    reason: str


@dataclass(frozen=True)
class Question:
    """A pending implication question.

    The id is the position the answer will take in the event log, so it
    changes whenever the log does and a stale submission is detectable.
    """

    id: int
    implication: Implication

    def premise_concept(self) -> Concept:
        return conj([Atomic(m) for m in _sorted(self.implication.premise)])

    def conclusion_concept(self) -> Concept:
        return conj([Atomic(m) for m in _sorted(self.implication.conclusion)])


class Status(Enum):
    RUNNING = "running"
    PAUSED = "paused"
    COMPLETE = "complete"


@dataclass(frozen=True)
class CompletionSession:
    initial_kb: KnowledgeBase
    names: tuple[str, ...]
    initial_order: tuple[str, ...]
    log: tuple[Event, ...]
    initial_pctx: PartialContext = field(repr=False)
    state: ExplorationState = field(repr=False)
    kb: KnowledgeBase = field(repr=False)
    status: Status
    node_budget: int = field(default=DEFAULT_NODE_BUDGET, repr=False)


def _sorted(names: Iterable[str]) -> list[str]:
    return sorted(names)


def induced_partial_context(
    kb: KnowledgeBase,
    names: Sequence[str],
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> PartialContext:
    """Describe every ABox individual by what the knowledge base decides.

    An attribute is present when membership is entailed, absent when refuted,
    and open otherwise, so the rows are exactly the certain knowledge.
    """
    if not abox_consistent(kb, node_budget):
        raise InputError("the knowledge base is inconsistent; it decides everything")
    pods = []
    for individual in kb.abox.individuals():
        present, absent = set(), set()
        for name in names:
            verdict = instance_check(kb, individual, Atomic(name), node_budget=node_budget)
            if verdict.status is Verdict.ENTAILED:
                present.add(name)
            elif verdict.status is Verdict.REFUTED:
                absent.add(name)
        pods.append(PartialObjectDescription(individual, frozenset(present), frozenset(absent)))
    return PartialContext(tuple(names), tuple(pods))


def _axiom_of(implication: Implication) -> tuple[Concept, Concept]:
    premise = conj([Atomic(m) for m in _sorted(implication.premise)])
    conclusion = conj([Atomic(m) for m in _sorted(implication.conclusion)])
    return premise, conclusion


def _assertions_of(pod: PartialObjectDescription):
    for name in _sorted(pod.present):
        yield Atomic(name), pod.object_id
    for name in _sorted(pod.absent):
        yield neg(Atomic(name)), pod.object_id


def _replay(
    initial_kb: KnowledgeBase,
    initial_pctx: PartialContext,
    initial_order: Sequence[str],
    log: Sequence[Event],
) -> tuple[ExplorationState, KnowledgeBase, list[DroppedEvent]]:
    state = _partial.start_exploration(initial_pctx, initial_order)
    kb = initial_kb
    dropped: list[DroppedEvent] = []
    for index, event in enumerate(log):
        if isinstance(event, YesEvent):
            try:
                state = _partial.accept(state, event.implication)
            except CounterexampleError as exc:
                dropped.append(DroppedEvent(index, event, str(exc)))
                continue
            lhs, rhs = _axiom_of(event.implication)
            kb = KnowledgeBase(kb.tbox.with_gci(lhs, rhs), kb.abox)
        elif isinstance(event, NoEvent):
            try:
                state = _partial.add_pod(state, event.pod)
            except (CounterexampleError, InputError) as exc:
                dropped.append(DroppedEvent(index, event, str(exc)))
                continue
            abox = kb.abox
            for concept, individual in _assertions_of(event.pod):
                abox = abox.with_concept_assertion(concept, individual)
            kb = KnowledgeBase(kb.tbox, abox)
        elif isinstance(event, ReorderEvent):
            order = state.attribute_order().reorder(event.order).attributes
            state = replace(state, order=order)
        else:  # pragma: no cover - the union is closed
            raise TypeError(f"unknown event {event!r}")
    # Replaying an edited log may reopen questions lectically before the
    # cursor, so every rebuild restarts the sweep from the bottom.  Premises
    # already decided are no longer emitted: accepted ones stay accepted and
    # refuted ones have their certain conclusion pinned down by the context.
    state = _partial.rewind(state)
    return state, kb, dropped


def _session_from(
    initial_kb: KnowledgeBase,
    names: tuple[str, ...],
    initial_order: tuple[str, ...],
    log: tuple[Event, ...],
    initial_pctx: PartialContext,
    node_budget: int,
) -> tuple[CompletionSession, list[DroppedEvent]]:
    state, kb, dropped = _replay(initial_kb, initial_pctx, initial_order, log)
    status = Status.COMPLETE if _partial.next_undecided(state) is None else Status.RUNNING
    session = CompletionSession(
        initial_kb=initial_kb,
        names=names,
        initial_order=initial_order,
        log=log,
        initial_pctx=initial_pctx,
        state=state,
        kb=kb,
        status=status,
        node_budget=node_budget,
    )
    return session, dropped


def start(
    kb: KnowledgeBase,
    names: Sequence[str],
    order: Optional[Sequence[str]] = None,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> CompletionSession:
    """Open a completion session over the given concept names.

    ``order`` fixes the question sequence; it defaults to ``names`` as given.
    """
    names = tuple(names)
    if not names:
        raise InputError("completion needs at least one concept name")
    if len(set(names)) != len(names):
        raise InputError("duplicate concept names")
    order = tuple(order) if order is not None else names
    if set(order) != set(names) or len(order) != len(names):
        raise InputError("order must be a permutation of the concept names")
    pctx = induced_partial_context(kb, names, node_budget)
    session, dropped = _session_from(kb, names, order, (), pctx, node_budget)
    assert not dropped
    return session


def current_question(session: CompletionSession) -> Optional[Question]:
    """The next open implication, or None when the session is complete."""
    if session.status is Status.PAUSED:
        raise SessionStateError("session is paused; resume it first")
    implication = _partial.next_undecided(session.state)
    if implication is None:
        return None
    return Question(id=len(session.log) + 1, implication=implication)


def _pending(session: CompletionSession, question_id: int) -> Question:
    question = current_question(session)
    if question is None:
        raise SessionStateError("session is complete; there is no question to answer")
    if question_id != question.id:
        raise StaleQuestionError(
            f"question {question_id} is stale; the current question is {question.id}"
        )
    return question


def answer_yes(session: CompletionSession, question_id: int) -> CompletionSession:
    """Accept the pending implication as an axiom."""
    question = _pending(session, question_id)
    log = session.log + (YesEvent(question.implication),)
    new, dropped = _session_from(
        session.initial_kb, session.names, session.initial_order, log,
        session.initial_pctx, session.node_budget,
    )
    assert not dropped
    return new


def answer_no(
    session: CompletionSession,
    question_id: int,
    pod: PartialObjectDescription,
) -> CompletionSession:
    """Reject the pending implication with a counterexample.

    The counterexample must actually refute the question: all premise
    attributes marked present and at least one conclusion attribute marked
    absent.  Anything else is reported with the offending attributes.
    """
    question = _pending(session, question_id)
    implication = question.implication
    if pod.object_id in session.state.pctx.object_ids():
        raise InputError(f"object id {pod.object_id!r} is already taken")
    if not implication.premise <= pod.present:
        missing = implication.premise - pod.present
        raise CounterexampleError(
            "counterexample must satisfy the whole premise; not marked present: "
            + ", ".join(_sorted(missing)),
            attributes=tuple(_sorted(missing)),
        )
    if not implication.conclusion & pod.absent:
        raise CounterexampleError(
            "counterexample must violate the conclusion; none marked absent of: "
            + ", ".join(_sorted(implication.conclusion)),
            attributes=tuple(_sorted(implication.conclusion)),
        )
    # Surface conflicts with previously accepted axioms before logging.
    for accepted in session.state.accepted:
        if _partial.refutes(pod, accepted):
            raise CounterexampleError(
                f"the description contradicts the accepted axiom {accepted}; "
                "undo that answer instead",
                attributes=tuple(_sorted(accepted.premise | accepted.conclusion)),
            )
    log = session.log + (NoEvent(implication, pod),)
    new, dropped = _session_from(
        session.initial_kb, session.names, session.initial_order, log,
        session.initial_pctx, session.node_budget,
    )
    assert not dropped
    return new


def postpone(session: CompletionSession, question_id: int) -> CompletionSession:
    """Defer the pending question by moving its heaviest attribute first.

    Questions are generated smallest premise first in the lectic order, so
    promoting the order-maximal premise attribute to the front makes that
    premise (and its relatives) come up later.  A question with an empty
    premise cannot be deferred; the order is recorded unchanged.
    """
    question = _pending(session, question_id)
    order = session.state.order
    premise = question.implication.premise
    if premise:
        pivot = max(premise, key=order.index)
        order = (pivot,) + tuple(m for m in order if m != pivot)
    log = session.log + (ReorderEvent(order),)
    new, dropped = _session_from(
        session.initial_kb, session.names, session.initial_order, log,
        session.initial_pctx, session.node_budget,
    )
    assert not dropped
    return new


def undo(session: CompletionSession, index: int) -> tuple[CompletionSession, list[DroppedEvent]]:
    """Remove the event at ``index`` and replay the rest.

    Later events that depended on the removed one (a counterexample that now
    contradicts nothing it should, an acceptance now refuted) are dropped and
    reported rather than silently kept.
    """
    if not 0 <= index < len(session.log):
        raise InputError(f"no event at index {index}")
    log = session.log[:index] + session.log[index + 1:]
    return _session_from(
        session.initial_kb, session.names, session.initial_order, log,
        session.initial_pctx, session.node_budget,
    )


def pause(session: CompletionSession) -> tuple[CompletionSession, str]:
    """Freeze a running session and return its snapshot document."""
    if session.status is not Status.RUNNING:
        raise SessionStateError(f"cannot pause a {session.status.value} session")
    return replace(session, status=Status.PAUSED), snapshot_text(session)


def resume(
    snapshot: str, node_budget: int = DEFAULT_NODE_BUDGET
) -> tuple[CompletionSession, list[DroppedEvent]]:
    """Rebuild a session from a snapshot document.

    The result is bit-identical to the paused session's running state: the
    snapshot stores only the inputs and the event log, and everything else is
    re-derived the same way it originally was.  Events that no longer apply
    (possible only in edited snapshots) are dropped and reported.
    """
    _, payload = read_envelope(snapshot, SNAPSHOT_TAG, (SNAPSHOT_VERSION,))
    try:
        data = json.loads(payload)
    except json.JSONDecodeError as exc:
        raise SnapshotError(f"malformed snapshot payload: {exc}") from None
    try:
        kb = parse_ontology(data["ontology"])
        names = tuple(data["names"])
        order = tuple(data["order"])
        log = tuple(_event_from_json(entry) for entry in data["log"])
    except (KeyError, TypeError) as exc:
        raise SnapshotError(f"snapshot payload is missing fields: {exc}") from None
    if not names or len(set(names)) != len(names):
        raise SnapshotError("snapshot names must be non-empty and unique")
    if set(order) != set(names) or len(order) != len(names):
        raise SnapshotError("snapshot order must be a permutation of the names")
    pctx = induced_partial_context(kb, names, node_budget)
    return _session_from(kb, names, order, log, pctx, node_budget)


def _implication_json(implication: Implication) -> dict:
    return {
        "premise": _sorted(implication.premise),
        "conclusion": _sorted(implication.conclusion),
    }


def _event_json(event: Event) -> dict:
    if isinstance(event, YesEvent):
        return {"event": "yes", **_implication_json(event.implication)}
    if isinstance(event, NoEvent):
        return {
            "event": "no",
            **_implication_json(event.implication),
            "object": event.pod.object_id,
            "present": _sorted(event.pod.present),
            "absent": _sorted(event.pod.absent),
        }
    return {"event": "reorder", "order": list(event.order)}


def _event_from_json(entry: dict) -> Event:
    try:
        kind = entry["event"]
        if kind == "yes":
            return YesEvent(
                Implication(frozenset(entry["premise"]), frozenset(entry["conclusion"]))
            )
        if kind == "no":
            return NoEvent(
                Implication(frozenset(entry["premise"]), frozenset(entry["conclusion"])),
                PartialObjectDescription(
                    entry["object"], frozenset(entry["present"]), frozenset(entry["absent"])
                ),
            )
        if kind == "reorder":
            return ReorderEvent(tuple(entry["order"]))
    except (KeyError, TypeError, InputError) as exc:
        raise SnapshotError(f"malformed event entry: {exc}") from None
    raise SnapshotError(f"unknown event kind {kind!r}")


def snapshot_text(session: CompletionSession) -> str:
    """Serialize the session inputs and log; derived state is not stored."""
    payload = {
        "ontology": render_ontology(session.initial_kb),
        "names": list(session.names),
        "order": list(session.initial_order),
        "log": [_event_json(event) for event in session.log],
    }
    body = json.dumps(payload, sort_keys=True, ensure_ascii=False, separators=(",", ":"))
    return write_envelope(SNAPSHOT_TAG, SNAPSHOT_VERSION, body + "\n")


class CompletionExpert(Protocol):
    """Answers implication questions; None confirms, a description refutes."""

    def ask(self, question: Implication) -> Optional[PartialObjectDescription]:
        ...


@dataclass
class _OracleExpert:
    context: FormalContext

    def ask(self, question: Implication) -> Optional[PartialObjectDescription]:
        attributes = frozenset(self.context.attributes)
        for obj in self.context.objects:
            row = self.context.row(obj)
            if question.premise <= row and not question.conclusion <= row:
                return PartialObjectDescription(obj, row, attributes - row)
        return None


def oracle_expert(source: Union[Interpretation, FormalContext], names: Sequence[str] = ()):
    """An expert that answers from a fixed intended interpretation.

    Accepts either a formal context whose attributes cover the session names
    or an interpretation together with the names to tabulate.  Counterexamples
    are fully decided rows, returned in domain order.
    """
    if isinstance(source, FormalContext):
        return _OracleExpert(source)
    return _OracleExpert(context_of_interpretation(source, names))


def _fresh_id(base: str, taken: frozenset[str]) -> str:
    if base not in taken:
        return base
    k = 2
    while f"{base}~{k}" in taken:
        k += 1
    return f"{base}~{k}"


def run_with_expert(
    session: CompletionSession,
    expert: CompletionExpert,
    max_questions: Optional[int] = None,
) -> tuple[CompletionSession, list[tuple[Implication, str]]]:
    """Drive the session to completion, one transcript line per question.

    Counterexample ids from the expert are renamed when already taken, so a
    tabular oracle can serve rows under their natural names.
    """
    transcript: list[tuple[Implication, str]] = []
    while max_questions is None or len(transcript) < max_questions:
        question = current_question(session)
        if question is None:
            break
        reply = expert.ask(question.implication)
        if reply is None:
            session = answer_yes(session, question.id)
            transcript.append((question.implication, "yes"))
        else:
            fresh = _fresh_id(reply.object_id, session.state.pctx.object_ids())
            if fresh != reply.object_id:
                reply = PartialObjectDescription(fresh, reply.present, reply.absent)
            session = answer_no(session, question.id, reply)
            transcript.append((question.implication, f"no: {reply.object_id}"))
    return session, transcript
