"""Partial object descriptions and implication exploration over them.

A partial object description records, for one object, the attributes known to
be present and the attributes known to be absent; everything else is open.  An
implication is refuted by such a description only when the whole premise is
known present and some conclusion attribute is known absent.  Exploration asks
the largest conclusion the current descriptions cannot refute and lets
counterexamples arrive as further (possibly partial) descriptions.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from collections.abc import Iterable, Sequence
from typing import Optional

from .attrsets import AttributeOrder
from .errors import CounterexampleError, InputError, StaleQuestionError
from .fca import Implication, _close_mask, _compile, _next_closed_mask, implication_closure

__all__ = [
    "PartialObjectDescription",
    "PartialContext",
    "refutes",
    "context_refutes",
    "is_undecided",
    "certain_conclusion",
    "ExplorationState",
    "start_exploration",
    "next_undecided",
    "apply_yes",
    "apply_no",
    "accept",
    "add_pod",
    "rewind",
]


@dataclass(frozen=True)
class PartialObjectDescription:
    """Known-present and known-absent attributes of one object."""

    object_id: str
    present: frozenset[str]
    absent: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "present", frozenset(self.present))
        object.__setattr__(self, "absent", frozenset(self.absent))
        if self.present & self.absent:
            overlap = ", ".join(sorted(self.present & self.absent))
            raise InputError(f"contradictory description for {self.object_id!r}: {overlap}")


@dataclass(frozen=True)
class PartialContext:
    """An ordered attribute universe plus partial descriptions of objects."""

    attributes: tuple[str, ...]
    pods: tuple[PartialObjectDescription, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "attributes", tuple(self.attributes))
        object.__setattr__(self, "pods", tuple(self.pods))
        universe = set(self.attributes)
        if len(universe) != len(self.attributes):
            raise InputError("attribute universe contains duplicates")
        seen = set()
        for pod in self.pods:
            if pod.object_id in seen:
                raise InputError(f"duplicate object id {pod.object_id!r}")
            seen.add(pod.object_id)
            stray = (pod.present | pod.absent) - universe
            if stray:
                raise InputError(f"attributes outside the universe: {', '.join(sorted(stray))}")

    def with_pod(self, pod: PartialObjectDescription) -> "PartialContext":
        return replace(self, pods=self.pods + (pod,))

    def object_ids(self) -> tuple[str, ...]:
        return tuple(p.object_id for p in self.pods)


def refutes(pod: PartialObjectDescription, imp: Implication) -> bool:
    """True iff ``pod`` certainly violates ``imp``."""
    return imp.premise <= pod.present and bool(imp.conclusion & pod.absent)


def context_refutes(pctx: PartialContext, imp: Implication) -> bool:
    return any(refutes(pod, imp) for pod in pctx.pods)


def is_undecided(pctx: PartialContext, accepted: Iterable[Implication], imp: Implication) -> bool:
    """Neither follows from ``accepted`` nor is refuted by ``pctx``."""
    if imp.conclusion <= implication_closure(accepted, imp.premise):
        return False
    return not context_refutes(pctx, imp)


def certain_conclusion(pctx: PartialContext, premise: Iterable[str]) -> frozenset[str]:
    """The largest conclusion no description in ``pctx`` can refute for ``premise``."""
    order = AttributeOrder(pctx.attributes)
    pm = order.mask(premise)
    removed = 0
    for pod in pctx.pods:
        if order.mask(pod.present) & pm == pm:
            removed |= order.mask(pod.absent)
    return order.names(order.full_mask & ~removed)


@dataclass(frozen=True)
class ExplorationState:
    """One step of an exploration: context, accepted implications, sweep position."""

    pctx: PartialContext
    accepted: tuple[Implication, ...]
    cursor: frozenset[str]
    order: tuple[str, ...]

    def attribute_order(self) -> AttributeOrder:
        return AttributeOrder(self.order)


def start_exploration(pctx: PartialContext, order: Sequence[str] | None = None) -> ExplorationState:
    declared = tuple(order) if order is not None else pctx.attributes
    ao = AttributeOrder(pctx.attributes).reorder(declared)
    return ExplorationState(pctx, (), frozenset(), ao.attributes)


def _mask_state(state: ExplorationState):
    ao = state.attribute_order()
    compiled = _compile(state.accepted, ao)
    pods = [(ao.mask(p.present), ao.mask(p.absent)) for p in state.pctx.pods]
    return ao, compiled, pods


def _certain_mask(pods: list[tuple[int, int]], full: int, premise: int) -> int:
    removed = 0
    for present, absent in pods:
        if present & premise == premise:
            removed |= absent
    return full & ~removed


def next_undecided(state: ExplorationState) -> Optional[Implication]:
    """The next question of the sweep, or ``None`` when the exploration is complete.

    Scans, lectically from the cursor, the premises closed under the accepted
    implications, and emits the first whose certain conclusion exceeds it.
    """
    ao, compiled, pods = _mask_state(state)
    close = lambda m: _close_mask(compiled, m)
    premise: Optional[int] = ao.mask(state.cursor)
    if close(premise) != premise:
        premise = _next_closed_mask(close, premise, ao)
    while premise is not None:
        certain = _certain_mask(pods, ao.full_mask, premise)
        if certain != premise:
            return Implication(ao.names(premise), ao.names(certain & ~premise))
        premise = _next_closed_mask(close, premise, ao)
    return None


def accept(state: ExplorationState, imp: Implication) -> ExplorationState:
    """Record a confirmed implication and move the sweep past its premise."""
    if context_refutes(state.pctx, imp):
        raise CounterexampleError("implication is refuted by the current context")
    accepted = state.accepted + (imp,)
    ao = state.attribute_order()
    compiled = _compile(accepted, ao)
    close = lambda m: _close_mask(compiled, m)
    nxt = _next_closed_mask(close, ao.mask(imp.premise), ao)
    cursor = ao.names(nxt) if nxt is not None else frozenset(state.order)
    return replace(state, accepted=accepted, cursor=cursor)


def add_pod(state: ExplorationState, pod: PartialObjectDescription) -> ExplorationState:
    """Add a counterexample description; the sweep position does not move."""
    for imp in state.accepted:
        if refutes(pod, imp):
            raise CounterexampleError(
                f"description contradicts the accepted implication {imp}; undo that answer instead",
                tuple(sorted(imp.conclusion & pod.absent)),
            )
    return replace(state, pctx=state.pctx.with_pod(pod))


def rewind(state: ExplorationState) -> ExplorationState:
    """Reset the sweep to the lectically smallest closed premise."""
    return replace(state, cursor=implication_closure(state.accepted, ()))


def apply_yes(state: ExplorationState, question: Implication) -> ExplorationState:
    """Confirm the currently pending question."""
    if next_undecided(state) != question:
        raise StaleQuestionError("the question is no longer the pending one")
    return accept(state, question)


def apply_no(
    state: ExplorationState, question: Implication, pod: PartialObjectDescription
) -> ExplorationState:
    """Reject the currently pending question with a refuting description."""
    if next_undecided(state) != question:
        raise StaleQuestionError("the question is no longer the pending one")
    if pod.object_id in state.pctx.object_ids():
        raise InputError(f"duplicate object id {pod.object_id!r}")
    if not refutes(pod, question):
        missing = tuple(sorted(question.premise - pod.present))
        if missing:
            raise CounterexampleError(
                "premise attributes not marked present: " + ", ".join(missing), missing
            )
        unrefuted = tuple(sorted(question.conclusion))
        raise CounterexampleError(
            "no conclusion attribute is marked absent; still unrefuted: " + ", ".join(unrefuted),
            unrefuted,
        )
    return add_pod(state, pod)
