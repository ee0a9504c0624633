"""Formal contexts, implications, and the closed-set machinery built on them.

The enumeration engine works on integer bit masks (see ``attrsets``); the
public functions accept and return ordinary frozensets of attribute names.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Iterator, Sequence
from dataclasses import dataclass
from typing import Optional, Protocol

from .attrsets import AttributeOrder
from .errors import ClosureContractError, CounterexampleError, InputError

__all__ = [
    "Implication",
    "FormalContext",
    "derive_intent",
    "derive_extent",
    "context_closure",
    "holds_in",
    "implication_closure",
    "next_closed",
    "closed_sets",
    "stem_base",
    "Expert",
    "Counterexample",
    "ExplorationResult",
    "explore",
]


@dataclass(frozen=True)
class Implication:
    """An attribute implication ``premise -> conclusion``."""

    premise: frozenset[str]
    conclusion: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "premise", frozenset(self.premise))
        object.__setattr__(self, "conclusion", frozenset(self.conclusion))

    def __str__(self) -> str:
        fmt = lambda s: "{" + ", ".join(sorted(s)) + "}"
        return f"{fmt(self.premise)} -> {fmt(self.conclusion)}"


class FormalContext:
    """A finite formal context: objects, ordered attributes, and incidence."""

    def __init__(self, attributes: Sequence[str], objects: Iterable[tuple[str, Iterable[str]]] = ()):
        self.order = AttributeOrder(attributes)
        self._rows: dict[str, int] = {}
        for obj, attrs in objects:
            self.add_object(obj, attrs)

    @property
    def attributes(self) -> tuple[str, ...]:
        return self.order.attributes

    @property
    def objects(self) -> tuple[str, ...]:
        return tuple(self._rows)

    def add_object(self, obj: str, attrs: Iterable[str]) -> None:
        if obj in self._rows:
            raise InputError(f"duplicate object {obj!r}")
        self._rows[obj] = self.order.mask(attrs)

    def row(self, obj: str) -> frozenset[str]:
        try:
            return self.order.names(self._rows[obj])
        except KeyError:
            raise InputError(f"unknown object {obj!r}") from None

    def row_mask(self, obj: str) -> int:
        return self._rows[obj]

    def copy(self) -> "FormalContext":
        dup = FormalContext(self.attributes)
        dup._rows = dict(self._rows)
        return dup

    # mask-level derivations used by the enumeration engine
    def intent_mask(self, objs: Iterable[str]) -> int:
        m = self.order.full_mask
        for g in objs:
            m &= self._rows[g]
        return m

    def extent_of_mask(self, attr_mask: int) -> tuple[str, ...]:
        return tuple(g for g, row in self._rows.items() if row & attr_mask == attr_mask)

    def closure_mask(self, attr_mask: int) -> int:
        m = self.order.full_mask
        for row in self._rows.values():
            if row & attr_mask == attr_mask:
                m &= row
        return m

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FormalContext)
            and self.attributes == other.attributes
            and self._rows == other._rows
        )

    def __repr__(self) -> str:
        return f"<FormalContext {len(self._rows)} objects x {len(self.attributes)} attributes>"


def derive_intent(ctx: FormalContext, objs: Iterable[str]) -> frozenset[str]:
    """Attributes shared by all of ``objs``; all attributes for the empty set."""
    objs = tuple(objs)
    for g in objs:
        if g not in ctx._rows:
            raise InputError(f"unknown object {g!r}")
    return ctx.order.names(ctx.intent_mask(objs))


def derive_extent(ctx: FormalContext, attrs: Iterable[str]) -> frozenset[str]:
    """Objects having all of ``attrs``; all objects for the empty set."""
    return frozenset(ctx.extent_of_mask(ctx.order.mask(attrs)))


def context_closure(ctx: FormalContext, attrs: Iterable[str]) -> frozenset[str]:
    """The double derivation ``attrs'' `` in ``ctx``."""
    return ctx.order.names(ctx.closure_mask(ctx.order.mask(attrs)))


def holds_in(ctx: FormalContext, imp: Implication) -> bool:
    """True iff every object with the premise also has the conclusion."""
    pm = ctx.order.mask(imp.premise)
    cm = ctx.order.mask(imp.conclusion)
    return all(row & cm == cm for row in ctx._rows.values() if row & pm == pm)


def implication_closure(imps: Iterable[Implication], seed: Iterable[str]) -> frozenset[str]:
    """Smallest superset of ``seed`` closed under all of ``imps`` (forward chaining)."""
    closed = set(seed)
    pending = list(imps)
    changed = True
    while changed:
        changed = False
        rest = []
        for imp in pending:
            if imp.premise <= closed:
                if not imp.conclusion <= closed:
                    closed |= imp.conclusion
                    changed = True
            else:
                rest.append(imp)
        pending = rest
    return frozenset(closed)


def _compile(imps: Iterable[Implication], order: AttributeOrder) -> list[tuple[int, int]]:
    return [(order.mask(i.premise), order.mask(i.conclusion)) for i in imps]


def _close_mask(compiled: list[tuple[int, int]], seed: int) -> int:
    closed = seed
    changed = True
    while changed:
        changed = False
        for pm, cm in compiled:
            if closed & pm == pm and closed | cm != closed:
                closed |= cm
                changed = True
    return closed


def _next_closed_mask(close: Callable[[int], int], current: int, order: AttributeOrder) -> Optional[int]:
    """Lectically smallest ``close``-closed set strictly greater than ``current``.

    ``current`` may be any set; this is what lets exploration advance from a
    premise that just stopped being closed.
    """
    # walk attributes from the last of the order to the first
    for name in reversed(order.attributes):
        bit = order.bit(name)
        if current & bit:
            continue
        prefix = order.prefix_mask(name)
        candidate = (current & prefix) | bit
        closed = close(candidate)
        if closed & candidate != candidate:
            raise ClosureContractError("closure operator is not extensive on a probed input")
        if closed & ~current & prefix == 0:
            return closed
    return None


def next_closed(
    closure_op: Callable[[frozenset[str]], Iterable[str]],
    current: Optional[Iterable[str]],
    order: Sequence[str],
) -> Optional[frozenset[str]]:
    """The lectically next ``closure_op``-closed set after ``current``.

    ``current = None`` is the start marker: the result is then the closure of
    the empty set, the lectically smallest closed set.  Returns ``None`` once
    ``current`` is the lectically largest closed set.  The operator is probed
    for extensivity and idempotence on the inputs actually used.
    """
    ao = order if isinstance(order, AttributeOrder) else AttributeOrder(order)

    def close(mask: int) -> int:
        result = ao.mask(closure_op(ao.names(mask)))
        return result

    if current is None:
        first = close(0)
        if close(first) != first:
            raise ClosureContractError("closure operator is not idempotent on a probed input")
        return ao.names(first)
    cur = ao.mask(current)
    if close(cur) != cur:
        raise ClosureContractError("current set is not closed under the supplied operator")
    nxt = _next_closed_mask(close, cur, ao)
    return None if nxt is None else ao.names(nxt)


def closed_sets(
    closure_op: Callable[[frozenset[str]], Iterable[str]],
    order: Sequence[str],
) -> Iterator[frozenset[str]]:
    """All closed sets of ``closure_op`` in lectic order."""
    current = next_closed(closure_op, None, order)
    while current is not None:
        yield current
        current = next_closed(closure_op, current, order)


def stem_base(ctx: FormalContext, order: Sequence[str] | None = None) -> list[Implication]:
    """The canonical minimum implication basis of ``ctx``.

    Premises are enumerated in lectic order as the sets closed under the
    implications found so far; each premise whose context closure is larger
    contributes one implication.
    """
    ao = ctx.order if order is None else ctx.order.reorder(order)
    compiled: list[tuple[int, int]] = []
    base: list[Implication] = []
    close = lambda m: _close_mask(compiled, m)
    current: Optional[int] = 0
    while current is not None:
        ctx_closed = ctx.closure_mask(current)
        if ctx_closed != current:
            base.append(Implication(ao.names(current), ao.names(ctx_closed & ~current)))
            compiled.append((current, ctx_closed))
        current = _next_closed_mask(close, current, ao)
    return base


@dataclass(frozen=True)
class Counterexample:
    """A full object row offered by an expert against a rejected implication."""

    object_id: str
    attributes: frozenset[str]

    def __post_init__(self):
        object.__setattr__(self, "attributes", frozenset(self.attributes))


class Expert(Protocol):
    """Answers implication questions over a fixed attribute universe."""

    def ask(self, question: Implication) -> Optional[Counterexample]:
        """``None`` accepts the implication; a counterexample rejects it."""
        ...


@dataclass
class ExplorationResult:
    implications: list[Implication]
    context: FormalContext


_MAX_INVALID_REPLIES = 100


def explore(
    ctx: FormalContext,
    expert: Expert,
    order: Sequence[str] | None = None,
    background: Iterable[Implication] = (),
) -> ExplorationResult:
    """Interactive implication discovery against ``expert``.

    Starts from the rows already in ``ctx`` (which is not modified; a working
    copy grows by one row per counterexample).  ``background`` implications
    are taken as given: they constrain the premises enumerated but are not
    asked and not returned.  A counterexample that fails to refute the
    question is rejected and the expert is asked again.
    """
    work = ctx.copy()
    ao = work.order if order is None else work.order.reorder(order)
    compiled = _compile(background, ao)
    accepted: list[Implication] = []
    close = lambda m: _close_mask(compiled, m)
    current: Optional[int] = close(0)
    while current is not None:
        invalid = 0
        while True:
            ctx_closed = work.closure_mask(current)
            if ctx_closed == current:
                break
            question = Implication(ao.names(current), ao.names(ctx_closed & ~current))
            reply = expert.ask(question)
            if reply is None:
                accepted.append(question)
                compiled.append((current, ctx_closed))
                break
            row_mask = ao.mask(reply.attributes)
            pm = current
            cm = ctx_closed & ~current
            if row_mask & pm != pm or row_mask & cm == cm or reply.object_id in work._rows:
                invalid += 1
                if invalid >= _MAX_INVALID_REPLIES:
                    raise CounterexampleError(
                        f"expert produced {invalid} invalid counterexamples in a row",
                        ao.sorted_names(pm & ~row_mask) or ao.sorted_names(cm),
                    )
                continue
            work.add_object(reply.object_id, reply.attributes)
        current = _next_closed_mask(close, current, ao)
    return ExplorationResult(accepted, work)
