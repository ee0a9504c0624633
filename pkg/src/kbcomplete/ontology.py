"""Terminologies and assertional knowledge.

A TBox holds acyclic concept definitions plus arbitrary inclusion axioms; an
ABox holds concept and role assertions about named individuals.  Definitions
are checked for cycles and redefinition when the TBox is built.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .concepts import And, Atomic, Concept, Exists, Forall, Not, Or, concept_names, conj, disj, neg
from .errors import CyclicDefinitionError, InputError

__all__ = ["TBox", "ABox", "KnowledgeBase", "unfold"]


@dataclass(frozen=True)
class TBox:
    """Concept definitions (name -> concept, acyclic) and general inclusions."""

    definitions: tuple[tuple[str, Concept], ...] = ()
    gcis: tuple[tuple[Concept, Concept], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "definitions", tuple(self.definitions))
        object.__setattr__(self, "gcis", tuple(self.gcis))
        seen = set()
        for name, _ in self.definitions:
            if name in seen:
                raise InputError(f"concept name {name!r} defined twice")
            seen.add(name)
        self._check_acyclic()

    def _check_acyclic(self) -> None:
        defs = dict(self.definitions)
        state: dict[str, int] = {}  # 1 = visiting, 2 = done

        def visit(name: str, trail: tuple[str, ...]) -> None:
            if state.get(name) == 2:
                return
            if state.get(name) == 1:
                cycle = trail[trail.index(name):] + (name,)
                raise CyclicDefinitionError("cyclic definitions: " + " -> ".join(cycle))
            state[name] = 1
            for used in concept_names(defs[name]):
                if used in defs:
                    visit(used, trail + (name,))
            state[name] = 2

        for name in defs:
            visit(name, ())

    def defined_names(self) -> frozenset[str]:
        return frozenset(name for name, _ in self.definitions)

    def definition_of(self, name: str) -> Concept | None:
        for n, c in self.definitions:
            if n == name:
                return c
        return None

    def with_gci(self, lhs: Concept, rhs: Concept) -> "TBox":
        return replace(self, gcis=self.gcis + ((lhs, rhs),))


@dataclass(frozen=True)
class ABox:
    """Concept assertions ``C(a)`` and role assertions ``r(a, b)``."""

    concept_assertions: tuple[tuple[Concept, str], ...] = ()
    role_assertions: tuple[tuple[str, str, str], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "concept_assertions", tuple(self.concept_assertions))
        object.__setattr__(self, "role_assertions", tuple(self.role_assertions))

    def individuals(self) -> tuple[str, ...]:
        """All named individuals, in order of first mention."""
        out: dict[str, None] = {}
        for _, a in self.concept_assertions:
            out.setdefault(a)
        for _, a, b in self.role_assertions:
            out.setdefault(a)
            out.setdefault(b)
        return tuple(out)

    def with_concept_assertion(self, c: Concept, individual: str) -> "ABox":
        return replace(self, concept_assertions=self.concept_assertions + ((c, individual),))


@dataclass(frozen=True)
class KnowledgeBase:
    tbox: TBox = field(default_factory=TBox)
    abox: ABox = field(default_factory=ABox)


def unfold(tbox: TBox, concept: Concept) -> Concept:
    """Replace every defined name by its (recursively unfolded) definition."""
    memo: dict[str, Concept] = {}
    defs = dict(tbox.definitions)

    def expand_name(name: str) -> Concept:
        if name not in memo:
            memo[name] = walk(defs[name])
        return memo[name]

    def walk(c: Concept) -> Concept:
        match c:
            case Atomic(name) if name in defs:
                return expand_name(name)
            case Not(child):
                return neg(walk(child))
            case And(children):
                return conj(walk(x) for x in children)
            case Or(children):
                return disj(walk(x) for x in children)
            case Exists(role, child):
                return Exists(role, walk(child))
            case Forall(role, child):
                return Forall(role, walk(child))
        return c

    return walk(concept)
