"""Concept descriptions: constructors, normal forms, canonical text.

Conjunctions and disjunctions are flattened, deduplicated, and kept in a
canonical child order, so structural equality coincides with equality up to
commutativity and associativity.  Build concepts through ``conj``/``disj``
(or the parser) rather than the raw dataclasses.
"""

from __future__ import annotations

from dataclasses import dataclass
from collections.abc import Iterable

__all__ = [
    "Concept",
    "Top",
    "Bottom",
    "Atomic",
    "Not",
    "And",
    "Or",
    "Exists",
    "Forall",
    "TOP",
    "BOTTOM",
    "conj",
    "disj",
    "neg",
    "nnf",
    "concept_names",
    "role_names",
    "to_text",
]


@dataclass(frozen=True)
class Top:
    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Bottom:
    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Atomic:
    name: str

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Not:
    child: "Concept"

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class And:
    children: tuple["Concept", ...]

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Or:
    children: tuple["Concept", ...]

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Exists:
    role: str
    child: "Concept"

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Forall:
    role: str
    child: "Concept"

    def __str__(self) -> str:
        return to_text(self)


Concept = Top | Bottom | Atomic | Not | And | Or | Exists | Forall

TOP = Top()
BOTTOM = Bottom()


def _key(c: Concept):
    # nested tuples whose first element ranks the constructor, so mixed
    # comparisons never reach elements of different types
    match c:
        case Top():
            return (0,)
        case Bottom():
            return (1,)
        case Atomic(name):
            return (2, name)
        case Not(child):
            return (3, _key(child))
        case Exists(role, child):
            return (4, role, _key(child))
        case Forall(role, child):
            return (5, role, _key(child))
        case And(children):
            return (6, tuple(_key(x) for x in children))
        case Or(children):
            return (7, tuple(_key(x) for x in children))
    raise TypeError(f"not a concept: {c!r}")


def conj(children: Iterable[Concept]) -> Concept:
    """Canonical conjunction: flattens, deduplicates, sorts; empty gives top."""
    flat: list[Concept] = []
    for c in children:
        if isinstance(c, And):
            flat.extend(c.children)
        elif isinstance(c, Top):
            continue
        elif isinstance(c, Bottom):
            return BOTTOM
        else:
            flat.append(c)
    uniq = sorted({_key(c): c for c in flat}.items())
    if not uniq:
        return TOP
    if len(uniq) == 1:
        return uniq[0][1]
    return And(tuple(c for _, c in uniq))


def disj(children: Iterable[Concept]) -> Concept:
    """Canonical disjunction: flattens, deduplicates, sorts; empty gives bottom."""
    flat: list[Concept] = []
    for c in children:
        if isinstance(c, Or):
            flat.extend(c.children)
        elif isinstance(c, Bottom):
            continue
        elif isinstance(c, Top):
            return TOP
        else:
            flat.append(c)
    uniq = sorted({_key(c): c for c in flat}.items())
    if not uniq:
        return BOTTOM
    if len(uniq) == 1:
        return uniq[0][1]
    return Or(tuple(c for _, c in uniq))


def neg(c: Concept) -> Concept:
    """Negation with the obvious top/bottom/double-negation simplifications."""
    match c:
        case Top():
            return BOTTOM
        case Bottom():
            return TOP
        case Not(child):
            return child
    return Not(c)


def nnf(c: Concept) -> Concept:
    """Negation normal form: negation occurs only directly on concept names."""
    match c:
        case Top() | Bottom() | Atomic():
            return c
        case And(children):
            return conj(nnf(x) for x in children)
        case Or(children):
            return disj(nnf(x) for x in children)
        case Exists(role, child):
            return Exists(role, nnf(child))
        case Forall(role, child):
            return Forall(role, nnf(child))
        case Not(child):
            match child:
                case Top():
                    return BOTTOM
                case Bottom():
                    return TOP
                case Atomic():
                    return c
                case Not(grand):
                    return nnf(grand)
                case And(children):
                    return disj(nnf(Not(x)) for x in children)
                case Or(children):
                    return conj(nnf(Not(x)) for x in children)
                case Exists(role, grand):
                    return Forall(role, nnf(Not(grand)))
                case Forall(role, grand):
                    return Exists(role, nnf(Not(grand)))
    raise TypeError(f"not a concept: {c!r}")


def concept_names(c: Concept) -> frozenset[str]:
    match c:
        case Atomic(name):
            return frozenset((name,))
        case Not(child) | Exists(_, child) | Forall(_, child):
            return concept_names(child)
        case And(children) | Or(children):
            out: frozenset[str] = frozenset()
            for x in children:
                out |= concept_names(x)
            return out
    return frozenset()


def role_names(c: Concept) -> frozenset[str]:
    match c:
        case Exists(role, child) | Forall(role, child):
            return frozenset((role,)) | role_names(child)
        case Not(child):
            return role_names(child)
        case And(children) | Or(children):
            out: frozenset[str] = frozenset()
            for x in children:
                out |= role_names(x)
            return out
    return frozenset()


def to_text(c: Concept) -> str:
    """Canonical concrete syntax with minimal parentheses.

    ``not`` and the quantifiers bind tighter than ``and``, which binds tighter
    than ``or``; re-parsing the output reproduces the concept exactly.
    """

    def unary(x: Concept) -> str:
        # operand position that must not capture an and/or continuation
        if isinstance(x, (And, Or)):
            return "(" + to_text(x) + ")"
        return to_text(x)

    match c:
        case Top():
            return "top"
        case Bottom():
            return "bottom"
        case Atomic(name):
            return name
        case Not(child):
            return "not " + unary(child)
        case Exists(role, child):
            return f"some {role}.{unary(child)}"
        case Forall(role, child):
            return f"all {role}.{unary(child)}"
        case And(children):
            return " and ".join(
                "(" + to_text(x) + ")" if isinstance(x, Or) else to_text(x) for x in children
            )
        case Or(children):
            return " or ".join(to_text(x) for x in children)
    raise TypeError(f"not a concept: {c!r}")
