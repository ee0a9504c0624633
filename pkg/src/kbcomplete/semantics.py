"""Finite interpretations and model checking against them.

Interpretations are explicit finite structures: a domain, an extension per
concept name, a set of pairs per role name, and a mapping of individual names
to elements.  Evaluation of a concept is the textbook induction; a concept
name the interpretation does not map evaluates to the empty set and emits a
warning rather than failing.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from collections.abc import Hashable, Iterable

from .concepts import And, Atomic, Bottom, Concept, Exists, Forall, Not, Or, Top
from .errors import InputError
from .fca import FormalContext
from .ontology import ABox, TBox, unfold

__all__ = [
    "UnmappedNameWarning",
    "Interpretation",
    "eval_concept",
    "tbox_violations",
    "abox_violations",
    "models_tbox",
    "models_abox",
    "interpretation_of_context",
    "context_of_interpretation",
]

Element = Hashable


class UnmappedNameWarning(UserWarning):
    """A concept name without an extension was evaluated as empty."""


@dataclass(frozen=True)
class Interpretation:
    domain: tuple[Element, ...]
    concept_map: dict[str, frozenset[Element]] = field(default_factory=dict)
    role_map: dict[str, frozenset[tuple[Element, Element]]] = field(default_factory=dict)
    individual_map: dict[str, Element] = field(default_factory=dict)

    def __post_init__(self):
        dom = set(self.domain)
        if len(dom) != len(self.domain):
            raise InputError("interpretation domain contains duplicates")
        for name, ext in self.concept_map.items():
            if not set(ext) <= dom:
                raise InputError(f"extension of {name!r} leaves the domain")
        for role, pairs in self.role_map.items():
            for a, b in pairs:
                if a not in dom or b not in dom:
                    raise InputError(f"role {role!r} relates elements outside the domain")
        for ind, el in self.individual_map.items():
            if el not in dom:
                raise InputError(f"individual {ind!r} is mapped outside the domain")


def eval_concept(interp: Interpretation, concept: Concept) -> frozenset[Element]:
    dom = frozenset(interp.domain)
    match concept:
        case Top():
            return dom
        case Bottom():
            return frozenset()
        case Atomic(name):
            if name not in interp.concept_map:
                warnings.warn(
                    f"concept name {name!r} has no extension; treating it as empty",
                    UnmappedNameWarning,
                    stacklevel=2,
                )
                return frozenset()
            return frozenset(interp.concept_map[name])
        case Not(child):
            return dom - eval_concept(interp, child)
        case And(children):
            out = dom
            for c in children:
                out &= eval_concept(interp, c)
            return out
        case Or(children):
            out: frozenset[Element] = frozenset()
            for c in children:
                out |= eval_concept(interp, c)
            return out
        case Exists(role, child):
            pairs = interp.role_map.get(role, frozenset())
            filler = eval_concept(interp, child)
            return frozenset(a for a, b in pairs if b in filler)
        case Forall(role, child):
            pairs = interp.role_map.get(role, frozenset())
            filler = eval_concept(interp, child)
            return frozenset(d for d in dom if all(b in filler for a, b in pairs if a == d))
    raise TypeError(f"not a concept: {concept!r}")


def tbox_violations(interp: Interpretation, tbox: TBox) -> list[str]:
    """Human-readable descriptions of the axioms ``interp`` fails to satisfy."""
    out: list[str] = []
    for name, body in tbox.definitions:
        lhs = eval_concept(interp, Atomic(name))
        rhs = eval_concept(interp, body)
        if lhs != rhs:
            out.append(f"definition of {name} violated: {name} = {set(lhs)} but body = {set(rhs)}")
    for lhs_c, rhs_c in tbox.gcis:
        lhs = eval_concept(interp, lhs_c)
        rhs = eval_concept(interp, rhs_c)
        if not lhs <= rhs:
            out.append(f"inclusion {lhs_c} => {rhs_c} violated by {set(lhs - rhs)}")
    return out


def abox_violations(interp: Interpretation, abox: ABox) -> list[str]:
    out: list[str] = []
    for concept, ind in abox.concept_assertions:
        if ind not in interp.individual_map:
            out.append(f"individual {ind} is not interpreted")
            continue
        if interp.individual_map[ind] not in eval_concept(interp, concept):
            out.append(f"assertion {concept} ({ind}) violated")
    for role, a, b in abox.role_assertions:
        if a not in interp.individual_map or b not in interp.individual_map:
            out.append(f"role assertion {role} ({a}, {b}) mentions an uninterpreted individual")
            continue
        pair = (interp.individual_map[a], interp.individual_map[b])
        if pair not in interp.role_map.get(role, frozenset()):
            out.append(f"role assertion {role} ({a}, {b}) violated")
    return out


def models_tbox(interp: Interpretation, tbox: TBox) -> bool:
    return not tbox_violations(interp, tbox)


def models_abox(interp: Interpretation, abox: ABox) -> bool:
    return not abox_violations(interp, abox)


def interpretation_of_context(ctx: FormalContext) -> Interpretation:
    """Read a full formal context as a role-free interpretation.

    Objects become domain elements and each attribute becomes a concept name
    whose extension is the attribute's column.
    """
    return Interpretation(
        domain=tuple(ctx.objects),
        concept_map={
            attr: frozenset(g for g in ctx.objects if attr in ctx.row(g)) for attr in ctx.attributes
        },
        role_map={},
        individual_map={},
    )


def context_of_interpretation(
    interp: Interpretation, names: Iterable[str], tbox: TBox | None = None
) -> FormalContext:
    """Derive the full context of ``interp`` over the given concept names.

    With a terminology, defined names are unfolded before evaluation so the
    rows reflect the intended extensions even when the interpretation maps
    only primitive names.
    """
    names = tuple(names)
    ctx = FormalContext(names)
    for el in interp.domain:
        row = []
        for name in names:
            concept: Concept = Atomic(name)
            if tbox is not None:
                concept = unfold(tbox, concept)
            if el in eval_concept(interp, concept):
                row.append(name)
        ctx.add_object(str(el), row)
    return ctx
