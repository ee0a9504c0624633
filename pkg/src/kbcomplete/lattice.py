"""The lattice of literal conjunctions and common-subsumer computations.

For a fixed set of concept names, the conjunctions of names and negated names
form a finite lattice w.r.t. subsumption relative to a terminology.  The
hierarchy is discovered once by implication exploration with the reasoner in
the expert seat; afterwards every subsumption between literal conjunctions is
a closure lookup, no more reasoner calls.

On top of the hierarchy sit two generalization operations.  ``lcs_ale`` is the
terminology-ignoring least common subsumer of two concepts in the fragment
with conjunction and the two quantifiers only; ``gcs`` additionally pushes
every literal part through the hierarchy, giving a good (often least) common
subsumer w.r.t. the terminology.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .concepts import (
    BOTTOM,
    TOP,
    And,
    Atomic,
    Bottom,
    Concept,
    Exists,
    Forall,
    Not,
    Top,
    conj,
    neg,
)
from .errors import InputError, NotAleError
from .fca import FormalContext, Counterexample, Implication, explore, implication_closure
from .ontology import TBox
from .reasoner import DEFAULT_NODE_BUDGET, satisfiable
from .semantics import UnmappedNameWarning, eval_concept

__all__ = [
    "LiteralConjunction",
    "BOTTOM_CONJUNCTION",
    "literal_conjunction",
    "ConjunctionHierarchy",
    "build_hierarchy",
    "common_subsuming_conjunction",
    "implication_gci",
    "min_subsuming_conjunction",
    "lcs_ale",
    "gcs",
]

_NEG_MARK = "¬"


@dataclass(frozen=True)
class LiteralConjunction:
    """A conjunction of concept names and negated concept names."""

    positives: frozenset[str]
    negatives: frozenset[str]
    is_bottom: bool = False

    def __post_init__(self):
        object.__setattr__(self, "positives", frozenset(self.positives))
        object.__setattr__(self, "negatives", frozenset(self.negatives))
        if self.is_bottom:
            if self.positives or self.negatives:
                raise InputError("the bottom conjunction carries no literals")
        elif self.positives & self.negatives:
            raise InputError(
                "contradictory literals: " + ", ".join(sorted(self.positives & self.negatives))
            )

    def to_concept(self) -> Concept:
        if self.is_bottom:
            return BOTTOM
        parts: list[Concept] = [Atomic(n) for n in self.positives]
        parts += [Not(Atomic(n)) for n in self.negatives]
        return conj(parts)

    def __str__(self) -> str:
        from .concepts import to_text

        return to_text(self.to_concept())


BOTTOM_CONJUNCTION = LiteralConjunction(frozenset(), frozenset(), is_bottom=True)


def literal_conjunction(positives, negatives) -> LiteralConjunction:
    """Build a literal conjunction, collapsing contradictions to bottom."""
    pos, neg_ = frozenset(positives), frozenset(negatives)
    if pos & neg_:
        return BOTTOM_CONJUNCTION
    return LiteralConjunction(pos, neg_)


def _literal_attr(positive: bool, name: str) -> str:
    return name if positive else _NEG_MARK + name


def _attr_concept(attr: str) -> Concept:
    if attr.startswith(_NEG_MARK):
        return Not(Atomic(attr[len(_NEG_MARK):]))
    return Atomic(attr)


@dataclass(frozen=True)
class ConjunctionHierarchy:
    """The implication base that decides subsumption between literal conjunctions."""

    tbox: TBox
    names: tuple[str, ...]
    literals: tuple[str, ...]
    base: tuple[Implication, ...]
    context: FormalContext = field(compare=False)

    def closure(self, attrs: frozenset[str]) -> frozenset[str]:
        return implication_closure(self.base, attrs)

    def attrs_of(self, lc: LiteralConjunction) -> frozenset[str]:
        stray = (lc.positives | lc.negatives) - set(self.names)
        if stray:
            raise InputError("names outside the hierarchy: " + ", ".join(sorted(stray)))
        return frozenset(
            {_literal_attr(True, n) for n in lc.positives}
            | {_literal_attr(False, n) for n in lc.negatives}
        )


class _ReasonerExpert:
    """Answers literal-implication questions by subsumption tests."""

    def __init__(self, tbox: TBox, names: tuple[str, ...], node_budget: int):
        self.tbox = tbox
        self.names = names
        self.node_budget = node_budget
        self._fresh = 0

    def ask(self, question: Implication):
        premise = conj([_attr_concept(a) for a in sorted(question.premise)])
        for attr in sorted(question.conclusion):
            result = satisfiable(
                self.tbox, conj([premise, neg(_attr_concept(attr))]), self.node_budget
            )
            if result:
                row = []
                # names absent from the witness have empty extension by
                # construction, so the unmapped-name warning is irrelevant here
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore", UnmappedNameWarning)
                    for name in self.names:
                        member = result.witness_element in eval_concept(
                            result.witness, Atomic(name)
                        )
                        row.append(_literal_attr(member, name))
                self._fresh += 1
                return Counterexample(f"w{self._fresh}", frozenset(row))
        return None


def build_hierarchy(
    tbox: TBox, names, node_budget: int = DEFAULT_NODE_BUDGET
) -> ConjunctionHierarchy:
    """Explore the subsumption lattice of literal conjunctions over ``names``.

    The questions go to the reasoner; rejected ones are answered with rows
    read off the reasoner's witness models.  Complementary literal pairs are
    seeded as background implications to the unsatisfiable full set, so no
    question ever asks about a contradictory premise.
    """
    names = tuple(names)
    if len(set(names)) != len(names):
        raise InputError("duplicate names")
    literals = tuple(
        _literal_attr(positive, n) for n in names for positive in (True, False)
    )
    universe = frozenset(literals)
    background = [
        Implication(frozenset({n, _NEG_MARK + n}), universe) for n in names
    ]
    ctx = FormalContext(literals)
    result = explore(ctx, _ReasonerExpert(tbox, names, node_budget), background=background)
    return ConjunctionHierarchy(
        tbox=tbox,
        names=names,
        literals=literals,
        base=tuple(background) + tuple(result.implications),
        context=result.context,
    )


def _conjunction_of_attrs(h: ConjunctionHierarchy, attrs: frozenset[str]) -> LiteralConjunction:
    if attrs == frozenset(h.literals):
        return BOTTOM_CONJUNCTION
    return literal_conjunction(
        {a for a in attrs if not a.startswith(_NEG_MARK)},
        {a[len(_NEG_MARK):] for a in attrs if a.startswith(_NEG_MARK)},
    )


def implication_gci(h: ConjunctionHierarchy, imp: Implication) -> tuple[Concept, Concept]:
    """Render a hierarchy implication as a pair of concepts for a gci line.

    A conclusion covering every literal is the contradiction and prints as
    bottom rather than as the full literal set.
    """
    lhs = conj([_attr_concept(a) for a in sorted(imp.premise)])
    if imp.conclusion >= frozenset(h.literals):
        return lhs, BOTTOM
    rhs = conj([_attr_concept(a) for a in sorted(imp.conclusion)])
    return lhs, rhs


def min_subsuming_conjunction(
    h: ConjunctionHierarchy, lc: LiteralConjunction
) -> LiteralConjunction:
    """The least literal conjunction over the hierarchy's names subsuming ``lc``."""
    if lc.is_bottom:
        return BOTTOM_CONJUNCTION
    return _conjunction_of_attrs(h, h.closure(h.attrs_of(lc)))


def common_subsuming_conjunction(
    h: ConjunctionHierarchy, a: LiteralConjunction, b: LiteralConjunction
) -> LiteralConjunction:
    """The least literal conjunction subsuming both arguments.

    The join in the conjunction lattice: intersect the closures, except that
    bottom is the identity.
    """
    if a.is_bottom:
        return min_subsuming_conjunction(h, b)
    if b.is_bottom:
        return min_subsuming_conjunction(h, a)
    closed = h.closure(h.attrs_of(a)) & h.closure(h.attrs_of(b))
    return _conjunction_of_attrs(h, closed)


# --- the existential-value fragment ------------------------------------------


@dataclass
class _AleNode:
    literals: set[tuple[bool, str]] = field(default_factory=set)
    exists: dict[str, list["_AleNode"]] = field(default_factory=dict)
    forall: dict[str, "_AleNode"] = field(default_factory=dict)
    bottom: bool = False

    def copy(self) -> "_AleNode":
        return _AleNode(
            set(self.literals),
            {r: [e.copy() for e in es] for r, es in self.exists.items()},
            {r: v.copy() for r, v in self.forall.items()},
            self.bottom,
        )


def _collect(concept: Concept, node: _AleNode) -> None:
    match concept:
        case Top():
            pass
        case Bottom():
            node.bottom = True
        case Atomic(name):
            node.literals.add((True, name))
        case Not(Atomic(name)):
            node.literals.add((False, name))
        case And(children):
            for child in children:
                _collect(child, node)
        case Exists(role, child):
            sub = _AleNode()
            _collect(child, sub)
            node.exists.setdefault(role, []).append(sub)
        case Forall(role, child):
            sub = _AleNode()
            _collect(child, sub)
            if role in node.forall:
                node.forall[role] = _merge(node.forall[role], sub)
            else:
                node.forall[role] = sub
        case _:
            raise NotAleError(
                f"concept uses a constructor outside the existential-value fragment: {concept}"
            )


def _merge(a: _AleNode, b: _AleNode) -> _AleNode:
    out = a.copy()
    out.literals |= b.literals
    out.bottom = out.bottom or b.bottom
    for role, es in b.exists.items():
        out.exists.setdefault(role, []).extend(e.copy() for e in es)
    for role, v in b.forall.items():
        out.forall[role] = _merge(out.forall[role], v) if role in out.forall else v.copy()
    return out


def _normalize(node: _AleNode) -> _AleNode:
    """Push value restrictions into existentials; detect unsatisfiable nodes."""
    forall = {r: _normalize(v) for r, v in node.forall.items()}
    exists: dict[str, list[_AleNode]] = {}
    bottom = node.bottom
    for role, es in node.exists.items():
        merged = []
        for e in es:
            combined = _merge(e, forall[role]) if role in forall else e
            norm = _normalize(combined)
            merged.append(norm)
            bottom = bottom or norm.bottom
        exists[role] = merged
    if any((True, n) in node.literals and (False, n) in node.literals for _, n in node.literals):
        bottom = True
    out = _AleNode(set(node.literals), exists, forall, bottom)
    return out


def _ale_tree(concept: Concept) -> _AleNode:
    root = _AleNode()
    _collect(concept, root)
    return _normalize(root)


def _render(node: _AleNode) -> Concept:
    if node.bottom:
        return BOTTOM
    parts: list[Concept] = [
        Atomic(name) if positive else Not(Atomic(name)) for positive, name in node.literals
    ]
    for role in sorted(node.exists):
        parts += [Exists(role, _render(e)) for e in node.exists[role]]
    for role in sorted(node.forall):
        filler = _render(node.forall[role])
        if not isinstance(filler, Top):
            parts.append(Forall(role, filler))
    return conj(parts)


def _lcs_nodes(a: _AleNode, b: _AleNode) -> _AleNode:
    if a.bottom:
        return b.copy()
    if b.bottom:
        return a.copy()
    out = _AleNode(a.literals & b.literals)
    for role in set(a.exists) & set(b.exists):
        out.exists[role] = [_lcs_nodes(e, f) for e in a.exists[role] for f in b.exists[role]]
    for role in set(a.forall) & set(b.forall):
        out.forall[role] = _lcs_nodes(a.forall[role], b.forall[role])
    return out


def lcs_ale(c: Concept, d: Concept) -> Concept:
    """Least common subsumer in the existential-value fragment, ignoring any TBox."""
    return _render(_lcs_nodes(_ale_tree(c), _ale_tree(d)))


def _node_closure(h: ConjunctionHierarchy, node: _AleNode) -> frozenset[str]:
    """Hierarchy closure of the node's in-universe literals."""
    in_universe = {
        _literal_attr(positive, name)
        for positive, name in node.literals
        if name in set(h.names)
    }
    return h.closure(frozenset(in_universe))


def _prune_literals(h: ConjunctionHierarchy, attrs: frozenset[str]) -> frozenset[str]:
    """Drop literals implied by the remaining ones; keeps equivalence."""
    kept = set(attrs)
    for attr in h.literals:
        if attr in kept and attr in h.closure(frozenset(kept - {attr})):
            kept.discard(attr)
    return frozenset(kept)


def _gcs_nodes(h: ConjunctionHierarchy, a: _AleNode, b: _AleNode) -> _AleNode:
    universe = frozenset(h.literals)
    names = set(h.names)
    a_closure = _node_closure(h, a)
    b_closure = _node_closure(h, b)
    a_bottom = a.bottom or a_closure == universe
    b_bottom = b.bottom or b_closure == universe
    if a_bottom and b_bottom:
        return _AleNode(bottom=True)
    if a_bottom or b_bottom:
        node, closure = (b, b_closure) if a_bottom else (a, a_closure)
        out = node.copy()
        out.literals = {
            (positive, name) for positive, name in node.literals if name not in names
        } | {_attr_literal(attr) for attr in _prune_literals(h, closure)}
        return out
    shared = _prune_literals(h, a_closure & b_closure)
    out = _AleNode(
        {(positive, name) for positive, name in a.literals & b.literals if name not in names}
        | {_attr_literal(attr) for attr in shared}
    )
    for role in set(a.exists) & set(b.exists):
        out.exists[role] = [_gcs_nodes(h, e, f) for e in a.exists[role] for f in b.exists[role]]
    for role in set(a.forall) & set(b.forall):
        out.forall[role] = _gcs_nodes(h, a.forall[role], b.forall[role])
    return out


def _attr_literal(attr: str) -> tuple[bool, str]:
    if attr.startswith(_NEG_MARK):
        return (False, attr[len(_NEG_MARK):])
    return (True, attr)


def gcs(h: ConjunctionHierarchy, c: Concept, d: Concept) -> Concept:
    """A good common subsumer of ``c`` and ``d`` w.r.t. the hierarchy's terminology.

    Structure follows ``lcs_ale``; at every level the two literal parts are
    generalized to the intersection of their hierarchy closures, then pruned
    of redundant conjuncts.  The result subsumes both inputs and is subsumed
    by the terminology-ignoring least common subsumer.
    """
    return _render(_gcs_nodes(h, _ale_tree(c), _ale_tree(d)))
