"""A tableau decision procedure for satisfiability, subsumption, and instance checks.

The calculus is the standard one for the boolean-plus-quantifiers concept
language: work on labels in negation normal form, unfold defined names lazily,
branch on disjunctions, create role successors for existential constraints,
and propagate value restrictions along edges.  General inclusions are
internalized into one constraint set that every node must carry; termination
in their presence comes from ancestor subset blocking.  A completed clash-free
tableau doubles as a finite witness model.

The search is bounded by a node budget.  Exhausting it raises a resource
error; it never turns into a wrong answer.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .concepts import (
    TOP,
    And,
    Atomic,
    Bottom,
    Concept,
    Exists,
    Forall,
    Not,
    Or,
    concept_names,
    conj,
    disj,
    neg,
    nnf,
)
from .errors import InputError, ResourceBudgetError
from .ontology import ABox, KnowledgeBase, TBox, unfold
from .semantics import Interpretation, eval_concept

__all__ = [
    "DEFAULT_NODE_BUDGET",
    "SatResult",
    "Verdict",
    "EntailmentVerdict",
    "satisfiable",
    "subsumes",
    "abox_consistent",
    "instance_check",
]

DEFAULT_NODE_BUDGET = 100_000


@dataclass
class SatResult:
    satisfiable: bool
    witness: Optional[Interpretation] = None
    witness_element: Optional[object] = None

    def __bool__(self) -> bool:
        return self.satisfiable


class Verdict(Enum):
    ENTAILED = "entailed"
    REFUTED = "refuted"
    UNKNOWN = "unknown"


@dataclass
class EntailmentVerdict:
    status: Verdict
    witness: Optional[Interpretation] = None
    """A model of the knowledge base in which the queried membership fails,
    present whenever the status is not ``entailed``."""


class _Budget:
    __slots__ = ("remaining",)

    def __init__(self, limit: int):
        self.remaining = limit

    def spend(self) -> None:
        self.remaining -= 1
        if self.remaining < 0:
            raise ResourceBudgetError("tableau node budget exhausted")


@dataclass
class _Tableau:
    labels: dict[int, set[Concept]] = field(default_factory=dict)
    edges: dict[int, dict[str, set[int]]] = field(default_factory=dict)
    parent: dict[int, tuple[int, str] | None] = field(default_factory=dict)
    next_id: int = 0

    def copy(self) -> "_Tableau":
        return _Tableau(
            {n: set(lbl) for n, lbl in self.labels.items()},
            {n: {r: set(s) for r, s in by_role.items()} for n, by_role in self.edges.items()},
            dict(self.parent),
            self.next_id,
        )

    def new_node(self, parent: tuple[int, str] | None, budget: _Budget) -> int:
        budget.spend()
        node = self.next_id
        self.next_id += 1
        self.labels[node] = set()
        self.edges[node] = {}
        self.parent[node] = parent
        if parent is not None:
            src, role = parent
            self.edges[src].setdefault(role, set()).add(node)
        return node

    def successors(self, node: int, role: str) -> set[int]:
        return self.edges[node].get(role, set())

    def ancestors(self, node: int):
        cur = self.parent[node]
        while cur is not None:
            yield cur[0]
            cur = self.parent[cur[0]]


class _Engine:
    def __init__(self, tbox: TBox, node_budget: int):
        self.defs = dict(tbox.definitions)
        self.neg_bodies = {name: nnf(neg(body)) for name, body in self.defs.items()}
        self.pos_bodies = {name: nnf(body) for name, body in self.defs.items()}
        self.constraints = tuple(nnf(disj([neg(lhs), rhs])) for lhs, rhs in tbox.gcis)
        self.blocking = bool(tbox.gcis)
        self.budget = _Budget(node_budget)
        self.tbox = tbox

    # --- rule application -------------------------------------------------

    def _push(self, tab: _Tableau, node: int, concept: Concept) -> bool:
        """Add ``concept`` to the node label; True if it was new."""
        label = tab.labels[node]
        if concept in label:
            return False
        label.add(concept)
        return True

    def _seed(self, tab: _Tableau, node: int, concepts) -> None:
        for c in concepts:
            self._push(tab, node, c)
        for c in self.constraints:
            self._push(tab, node, c)

    def _has_clash(self, tab: _Tableau, node: int) -> bool:
        label = tab.labels[node]
        if any(isinstance(c, Bottom) for c in label):
            return True
        return any(
            isinstance(c, Atomic) and Not(c) in label for c in label
        )

    def _blocked_by(self, tab: _Tableau, node: int) -> Optional[int]:
        if not self.blocking or tab.parent[node] is None:
            return None
        label = tab.labels[node]
        for anc in tab.ancestors(node):
            if label <= tab.labels[anc]:
                return anc
        return None

    def _saturate(self, tab: _Tableau) -> bool:
        """Apply all deterministic rules to a fixpoint; False on clash."""
        changed = True
        while changed:
            changed = False
            for node in list(tab.labels):
                label = tab.labels[node]
                for c in list(label):
                    match c:
                        case And(children):
                            for child in children:
                                changed |= self._push(tab, node, child)
                        case Atomic(name) if name in self.defs:
                            changed |= self._push(tab, node, self.pos_bodies[name])
                        case Not(Atomic(name)) if name in self.defs:
                            changed |= self._push(tab, node, self.neg_bodies[name])
                        case Forall(role, child):
                            for succ in list(tab.successors(node, role)):
                                changed |= self._push(tab, succ, child)
                if self._has_clash(tab, node):
                    return False
        return True

    def _find_or(self, tab: _Tableau) -> Optional[tuple[int, Or]]:
        for node in tab.labels:
            if self._blocked_by(tab, node) is not None:
                continue
            for c in tab.labels[node]:
                if isinstance(c, Or) and not any(d in tab.labels[node] for d in c.children):
                    return node, c
        return None

    def _find_exists(self, tab: _Tableau) -> Optional[tuple[int, Exists]]:
        for node in tab.labels:
            if self._blocked_by(tab, node) is not None:
                continue
            for c in tab.labels[node]:
                if isinstance(c, Exists) and not any(
                    c.child in tab.labels[succ] for succ in tab.successors(node, c.role)
                ):
                    return node, c
        return None

    def _complete(self, tab: _Tableau) -> Optional[_Tableau]:
        """Depth-first completion; a completed clash-free tableau or None."""
        if not self._saturate(tab):
            return None
        pick = self._find_or(tab)
        if pick is not None:
            node, or_concept = pick
            for disjunct in or_concept.children:
                branch = tab.copy()
                self._push(branch, node, disjunct)
                done = self._complete(branch)
                if done is not None:
                    return done
            return None
        pick_e = self._find_exists(tab)
        if pick_e is not None:
            node, ex = pick_e
            succ = tab.new_node((node, ex.role), self.budget)
            self._seed(tab, succ, (ex.child,))
            return self._complete(tab)
        return tab

    # --- witness extraction ----------------------------------------------

    def _model_of(self, tab: _Tableau, individual_nodes: dict[str, int]) -> Interpretation:
        redirect: dict[int, int] = {}
        for node in tab.labels:
            blocker = self._blocked_by(tab, node)
            if blocker is not None:
                redirect[node] = blocker
        kept = [n for n in tab.labels if n not in redirect]

        def resolve(n: int) -> int:
            while n in redirect:
                n = redirect[n]
            return n

        # leading underscores keep anonymous elements apart from individual names
        element = {n: f"_e{n}" for n in kept}
        for ind, node in individual_nodes.items():
            element[node] = ind

        primitive_names = set()
        for label in tab.labels.values():
            for c in label:
                match c:
                    case Atomic(name) if name not in self.defs:
                        primitive_names.add(name)
                    case Not(Atomic(name)) if name not in self.defs:
                        primitive_names.add(name)
        for name in self.defs:
            primitive_names |= concept_names(unfold(self.tbox, Atomic(name)))

        concept_map = {
            name: frozenset(
                element[n] for n in kept if Atomic(name) in tab.labels[n]
            )
            for name in primitive_names
        }
        role_map: dict[str, frozenset] = {}
        pairs: dict[str, set] = {}
        for node in kept:
            for role, succs in tab.edges[node].items():
                for succ in succs:
                    pairs.setdefault(role, set()).add((element[node], element[resolve(succ)]))
        role_map = {role: frozenset(ps) for role, ps in pairs.items()}

        interp = Interpretation(
            domain=tuple(element[n] for n in kept),
            concept_map=concept_map,
            role_map=role_map,
            individual_map={ind: element[node] for ind, node in individual_nodes.items()},
        )
        # defined names get their extensions recomputed from the primitives,
        # in a single pass since unfolding bottoms out there
        defined_map = {
            name: eval_concept(interp, unfold(self.tbox, Atomic(name))) for name in self.defs
        }
        return Interpretation(
            domain=interp.domain,
            concept_map={**concept_map, **defined_map},
            role_map=role_map,
            individual_map=dict(interp.individual_map),
        )

    # --- entry points ------------------------------------------------------

    def run_concept(self, concept: Concept) -> SatResult:
        tab = _Tableau()
        root = tab.new_node(None, self.budget)
        self._seed(tab, root, (nnf(concept),))
        done = self._complete(tab)
        if done is None:
            return SatResult(False)
        interp = self._model_of(done, {})
        return SatResult(True, interp, interp.domain[0] if interp.domain else None)

    def run_abox(self, abox: ABox, extra: tuple[tuple[Concept, str], ...] = ()) -> SatResult:
        tab = _Tableau()
        individual_nodes: dict[str, int] = {}

        def node_for(ind: str) -> int:
            if ind not in individual_nodes:
                individual_nodes[ind] = tab.new_node(None, self.budget)
                self._seed(tab, individual_nodes[ind], ())
            return individual_nodes[ind]

        for concept, ind in tuple(abox.concept_assertions) + tuple(extra):
            self._push(tab, node_for(ind), nnf(concept))
        for role, a, b in abox.role_assertions:
            src, dst = node_for(a), node_for(b)
            tab.edges[src].setdefault(role, set()).add(dst)
        if not individual_nodes:
            # no individuals: consistency is satisfiability of the top concept
            return self.run_concept(TOP)
        done = self._complete(tab)
        if done is None:
            return SatResult(False)
        interp = self._model_of(done, individual_nodes)
        return SatResult(True, interp, None)


def satisfiable(
    tbox: TBox, concept: Concept, node_budget: int = DEFAULT_NODE_BUDGET
) -> SatResult:
    """Is ``concept`` satisfiable w.r.t. ``tbox``?  Carries a witness when yes."""
    return _Engine(tbox, node_budget).run_concept(concept)


def subsumes(
    tbox: TBox, general: Concept, specific: Concept, node_budget: int = DEFAULT_NODE_BUDGET
) -> bool:
    """True iff every model of ``tbox`` puts ``specific`` inside ``general``."""
    return not _Engine(tbox, node_budget).run_concept(conj([specific, neg(general)]))


def abox_consistent(kb: KnowledgeBase, node_budget: int = DEFAULT_NODE_BUDGET) -> SatResult:
    return _Engine(kb.tbox, node_budget).run_abox(kb.abox)


def instance_check(
    kb: KnowledgeBase,
    individual: str,
    concept: Concept,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> EntailmentVerdict:
    """Decide whether the knowledge base makes ``individual`` a member of ``concept``.

    ``entailed`` when membership holds in every model, ``refuted`` when
    non-membership does, and ``unknown`` otherwise; the open world keeps all
    three outcomes possible.  The witness accompanying ``refuted``/``unknown``
    is a model of the knowledge base where membership fails.
    """
    if individual not in kb.abox.individuals():
        raise InputError(f"unknown individual {individual!r}")
    engine = _Engine(kb.tbox, node_budget)
    if not engine.run_abox(kb.abox):
        raise InputError("the knowledge base is inconsistent; instance checks are meaningless")
    against = _Engine(kb.tbox, node_budget).run_abox(kb.abox, ((neg(concept), individual),))
    if not against:
        return EntailmentVerdict(Verdict.ENTAILED)
    supporting = _Engine(kb.tbox, node_budget).run_abox(kb.abox, ((concept, individual),))
    if not supporting:
        return EntailmentVerdict(Verdict.REFUTED, against.witness)
    return EntailmentVerdict(Verdict.UNKNOWN, against.witness)
