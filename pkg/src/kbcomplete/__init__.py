"""Interactive knowledge-base completion.

The package combines two classical toolboxes: formal concept analysis over
possibly partial object descriptions, and a small description-logic reasoner.
An exploration loop asks an expert exactly the implication questions the
current knowledge cannot decide, and every answer lands in the knowledge base
as an inclusion axiom or a counterexample individual.
"""

from .completion import (
    CompletionSession,
    Question,
    Status,
    answer_no,
    answer_yes,
    current_question,
    induced_partial_context,
    oracle_expert,
    pause,
    postpone,
    resume,
    run_with_expert,
    start,
    undo,
)
from .concepts import Atomic, Bottom, Concept, Exists, Forall, Not, TOP, BOTTOM, conj, disj, neg, nnf, to_text
from .fca import FormalContext, Implication, explore, holds_in, next_closed, stem_base
from .formats import read_cxt, read_pcxt, write_cxt, write_pcxt
from .lattice import (
    ConjunctionHierarchy,
    LiteralConjunction,
    build_hierarchy,
    common_subsuming_conjunction,
    gcs,
    lcs_ale,
    literal_conjunction,
    min_subsuming_conjunction,
)
from .ontology import ABox, KnowledgeBase, TBox, unfold
from .parsing import parse_concept, parse_ontology, render_ontology
from .partial import PartialContext, PartialObjectDescription, certain_conclusion, refutes
from .reasoner import EntailmentVerdict, Verdict, abox_consistent, instance_check, satisfiable, subsumes
from .semantics import Interpretation, eval_concept, models_abox, models_tbox

__all__ = [
    "CompletionSession", "Question", "Status", "answer_no", "answer_yes",
    "current_question", "induced_partial_context", "oracle_expert", "pause",
    "postpone", "resume", "run_with_expert", "start", "undo",
    "read_cxt", "read_pcxt", "write_cxt", "write_pcxt",
    "ConjunctionHierarchy", "LiteralConjunction", "build_hierarchy",
    "common_subsuming_conjunction", "gcs", "lcs_ale", "literal_conjunction",
    "min_subsuming_conjunction",
    "Atomic", "Bottom", "Concept", "Exists", "Forall", "Not", "TOP", "BOTTOM",
    "conj", "disj", "neg", "nnf",
    "FormalContext", "Implication", "explore", "holds_in", "next_closed", "stem_base",
    "ABox", "KnowledgeBase", "TBox", "unfold",
    "parse_concept", "parse_ontology", "render_ontology", "to_text",
    "PartialContext", "PartialObjectDescription", "certain_conclusion", "refutes",
    "EntailmentVerdict", "Verdict", "abox_consistent", "instance_check", "satisfiable", "subsumes",
    "Interpretation", "eval_concept", "models_abox", "models_tbox",
]

__version__ = "0.1.0"
