"""Command line front end.

Verdict-style subcommands (subsumes, instance) exit 0 for entailed, 1 for
refuted or false, 2 for unknown; any load or validation failure exits 3 with
a diagnostic on stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import completion as co
from .concepts import to_text
from .errors import CounterexampleError, InputError, KbCompleteError
from .fca import closed_sets, context_closure, stem_base
from .formats import read_cxt, write_pcxt
from .lattice import build_hierarchy, gcs, implication_gci, lcs_ale
from .ontology import KnowledgeBase
from .parsing import parse_concept, parse_ontology, render_ontology
from .partial import PartialObjectDescription
from .reasoner import DEFAULT_NODE_BUDGET, Verdict, instance_check, subsumes

__all__ = ["main"]


def _split_names(values: Sequence[str]) -> tuple[str, ...]:
    names: list[str] = []
    for value in values:
        names.extend(part for part in value.split(",") if part)
    return tuple(names)


def _load_kb(path: str) -> KnowledgeBase:
    return parse_ontology(Path(path).read_text(encoding="utf-8"))


def _load_ctx(path: str):
    return read_cxt(Path(path).read_text(encoding="utf-8"))


class _InteractiveExpert:
    """Prompts on stdin: y confirms, n asks for a counterexample row."""

    def __init__(self, attributes: tuple[str, ...], out):
        self.attributes = attributes
        self.out = out

    def ask(self, question) -> Optional[PartialObjectDescription]:
        prompt = f"{question}? [y/n] "
        while True:
            self.out.write(prompt)
            self.out.flush()
            reply = input().strip().lower()
            if reply in ("y", "yes"):
                return None
            if reply in ("n", "no"):
                return self._read_pod()
            self.out.write("please answer y or n\n")

    def _read_pod(self) -> PartialObjectDescription:
        self.out.write("counterexample name: ")
        self.out.flush()
        name = input().strip()
        self.out.write(f"row over ({', '.join(self.attributes)}) as +/-/? cells: ")
        self.out.flush()
        row = input().strip()
        if len(row) != len(self.attributes) or any(c not in "+-?" for c in row):
            raise InputError(f"expected {len(self.attributes)} cells drawn from + - ?")
        present = frozenset(a for a, c in zip(self.attributes, row) if c == "+")
        absent = frozenset(a for a, c in zip(self.attributes, row) if c == "-")
        return PartialObjectDescription(name, present, absent)


def _cmd_complete(args) -> int:
    kb = _load_kb(args.kb)
    names = _split_names(args.names)
    order = _split_names(args.order) if args.order else None
    session = co.start(kb, names, order, node_budget=args.node_budget)

    if args.oracle:
        expert = co.oracle_expert(_load_ctx(args.oracle))
        session, transcript = co.run_with_expert(session, expert)
        for implication, answer in transcript:
            print(f"{implication}? {answer}")
    else:
        expert = _InteractiveExpert(session.state.order, sys.stdout)
        while True:
            question = co.current_question(session)
            if question is None:
                break
            try:
                reply = expert.ask(question.implication)
                if reply is None:
                    session = co.answer_yes(session, question.id)
                    print(f"{question.implication}? yes")
                else:
                    session = co.answer_no(session, question.id, reply)
                    print(f"{question.implication}? no: {reply.object_id}")
            except (CounterexampleError, InputError) as exc:
                print(f"rejected: {exc}", file=sys.stderr)

    ontology_text = render_ontology(session.kb)
    context_text = write_pcxt(session.state.pctx)
    if args.out_kb:
        Path(args.out_kb).write_text(ontology_text, encoding="utf-8")
    if args.out_context:
        Path(args.out_context).write_text(context_text, encoding="utf-8")
    if not args.out_kb:
        print("== completed ontology ==")
        sys.stdout.write(ontology_text)
    if not args.out_context:
        print("== final context ==")
        sys.stdout.write(context_text)
    return 0


def _cmd_stembase(args) -> int:
    ctx = _load_ctx(args.context)
    for implication in stem_base(ctx):
        print(implication)
    return 0


def _cmd_closedsets(args) -> int:
    ctx = _load_ctx(args.context)
    for closed in closed_sets(lambda s: context_closure(ctx, s), ctx.attributes):
        print("{" + ", ".join(a for a in ctx.attributes if a in closed) + "}")
    return 0


def _cmd_subsumes(args) -> int:
    kb = _load_kb(args.kb)
    general = parse_concept(args.general)
    specific = parse_concept(args.specific)
    if subsumes(kb.tbox, general, specific, node_budget=args.node_budget):
        print(f"yes: {to_text(specific)} is subsumed by {to_text(general)}")
        return 0
    print(f"no: {to_text(specific)} is not subsumed by {to_text(general)}")
    return 1


def _cmd_instance(args) -> int:
    kb = _load_kb(args.kb)
    concept = parse_concept(args.concept)
    verdict = instance_check(kb, args.individual, concept, node_budget=args.node_budget)
    print(verdict.status.value)
    return {Verdict.ENTAILED: 0, Verdict.REFUTED: 1, Verdict.UNKNOWN: 2}[verdict.status]


def _cmd_gcs(args) -> int:
    kb = _load_kb(args.kb)
    names = _split_names(args.names) if args.names else tuple(sorted(kb.tbox.defined_names()))
    if not names:
        print("the terminology defines no concept names; pass --names", file=sys.stderr)
        return 3
    c = parse_concept(args.c)
    d = parse_concept(args.d)
    hierarchy = build_hierarchy(kb.tbox, names, node_budget=args.node_budget)
    if args.show_lcs:
        print(f"lcs: {to_text(lcs_ale(c, d))}")
    print(f"gcs: {to_text(gcs(hierarchy, c, d))}")
    return 0


def _cmd_hierarchy(args) -> int:
    kb = _load_kb(args.kb)
    names = _split_names(args.names) if args.names else tuple(sorted(kb.tbox.defined_names()))
    if not names:
        print("the terminology defines no concept names; pass --names", file=sys.stderr)
        return 3
    hierarchy = build_hierarchy(kb.tbox, names, node_budget=args.node_budget)
    for implication in hierarchy.base:
        lhs, rhs = implication_gci(hierarchy, implication)
        print(f"gci {to_text(lhs)} => {to_text(rhs)}")
    return 0


def _cmd_serve(args) -> int:
    from .service import serve

    serve(port=args.port, data_dir=args.data_dir, node_budget=args.node_budget, host=args.host)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kbcomplete",
        description="Knowledge base completion, lattice tools, and reasoner queries.",
    )
    parser.add_argument(
        "--node-budget", type=int, default=DEFAULT_NODE_BUDGET,
        help="tableau node budget per reasoning call",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("complete", help="run interactive or oracle-driven completion")
    p.add_argument("kb", help="ontology file")
    p.add_argument("--names", nargs="+", required=True, help="concept names (comma or space separated)")
    p.add_argument("--order", nargs="+", help="question order; defaults to --names")
    p.add_argument("--oracle", help="full context file answering as the intended interpretation")
    p.add_argument("--interactive", action="store_true", help="prompt on stdin (default without --oracle)")
    p.add_argument("--out-kb", help="write the completed ontology here")
    p.add_argument("--out-context", help="write the final partial context here")
    p.set_defaults(func=_cmd_complete)

    p = sub.add_parser("stembase", help="print the minimal implication base of a context")
    p.add_argument("context", help=".cxt file")
    p.set_defaults(func=_cmd_stembase)

    p = sub.add_parser("closedsets", help="enumerate closed attribute sets in lectic order")
    p.add_argument("context", help=".cxt file")
    p.set_defaults(func=_cmd_closedsets)

    p = sub.add_parser("subsumes", help="does the first concept subsume the second?")
    p.add_argument("kb")
    p.add_argument("general")
    p.add_argument("specific")
    p.set_defaults(func=_cmd_subsumes)

    p = sub.add_parser("instance", help="is the individual an instance of the concept?")
    p.add_argument("kb")
    p.add_argument("individual")
    p.add_argument("concept")
    p.set_defaults(func=_cmd_instance)

    p = sub.add_parser("gcs", help="good common subsumer of two concepts")
    p.add_argument("kb")
    p.add_argument("c")
    p.add_argument("d")
    p.add_argument("--names", nargs="+", help="literal universe; defaults to defined names")
    p.add_argument("--show-lcs", action="store_true", help="also print the terminology-blind lcs")
    p.set_defaults(func=_cmd_gcs)

    p = sub.add_parser("hierarchy", help="implications between literal conjunctions")
    p.add_argument("kb")
    p.add_argument("--names", nargs="+", help="literal universe; defaults to defined names")
    p.set_defaults(func=_cmd_hierarchy)

    p = sub.add_parser("serve", help="start the HTTP session service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--data-dir", help="persist sessions here")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except KbCompleteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
