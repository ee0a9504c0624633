"""Concrete syntax for concepts and ontology files.

Concept grammar, loosest binding last::

    or_expr  ::= and_expr ("or" and_expr)*
    and_expr ::= unary ("and" unary)*
    unary    ::= "not" unary | "some" ROLE "." unary | "all" ROLE "." unary | atom
    atom     ::= "top" | "bottom" | NAME | "(" or_expr ")"

Keywords are case-insensitive; names match ``[A-Za-z][A-Za-z0-9_-]*``.  The
operators may also be written with the symbols for intersection, union,
complement, and the two quantifiers.

Ontology files are line oriented: ``define N := C``, ``gci C => D`` (the
inclusion arrow may be written as the squared subset symbol), ``assert C (a)``,
``role r (a, b)``; ``#`` starts a comment.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .concepts import (
    BOTTOM,
    TOP,
    Atomic,
    Concept,
    Exists,
    Forall,
    conj,
    disj,
    neg,
    to_text,
)
from .errors import ConceptSyntaxError
from .ontology import ABox, KnowledgeBase, TBox

__all__ = ["parse_concept", "parse_ontology", "render_ontology"]

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_-]*")
_KEYWORDS = {"top", "bottom", "not", "and", "or", "some", "all"}
_SYMBOL_KEYWORDS = {"⊓": "and", "⊔": "or", "¬": "not", "∃": "some", "∀": "all"}


@dataclass(frozen=True)
class _Token:
    kind: str  # keyword text, "name", "(", ")", ".", or "end"
    text: str
    line: int
    column: int


def _tokenize(text: str, line_offset: int = 0) -> list[_Token]:
    tokens: list[_Token] = []
    line = 1
    col = 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch in "().":
            tokens.append(_Token(ch, ch, line + line_offset, col))
            col += 1
            i += 1
            continue
        if ch in _SYMBOL_KEYWORDS:
            tokens.append(_Token(_SYMBOL_KEYWORDS[ch], ch, line + line_offset, col))
            col += 1
            i += 1
            continue
        m = _NAME_RE.match(text, i)
        if m:
            word = m.group()
            kind = word.lower() if word.lower() in _KEYWORDS else "name"
            tokens.append(_Token(kind, word, line + line_offset, col))
            col += len(word)
            i += len(word)
            continue
        raise ConceptSyntaxError(f"unexpected character {ch!r}", line + line_offset, col)
    tokens.append(_Token("end", "", line + line_offset, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ConceptSyntaxError(
                f"expected {kind!r}, found {tok.text or 'end of input'!r}", tok.line, tok.column
            )
        return self.take()

    def or_expr(self) -> Concept:
        parts = [self.and_expr()]
        while self.peek().kind == "or":
            self.take()
            parts.append(self.and_expr())
        return disj(parts) if len(parts) > 1 else parts[0]

    def and_expr(self) -> Concept:
        parts = [self.unary()]
        while self.peek().kind == "and":
            self.take()
            parts.append(self.unary())
        return conj(parts) if len(parts) > 1 else parts[0]

    def unary(self) -> Concept:
        tok = self.peek()
        if tok.kind == "not":
            self.take()
            return neg(self.unary())
        if tok.kind in ("some", "all"):
            self.take()
            role = self.expect("name").text
            self.expect(".")
            child = self.unary()
            return Exists(role, child) if tok.kind == "some" else Forall(role, child)
        return self.atom()

    def atom(self) -> Concept:
        tok = self.take()
        if tok.kind == "top":
            return TOP
        if tok.kind == "bottom":
            return BOTTOM
        if tok.kind == "name":
            return Atomic(tok.text)
        if tok.kind == "(":
            inner = self.or_expr()
            self.expect(")")
            return inner
        if tok.kind in _KEYWORDS:
            raise ConceptSyntaxError(
                f"constructor keyword {tok.text!r} cannot start a concept here", tok.line, tok.column
            )
        raise ConceptSyntaxError(
            f"expected a concept, found {tok.text or 'end of input'!r}", tok.line, tok.column
        )


def parse_concept(text: str, line_offset: int = 0) -> Concept:
    """Parse one concept expression; trailing input is an error."""
    parser = _Parser(_tokenize(text, line_offset))
    concept = parser.or_expr()
    tok = parser.peek()
    if tok.kind != "end":
        raise ConceptSyntaxError(f"unexpected trailing input {tok.text!r}", tok.line, tok.column)
    return concept


_ROLE_LINE = re.compile(
    r"^role\s+(?P<role>[A-Za-z][A-Za-z0-9_-]*)\s*\(\s*(?P<a>[A-Za-z][A-Za-z0-9_-]*)\s*,"
    r"\s*(?P<b>[A-Za-z][A-Za-z0-9_-]*)\s*\)$"
)
_IND = re.compile(r"^\s*(?P<ind>[A-Za-z][A-Za-z0-9_-]*)\s*\)$")


def parse_ontology(text: str) -> KnowledgeBase:
    """Read a knowledge base from the line-oriented ontology format."""
    definitions: list[tuple[str, Concept]] = []
    gcis: list[tuple[Concept, Concept]] = []
    concept_assertions: list[tuple[Concept, str]] = []
    role_assertions: list[tuple[str, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split(None, 1)[0]
        rest = line[len(head):].strip()
        if head == "define":
            if ":=" not in rest:
                raise ConceptSyntaxError("define line needs ':='", lineno)
            name_part, body = rest.split(":=", 1)
            name = name_part.strip()
            if not _NAME_RE.fullmatch(name):
                raise ConceptSyntaxError(f"bad concept name {name!r}", lineno)
            definitions.append((name, parse_concept(body, line_offset=lineno - 1)))
        elif head == "gci":
            arrow = "=>" if "=>" in rest else ("⊑" if "⊑" in rest else None)
            if arrow is None:
                raise ConceptSyntaxError("gci line needs '=>'", lineno)
            lhs, rhs = rest.split(arrow, 1)
            gcis.append(
                (parse_concept(lhs, line_offset=lineno - 1), parse_concept(rhs, line_offset=lineno - 1))
            )
        elif head == "assert":
            before, sep, after = rest.rpartition("(")
            m = _IND.match(after) if sep else None
            if m is None or not before.strip():
                raise ConceptSyntaxError("assert line needs 'assert C (individual)'", lineno)
            concept_assertions.append(
                (parse_concept(before, line_offset=lineno - 1), m.group("ind"))
            )
        elif head == "role":
            m = _ROLE_LINE.match(line)
            if m is None:
                raise ConceptSyntaxError("role line needs 'role r (a, b)'", lineno)
            role_assertions.append((m.group("role"), m.group("a"), m.group("b")))
        else:
            raise ConceptSyntaxError(f"unknown directive {head!r}", lineno)
    return KnowledgeBase(
        TBox(tuple(definitions), tuple(gcis)),
        ABox(tuple(concept_assertions), tuple(role_assertions)),
    )


def render_ontology(kb: KnowledgeBase) -> str:
    """Canonical ontology text: definitions, inclusions, then assertions."""
    lines: list[str] = []
    for name, body in kb.tbox.definitions:
        lines.append(f"define {name} := {to_text(body)}")
    for lhs, rhs in kb.tbox.gcis:
        lines.append(f"gci {to_text(lhs)} => {to_text(rhs)}")
    for concept, individual in kb.abox.concept_assertions:
        lines.append(f"assert {to_text(concept)} ({individual})")
    for role, a, b in kb.abox.role_assertions:
        lines.append(f"role {role} ({a}, {b})")
    return "\n".join(lines) + "\n" if lines else ""
