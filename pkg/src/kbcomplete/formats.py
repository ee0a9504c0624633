"""File formats: full contexts, partial contexts, ontology text, envelopes.

Contexts travel in the Burmeister layout: a one-letter header, a blank line,
the two counts, another blank line, the object names, the attribute names, and
one incidence row per object.  Full contexts use ``X``/``.`` cells under the
header ``B``; partial contexts use ``+``/``-``/``?`` cells under ``BP``.
Writers emit exactly one trailing newline; readers reject trailing garbage.

Envelopes wrap versioned payloads (session snapshots) with a checksum line so
resuming detects truncation and tampering.
"""

from __future__ import annotations

import hashlib

from .errors import FormatError, SnapshotError
from .fca import FormalContext
from .parsing import parse_ontology, render_ontology
from .partial import PartialContext, PartialObjectDescription

__all__ = [
    "read_cxt",
    "write_cxt",
    "read_pcxt",
    "write_pcxt",
    "read_ontology",
    "write_ontology",
    "write_envelope",
    "read_envelope",
]


def _split_document(text: str, what: str) -> list[str]:
    if not text.endswith("\n"):
        raise FormatError(f"{what} must end with a newline")
    return text[:-1].split("\n")


def _parse_header(lines: list[str], header: str, what: str) -> tuple[int, int]:
    if len(lines) < 5:
        raise FormatError(f"truncated {what}", len(lines))
    if lines[0] != header:
        raise FormatError(f"expected header {header!r}, found {lines[0]!r}", 1)
    if lines[1] != "":
        raise FormatError("expected a blank line after the header", 2)
    try:
        objects = int(lines[2])
        attributes = int(lines[3])
    except ValueError:
        raise FormatError("object and attribute counts must be integers", 3) from None
    if objects < 0 or attributes < 0:
        raise FormatError("counts must be non-negative", 3)
    if lines[4] != "":
        raise FormatError("expected a blank line after the counts", 5)
    return objects, attributes


def _parse_names(lines: list[str], n_objects: int, n_attributes: int, what: str):
    header_len = 5
    expected = header_len + n_objects + n_attributes + n_objects
    if len(lines) < expected:
        raise FormatError(f"truncated {what}: expected {expected} lines", len(lines))
    if len(lines) > expected:
        raise FormatError(f"trailing garbage after row {n_objects}", expected + 1)
    object_names = lines[header_len:header_len + n_objects]
    attribute_names = lines[header_len + n_objects:header_len + n_objects + n_attributes]
    rows = lines[header_len + n_objects + n_attributes:]
    if len(set(object_names)) != n_objects:
        raise FormatError("duplicate object names", header_len + 1)
    if len(set(attribute_names)) != n_attributes:
        raise FormatError("duplicate attribute names", header_len + n_objects + 1)
    return object_names, attribute_names, rows


def read_cxt(text: str) -> FormalContext:
    """Read a full context; cells are ``X`` (incident) or ``.``."""
    lines = _split_document(text, "context document")
    n_obj, n_attr = _parse_header(lines, "B", "context document")
    object_names, attribute_names, rows = _parse_names(lines, n_obj, n_attr, "context document")
    ctx = FormalContext(attribute_names)
    first_row_line = 5 + n_obj + n_attr + 1
    for i, (obj, row) in enumerate(zip(object_names, rows)):
        if len(row) != n_attr:
            raise FormatError(
                f"row for {obj!r} has {len(row)} cells, expected {n_attr}", first_row_line + i
            )
        attrs = []
        for attr, cell in zip(attribute_names, row):
            if cell == "X":
                attrs.append(attr)
            elif cell != ".":
                raise FormatError(f"illegal cell {cell!r}", first_row_line + i)
        ctx.add_object(obj, attrs)
    return ctx


def write_cxt(ctx: FormalContext) -> str:
    lines = ["B", "", str(len(ctx.objects)), str(len(ctx.attributes)), ""]
    lines.extend(ctx.objects)
    lines.extend(ctx.attributes)
    for obj in ctx.objects:
        row = ctx.row(obj)
        lines.append("".join("X" if a in row else "." for a in ctx.attributes))
    return "\n".join(lines) + "\n"


def read_pcxt(text: str) -> PartialContext:
    """Read a partial context; cells are ``+`` (present), ``-`` (absent), ``?`` (open)."""
    lines = _split_document(text, "partial context document")
    n_obj, n_attr = _parse_header(lines, "BP", "partial context document")
    object_names, attribute_names, rows = _parse_names(
        lines, n_obj, n_attr, "partial context document"
    )
    pods = []
    first_row_line = 5 + n_obj + n_attr + 1
    for i, (obj, row) in enumerate(zip(object_names, rows)):
        if len(row) != n_attr:
            raise FormatError(
                f"row for {obj!r} has {len(row)} cells, expected {n_attr}", first_row_line + i
            )
        present, absent = [], []
        for attr, cell in zip(attribute_names, row):
            if cell == "+":
                present.append(attr)
            elif cell == "-":
                absent.append(attr)
            elif cell != "?":
                raise FormatError(f"illegal cell {cell!r}", first_row_line + i)
        pods.append(PartialObjectDescription(obj, frozenset(present), frozenset(absent)))
    return PartialContext(tuple(attribute_names), tuple(pods))


def write_pcxt(pctx: PartialContext) -> str:
    lines = ["BP", "", str(len(pctx.pods)), str(len(pctx.attributes)), ""]
    lines.extend(pod.object_id for pod in pctx.pods)
    lines.extend(pctx.attributes)
    for pod in pctx.pods:
        cells = []
        for attr in pctx.attributes:
            if attr in pod.present:
                cells.append("+")
            elif attr in pod.absent:
                cells.append("-")
            else:
                cells.append("?")
        lines.append("".join(cells))
    return "\n".join(lines) + "\n"


def read_ontology(text: str):
    return parse_ontology(text)


def write_ontology(kb) -> str:
    return render_ontology(kb)


def write_envelope(tag: str, version: int, payload: str) -> str:
    digest = hashlib.sha256(payload.encode("utf-8")).hexdigest()
    return f"{tag} {version}\nchecksum sha256:{digest}\n{payload}"


def read_envelope(text: str, tag: str, supported_versions: tuple[int, ...]) -> tuple[int, str]:
    head, _, rest = text.partition("\n")
    parts = head.split()
    if len(parts) != 2 or parts[0] != tag:
        raise SnapshotError(f"not a {tag} document", 1)
    try:
        version = int(parts[1])
    except ValueError:
        raise SnapshotError("malformed version", 1) from None
    if version not in supported_versions:
        raise SnapshotError(f"unsupported {tag} version {version}", 1)
    checksum_line, _, payload = rest.partition("\n")
    if not checksum_line.startswith("checksum sha256:"):
        raise SnapshotError("missing checksum line", 2)
    expected = checksum_line[len("checksum sha256:"):]
    actual = hashlib.sha256(payload.encode("utf-8")).hexdigest()
    if actual != expected:
        raise SnapshotError("checksum mismatch; the document was modified or truncated", 2)
    return version, payload
