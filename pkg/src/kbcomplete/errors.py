"""Exception types shared across the package."""

from __future__ import annotations


class KbCompleteError(Exception):
    """Base class for all errors raised by this package."""


class InputError(KbCompleteError, ValueError):
    """A caller passed structurally invalid input (bad name, duplicate, wrong universe)."""


class FormatError(KbCompleteError, ValueError):
    """A serialized document is malformed.

    ``line`` is 1-based when known.
    """

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" at line {line}" + (f", column {column}" if column is not None else "")
        super().__init__(message + where)


class ConceptSyntaxError(FormatError):
    """A concept expression or ontology directive failed to parse."""


class CyclicDefinitionError(InputError):
    """Definitions in a terminology refer back to themselves."""


class ClosureContractError(KbCompleteError):
    """A supplied closure operator broke extensivity or idempotence on a probed input."""


class StaleQuestionError(KbCompleteError):
    """An answer referred to a question that is no longer the current one."""


class CounterexampleError(InputError):
    """A counterexample failed validation.

    ``attributes`` names the offending attributes: premise attributes the
    counterexample does not make present, or conclusion attributes it leaves
    unrefuted.
    """

    def __init__(self, message: str, attributes: tuple[str, ...] = ()):
        self.attributes = tuple(attributes)
        super().__init__(message)


class SessionStateError(KbCompleteError):
    """An operation is not allowed in the session's current status."""


class SnapshotError(FormatError):
    """A session snapshot is unreadable: bad envelope, version, or checksum."""


class ResourceBudgetError(KbCompleteError):
    """The reasoner exceeded its node budget; the query result is unknown, not false."""


class NotAleError(InputError):
    """A concept fell outside the existential-and-value-restriction fragment."""
