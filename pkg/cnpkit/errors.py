"""
cnpkit error hierarchy

Every exception raised on purpose by the library derives from CnpkitError.
Guard violations share GuardError so callers (the CLI in particular) can tell
"the instance is too big for an exact answer" apart from "the input is wrong".
"""

from typing import Any, Optional


class CnpkitError(Exception):
    """Base class for all cnpkit errors"""


# Events and genomes

class InvalidEventError(CnpkitError, IndexError):
    """An event whose indices do not fit the genome it is applied to"""


class InsideCopyError(InvalidEventError):
    """A duplication whose insertion point lies inside the copied segment"""


class SequenceError(InvalidEventError):
    """An event sequence failed at a given step"""

    def __init__(self, index: int, event: Any, cause: Exception):
        self.index = index
        self.event = event
        self.cause = cause
        super().__init__(f"event #{index} ({event}) is invalid: {cause}")


class UnknownSymbol(CnpkitError, ValueError):
    """A symbol that is not part of the alphabet"""


class AlphabetMismatch(CnpkitError, ValueError):
    """Two objects that must share an alphabet do not"""


class InvalidSubvector(CnpkitError, ValueError):
    """A vector passed as the maximum common sub-vector is not the componentwise minimum"""


class DocumentError(CnpkitError, ValueError):
    """Malformed JSON or a document that does not follow the expected schema"""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


# Guards

class GuardError(CnpkitError):
    """A configured size or effort limit was exceeded"""

    guard = "guard"

    def __init__(self, message: str, limit: Optional[int] = None):
        self.limit = limit
        super().__init__(f"{self.guard}: {message}")


class BudgetTooLarge(GuardError):
    guard = "node_ceiling"


class SizeGuardExceeded(GuardError):
    guard = "size_guard"


class SetTooLarge(GuardError):
    guard = "closure_guard"


class TooManySets(GuardError):
    guard = "max_cover_sets"


class TooLarge(GuardError):
    guard = "clique_guard"


# Reductions

class ReductionError(CnpkitError, ValueError):
    """Input that violates the precondition of a reduction or converter"""


class UncoveredElement(ReductionError):
    pass


class NotExactCover(ReductionError):
    pass


class NotACover(ReductionError):
    pass


class NotASolution(ReductionError):
    pass


class HasDuplication(ReductionError):
    pass


class ImproperColoring(ReductionError):
    pass


class InternalInvariantViolation(CnpkitError, AssertionError):
    """A property proven to always hold did not; this is a bug in cnpkit"""
