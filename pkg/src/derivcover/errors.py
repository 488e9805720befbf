"""Exception hierarchy shared by all modules.

Every error the kit raises deliberately derives from KitError, so callers
(and the CLI) can catch one type and map it to the `error` verdict.
"""

from __future__ import annotations


class KitError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByZeroError(KitError, ZeroDivisionError):
    """Division by the zero polynomial or zero rational function."""


class DenominatorVanishesError(KitError):
    """A denominator evaluated to zero at the given assignment."""


class MissingVariableError(KitError):
    """An evaluation assignment does not cover every variable."""


class DegreeGuardError(KitError):
    """An operation would exceed the configured total-degree limit."""


class ExactDivisionError(KitError):
    """Internal: polynomial division expected to be exact was not."""


class ContextMismatchError(KitError):
    """Operands belong to different variable registries."""


class WordLengthError(KitError):
    """A derivation would produce a jet symbol beyond the context's word length."""


class UnknownLetterError(KitError):
    """A derivation letter index lies outside the context's alphabet."""


class CapacityError(KitError):
    """A context construction would allocate more symbols than allowed."""


class ArityError(KitError):
    """A relation was given the wrong number of points."""


class PreconditionError(KitError):
    """An operation's stated precondition does not hold for the inputs."""


class SearchExhaustedError(KitError):
    """Randomized witness search failed; indicates a bug for nonzero defects."""


class ParseError(KitError):
    """Source text does not conform to the expression grammar."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position
