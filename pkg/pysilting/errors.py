"""Errors raised by the pysilting toolkit."""

from __future__ import annotations

from typing import Any, ClassVar

from .const import EXIT_CAP, EXIT_INPUT


class SiltingError(Exception):
    """Base class for every contract error of the toolkit."""

    exit_code: ClassVar[int] = EXIT_INPUT


class InputError(SiltingError):
    """Error to indicate a malformed document or option."""


class MalformedRelationError(InputError):
    """Error to indicate a relation mixing non-parallel paths."""


class PossiblyInfiniteError(SiltingError):
    """Error to indicate reduced paths survive at the path cap."""

    exit_code: ClassVar[int] = EXIT_CAP


class FieldTooSmallError(SiltingError):
    """Error to indicate the field is too small for a radical computation."""


class CapExceededError(SiltingError):
    """Error to indicate a search hit its cap before completing."""

    exit_code: ClassVar[int] = EXIT_CAP

    def __init__(self, msg: str, partial: Any = None) -> None:
        """Keep whatever was computed before the cap was hit."""
        super().__init__(msg)
        self.partial = partial


class GenerationUndecidedError(SiltingError):
    """Error to indicate generation of K^b(proj A) could not be certified."""

    exit_code: ClassVar[int] = EXIT_CAP

    def __init__(self, msg: str, record: Any = None) -> None:
        """Keep the presilting record whose generation is unknown."""
        super().__init__(msg)
        self.record = record


class NotSiltingError(SiltingError):
    """Error to indicate an operation needs a silting object."""


class NotPresiltingError(SiltingError):
    """Error to indicate an operation needs a presilting object."""


class SummandOutOfRangeError(SiltingError):
    """Error to indicate a summand index outside the summand list."""


class OrderViolatedError(SiltingError):
    """Error to indicate an order precondition between objects fails."""


class UInAddTError(SiltingError):
    """Error to indicate the object already lies in add T."""


class NotCovariantlyFiniteError(SiltingError):
    """Error to indicate a torsion class is not known to be covariantly finite."""

    exit_code: ClassVar[int] = EXIT_CAP


class NotSelfInjectiveError(SiltingError):
    """Error to indicate an operation needs a self-injective algebra."""
