"""Exception taxonomy shared across the package.

The CLI maps these onto process exit codes: config errors exit 1, data errors
exit 2, numerical errors exit 3, and I/O failures exit 4.
"""

from __future__ import annotations


class SentVarError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(SentVarError):
    """A run configuration is malformed or refers to unknown keys."""

    def __init__(self, message: str, field: str | None = None) -> None:
        super().__init__(message)
        self.field = field


class DataError(SentVarError):
    """Input data violates a contract (bad file, bad row, not enough rows)."""


class ParseError(DataError):
    """A CSV file could not be parsed; carries the offending line number."""

    def __init__(self, message: str, line_no: int) -> None:
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class DuplicateKeyError(ParseError):
    """The same (ticker, date) key appeared twice in one panel file."""


class InsufficientDataError(DataError):
    """Too few usable observations to perform the requested operation."""


class InsufficientOverlapError(InsufficientDataError):
    """Series alignment left fewer than two common dates."""


class NumericalError(SentVarError):
    """A numerical routine could not produce a trustworthy result."""


class SingularDesignError(NumericalError):
    """A regression design matrix is rank deficient or near singular."""
