"""Exception types shared across the package."""

from __future__ import annotations

__all__ = [
    "WablError",
    "DomainError",
    "EmptyCutError",
    "NormalizationError",
    "InputError",
]


class WablError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(WablError, ValueError):
    """An argument or field lies outside its admissible domain."""


class EmptyCutError(WablError):
    """A level cut contains no points; the offending level is in ``alpha``."""

    def __init__(self, message: str, *, alpha: float | None = None) -> None:
        super().__init__(message)
        self.alpha = alpha


class NormalizationError(WablError, ValueError):
    """Level masses do not form a probability vector; total is in ``total``."""

    def __init__(self, message: str, *, total: float | None = None) -> None:
        super().__init__(message)
        self.total = total


class InputError(WablError):
    """A document, weights file or command-line configuration is malformed."""
