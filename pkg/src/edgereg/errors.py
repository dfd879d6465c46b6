"""Exception types shared across the package."""

from __future__ import annotations


class EdgeRegError(Exception):
    """Base class for every error raised by edgereg."""


class DomainError(EdgeRegError, ValueError):
    """An argument lies outside the domain of the operation."""


class GraphParseError(EdgeRegError, ValueError):
    """Malformed graph6 or JSON graph input."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class GuardError(EdgeRegError, RuntimeError):
    """An instance exceeds a resource guard; pass an override to force it."""
