"""Exceptions raised by the ``parallel_msc`` package."""
from __future__ import annotations

import typing as t

__all__ = (
    'CountOverflowError',
    'CriticalPointNotFoundError',
    'GradientCycleError',
    'InvalidCellError',
    'InvalidGridError',
    'MorseSmaleError',
    'ParseError',
    'ValidationError',
    'VolumeError',
)


class MorseSmaleError(Exception):
    """Base class for all exceptions of this package."""


class InvalidGridError(MorseSmaleError, ValueError):
    """Raised when grid extents or scalar samples are invalid."""


class InvalidCellError(MorseSmaleError, ValueError):
    """Raised when a cell identifier or doubled coordinate lies outside the grid."""


class CountOverflowError(MorseSmaleError, OverflowError):
    """Raised when an integer count leaves the signed 64-bit range."""

    def __init__(self, message: str, row: int | None = None, column: int | None = None):
        super().__init__(message)
        self.row = row
        self.column = column


class GradientCycleError(MorseSmaleError, RuntimeError):
    """Raised when a traversal exceeds the bound implied by an acyclic gradient field."""


class ValidationError(MorseSmaleError):
    """Raised when a requested consistency check of a gradient field or complex fails."""

    def __init__(self, message: str, report: t.Any = None):
        super().__init__(message)
        self.report = report


class ParseError(MorseSmaleError, ValueError):
    """Raised when a serialized complex cannot be parsed."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f'{message} (at byte offset {offset})'
        super().__init__(message)
        self.offset = offset


class CriticalPointNotFoundError(MorseSmaleError, KeyError):
    """Raised when a critical point is not part of a complex."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ''


class VolumeError(MorseSmaleError, OSError):
    """Raised when a raw volume cannot be read or an output cannot be written."""
