"""
Exception hierarchy for the restoration toolkit.

All errors raised on purpose by the library derive from TvRestoreError and
also from the closest builtin, so callers can catch either.
"""


class TvRestoreError(Exception):
    """Base class for every error raised by tvrestore."""


class ShapeError(TvRestoreError, ValueError):
    """Tensor dimensions do not match what the operation requires."""


class NumericError(TvRestoreError, ArithmeticError):
    """Non-finite data, division by zero or an unexpected imaginary residue."""


class ParameterError(TvRestoreError, ValueError):
    """A parameter is outside its admissible range."""


class MediaError(TvRestoreError, IOError):
    """A media file or container could not be read or written."""


class InvariantError(TvRestoreError, AssertionError):
    """A solver invariant check failed."""
