"""Error types shared across the package.

The CLI maps these onto exit codes: syntax/name problems are user-input
errors, UmbralError subclasses are mathematical failures.
"""

from __future__ import annotations


class UmbralError(Exception):
    """A mathematically impossible request (singular series, bad order, ...)."""


class OrderMismatchError(UmbralError):
    """Two truncated objects of different orders were mixed."""


class SingularSeriesError(UmbralError):
    """Reciprocal of a series whose constant term is zero."""


class NonInvertibleError(UmbralError):
    """Compositional inversion needs a nonzero (scalar) first-order term."""


class UnknownUmbraError(Exception):
    """An expression names an umbra that no registry or workspace defines."""


class UmbraSyntaxError(Exception):
    """Lex or parse failure, carrying the 1-based source position."""

    def __init__(self, message: str, offset: int, line: int, column: int):
        super().__init__(message)
        self.message = message
        self.offset = offset
        self.line = line
        self.column = column

    def __str__(self):
        return f"{self.message} (line {self.line}, column {self.column})"
