"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`QuiverError`,
so callers (and the CLI) can separate domain failures from bugs.
"""

from __future__ import annotations


class QuiverError(ValueError):
    """Base class for all domain errors."""


# quiver validation and parsing
class CycleDetected(QuiverError):
    pass


class Disconnected(QuiverError):
    pass


class LoopArrow(QuiverError):
    pass


class DuplicateArrowName(QuiverError):
    pass


class InvalidVertex(QuiverError):
    pass


class DimensionMismatch(QuiverError):
    pass


class ParseError(QuiverError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


# linear algebra
class InvalidField(QuiverError):
    pass


class SingularMatrix(QuiverError):
    pass


class ShapeMismatch(QuiverError):
    pass


# representations
class ContextMismatch(QuiverError):
    pass


class NegativeDimension(QuiverError):
    pass


# functors
class NotASink(QuiverError):
    pass


class NotASource(QuiverError):
    pass


class ProjectiveSummandPresent(QuiverError):
    pass


class InjectiveSummandPresent(QuiverError):
    pass


# dimension-vector calculus
class NotRegularInput(QuiverError):
    pass


class NoPositiveT(QuiverError):
    pass


class NonPositiveInput(QuiverError):
    pass


class NotWild(QuiverError):
    pass
