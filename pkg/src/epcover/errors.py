"""Exception hierarchy shared by all epcover modules."""

from __future__ import annotations


class EpcoverError(Exception):
    """Base class for every error raised by this package."""


class NotIncreasingError(EpcoverError, ValueError):
    """A strictly increasing sequence was required."""


class FiniteSetError(EpcoverError, ValueError):
    """An infinite set was required (the cycle carries no 1 bit)."""


class NotLargeError(EpcoverError):
    """The cover fails largeness for the listed points."""

    def __init__(self, points):
        self.points = tuple(points)
        super().__init__(f"cover is not large for: {', '.join(self.points)}")


class NotAPartitionError(EpcoverError):
    """Blocks overlap or miss an index of the declared domain."""


class DomainOverlapError(EpcoverError):
    """Operation requires pairwise disjoint domains."""


class NotSurjectiveError(EpcoverError):
    """The point map does not reach the listed targets."""

    def __init__(self, missing):
        self.missing = tuple(missing)
        super().__init__(f"map is not onto; unreached: {', '.join(self.missing)}")


class InvalidWitnessError(EpcoverError):
    """A groupability witness failed verification."""


class InternalTerminationError(EpcoverError):
    """The refinement loop exceeded its provable step bound (a bug)."""


class HorizonMismatch(EpcoverError, ValueError):
    """Materialized sequences must share a horizon."""


class EmptyFamily(EpcoverError, ValueError):
    """At least one family member is required."""


class UnsatAtHorizon(EpcoverError):
    """The horizon-bounded search produced no object."""


class SearchBudgetExceeded(EpcoverError):
    """The exhaustive search hit its candidate budget before finishing."""


class ParseError(EpcoverError):
    """Position-annotated syntax error in the textual object language."""

    def __init__(self, line: int, column: int, expected: str, got: str = ""):
        self.line = line
        self.column = column
        self.expected = expected
        self.got = got
        detail = f" (got {got!r})" if got else ""
        super().__init__(f"line {line}, column {column}: expected {expected}{detail}")


class UnknownNameError(EpcoverError):
    """A definition referenced a name that is not defined."""

    def __init__(self, name: str, line: int | None = None):
        self.name = name
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"unknown name {name!r}{where}")
