"""Exception hierarchy.

Every error raised on purpose by the package derives from :class:`AltDiamError`,
so callers (and the command line front end) can separate domain failures from
programming errors with a single ``except``.
"""

from __future__ import annotations


class AltDiamError(ValueError):
    """Base class for all domain errors."""


class PointError(AltDiamError):
    """A problem tied to a specific grid point."""

    def __init__(self, point, message: str):
        self.point = tuple(point)
        super().__init__(f"{message}: {self.point}")


class DuplicateSource(PointError):
    def __init__(self, point):
        super().__init__(point, "point given more than once as a source")


class MissingSource(PointError):
    def __init__(self, point):
        super().__init__(point, "point never given as a source")


class RangeViolation(PointError):
    def __init__(self, point):
        super().__init__(point, "point outside the grid")


class NotInjective(PointError):
    def __init__(self, point):
        super().__init__(point, "point is the image of two sources")


class DimensionMismatch(AltDiamError):
    pass


class UnsupportedWord(AltDiamError):
    pass


class NotBalanced(AltDiamError):
    def __init__(self, value: int, count: int, expected: int):
        self.value = value
        self.count = count
        self.expected = expected
        super().__init__(
            f"value {value} occurs {count} times, expected {expected}")


class NoPerfectMatching(AltDiamError):
    """Raised with a Hall violator: rows whose neighbourhood is too small."""

    def __init__(self, violator, neighborhood):
        self.violator = tuple(sorted(violator))
        self.neighborhood = tuple(sorted(neighborhood))
        super().__init__(
            f"Hall condition fails: rows {self.violator} only reach "
            f"columns {self.neighborhood}")


class NotInvertible(AltDiamError):
    pass


class FieldTooLarge(AltDiamError):
    pass


class InstanceTooLarge(AltDiamError):
    pass


class ConsistencyViolation(RuntimeError):
    """Signals an implementation bug, never a property of the input."""
