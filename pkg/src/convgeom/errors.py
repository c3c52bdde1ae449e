"""Exception hierarchy.

Predicates that *report* a violation (axiom checks, isomorphism checks) return
report objects. Exceptions are reserved for inputs outside a routine's
contract and for numeric results that cannot be decided at the requested
tolerance.
"""


class ConvexGeometryError(Exception):
    """Base class for every error raised by this package."""


class GroundTooLarge(ConvexGeometryError):
    pass


class SearchCap(ConvexGeometryError):
    pass


class DimensionCap(ConvexGeometryError):
    pass


class EmptySubset(ConvexGeometryError):
    pass


class ToleranceInconclusive(ConvexGeometryError):
    """A numeric margin fell inside the +/- tolerance band."""

    def __init__(self, message, margin=None, direction=None):
        super().__init__(message)
        self.margin = margin
        self.direction = direction


class InfiniteContactSuspected(ConvexGeometryError):
    """Two support functions appear to agree on an arc of directions."""


class DegenerateIdentical(InfiniteContactSuspected):
    pass


class NoRegularDirection(ConvexGeometryError):
    pass


class AlphaTooLarge(ConvexGeometryError):
    pass


class NonConvexTrace(ConvexGeometryError):
    pass


class LinePropertyViolated(ConvexGeometryError):
    pass


class ShapeContainmentFailed(ConvexGeometryError):
    pass


class InvalidScale(ConvexGeometryError):
    pass


class OracleViolation(ConvexGeometryError):
    def __init__(self, message, margin=None, direction=None):
        super().__init__(message)
        self.margin = margin
        self.direction = direction


class SchemaError(ConvexGeometryError):
    """Malformed JSON input."""
