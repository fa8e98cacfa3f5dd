"""Exception types raised across the package."""

from __future__ import annotations


class PolyKnotError(Exception):
    """Base class for all errors raised by polyknot."""


# polycore
class DegenerateInput(PolyKnotError):
    pass


class IdenticallyZeroResultant(PolyKnotError):
    """The two inputs share a factor of positive degree in the eliminated variable."""


class InfiniteZeroSet(PolyKnotError):
    """The polynomials share a factor, so their common zeros form a curve."""


# knotspace
class NotInAd(PolyKnotError):
    pass


class NotInCd(PolyKnotError):
    pass


class ZeroScale(PolyKnotError):
    pass


class SingularMatrix(PolyKnotError):
    pass


class ZeroVector(PolyKnotError):
    pass


# isotopy
class DegenerateLinearPart(PolyKnotError):
    pass


class NonpositiveScale(PolyKnotError):
    pass


class PreconditionB1Zero(PolyKnotError):
    pass


class EndpointMismatch(PolyKnotError):
    pass


# diagram
class IrregularProjection(PolyKnotError):
    """The chosen projection has a tangency, cusp, triple point or unresolved depth."""


class TooManyCrossings(PolyKnotError):
    pass


class NonIntegerExponent(PolyKnotError):
    pass


# cli
class ParseError(PolyKnotError):
    def __init__(self, message: str, *, field: str | None = None, line: int | None = None):
        where = []
        if field is not None:
            where.append(f"field {field!r}")
        if line is not None:
            where.append(f"line {line}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.field = field
        self.line = line


class DegreeCapError(PolyKnotError):
    pass


class BadRange(PolyKnotError):
    pass
