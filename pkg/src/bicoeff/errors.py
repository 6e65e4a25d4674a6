"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class BicoeffError(Exception):
    pass


# graph construction / structure

class GraphError(BicoeffError, ValueError):
    pass


class LoopEdge(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class IndexOutOfRange(GraphError, IndexError):
    pass


class NotBicyclic(GraphError):
    pass


class Disconnected(GraphError):
    pass


class TooLarge(BicoeffError, ValueError):
    pass


class TooManyEdges(TooLarge):
    pass


class TooSmall(BicoeffError, ValueError):
    pass


# polynomials

class PolyError(BicoeffError, ValueError):
    pass


class NotMonic(PolyError):
    pass


class NegativeCoefficient(PolyError):
    """A sign-stripped coefficient came out negative: always an upstream bug."""


class LengthMismatch(PolyError):
    pass


# families

class InvalidSpec(BicoeffError, ValueError):
    pass


class OutOfRange(BicoeffError, ValueError):
    pass


# transforms

class NotApplicable(BicoeffError, ValueError):
    pass


class NotABridge(NotApplicable):
    pass


class PendantEdge(NotApplicable):
    pass


class CycleTooShort(NotApplicable):
    pass


class NeighborhoodsOverlap(NotApplicable):
    pass


class PositionConditionViolated(NotApplicable):
    pass


class NoPendantsToMove(NotApplicable):
    pass


class StuckNoApplicableTransform(BicoeffError):
    """The reduction pipeline reached a graph no transform applies to.

    Carries the graph and the records produced so far; callers treat it as a
    finding to report.
    """

    def __init__(self, message: str, graph=None, records=()):
        super().__init__(message)
        self.graph = graph
        self.records = list(records)


# numerics

class ConvergenceFailure(BicoeffError, RuntimeError):
    pass
