"""Exception hierarchy shared by every module in the package."""


class MatchingError(Exception):
    """Base class for all errors raised by this package."""


class NotAugmenting(MatchingError):
    pass


class EdgeMissing(MatchingError):
    pass


class CommitmentBroken(MatchingError):
    pass


class StartMatched(MatchingError):
    pass


class EdgeInMatching(MatchingError):
    pass


class PreconditionViolated(MatchingError):
    pass


class DuplicateArrival(MatchingError):
    pass


class DuplicateEdge(MatchingError):
    pass


class UnknownEndpoint(MatchingError):
    pass


class BudgetExceeded(MatchingError):
    pass


class NoExposedVertex(MatchingError):
    pass


class MissingWeight(MatchingError):
    pass


class IllegalForcedPath(MatchingError):
    pass


class ProtocolViolation(MatchingError):
    pass


class TooLarge(MatchingError):
    pass


class Infeasible(MatchingError):
    pass


class ParseError(MatchingError):
    pass


class ModelMismatch(MatchingError):
    pass
