"""Exception types raised by the estimators and the oracle."""


class HyperrelError(Exception):
    """Base class for all library errors."""


class AlreadyDisconnected(HyperrelError):
    """Minimum cut requested on a hypergraph that is already disconnected."""


class TooLargeForExact(HyperrelError):
    """Exact enumeration would exceed the configured size cap."""


class UndefinedRelativeVariance(HyperrelError):
    """Relative variance of an all-zero sample with no cap."""


class UnsatisfiableFormula(HyperrelError):
    """Conditional sampling requested from a formula with zero satisfying mass."""


class NotPairwiseIntersecting(HyperrelError):
    """Degree-cut formula requested for an edge set with two disjoint edges."""


class BudgetExhausted(HyperrelError):
    """A recursive estimator hit its recursion-call budget."""


class InvariantViolation(HyperrelError):
    """An internal runtime invariant of a recursive estimator failed."""


class ParseError(HyperrelError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
