"""Exception types shared across the package."""


class FanoliftError(Exception):
    """Base class for all package errors."""


class DomainError(FanoliftError, ValueError):
    """Input outside an operation's mathematical domain."""


class NotAPowerError(DomainError):
    """Polynomial is not a perfect power (square, cube, ...)."""


class DegenerateConfiguration(FanoliftError):
    """A genericity guard failed (vanishing covariant, wrong kernel rank, ...)."""

    def __init__(self, message: str, guard: str | None = None):
        super().__init__(message)
        self.guard = guard


class RootFindingError(FanoliftError):
    """Simultaneous iteration did not converge within its budget."""


class AmbiguousClustering(FanoliftError):
    """Root multiplicities could not be decided at the working precision."""


class NotInGroupError(FanoliftError):
    """disc(P - TQ) is not a square: the group is not inside L3(2), or degeneracy."""


class ConsistencyError(FanoliftError):
    """An identity that must hold by construction failed."""

    def __init__(self, message: str, check: str, residual=None):
        super().__init__(message)
        self.check = check
        self.residual = residual
