"""Exception types shared across the package."""


class HyperAsymError(Exception):
    """Base class for all errors raised by :mod:`hyperasym`."""


class DomainError(HyperAsymError, ValueError):
    """An argument lies outside the domain of the requested function."""


class ContractError(HyperAsymError, ValueError):
    """A precondition between cooperating objects was violated."""


class SingularReversionError(ContractError):
    """Series reversion was requested for a series with zero linear term."""


class AccuracyError(HyperAsymError, ArithmeticError):
    """A numerical procedure could not reach its accuracy target.

    ``bound`` carries the best error estimate that was achieved.
    """

    def __init__(self, message, bound=float("nan")):
        super().__init__(message)
        self.bound = bound
