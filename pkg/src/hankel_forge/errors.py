"""Exception hierarchy shared by all modules."""


class HankelForgeError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(HankelForgeError, ValueError):
    """Operands live in rings with different variable counts, or a grid is not square."""


class EmptyPolynomialError(HankelForgeError, ValueError):
    """The zero polynomial has no leading term."""


class BoundsError(HankelForgeError, IndexError):
    """A matrix position or minor window falls outside the arrangement."""


class ChainError(HankelForgeError, ValueError):
    """A sequence that must be a c-chain is not one."""


class PreconditionError(HankelForgeError, ValueError):
    """An operation was called outside its documented domain."""


class RangeError(HankelForgeError, ValueError):
    """A parameter such as t exceeds the maximal minor size m."""


class NotApplicable(HankelForgeError):
    """A rewrite rule does not apply to the given pair of rows."""


class InfeasibleError(HankelForgeError):
    """No admissible position exists for a value during canonical placement."""


class ParseError(HankelForgeError, ValueError):
    """Text input could not be parsed."""


class BudgetExceeded(HankelForgeError):
    """A Groebner computation hit one of its resource limits.

    ``log`` carries whatever partial progress information the engine had
    gathered when it stopped.
    """

    def __init__(self, message, log=None):
        super().__init__(message)
        self.log = log or {}


class OrderingError(PreconditionError):
    """Rows were passed in the wrong deglex order."""
