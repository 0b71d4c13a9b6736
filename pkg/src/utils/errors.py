"""Exception hierarchy shared by the propagation library and the CLI."""


class SoftConstraintError(Exception):
    """Base class for every error raised by this package"""


class RejectedInputError(SoftConstraintError, ValueError):
    """Malformed input, unknown symbol, violated precondition or size guard"""


class InstanceSyntaxError(RejectedInputError):
    """Parse or validation error located in an instance file"""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.message}"


class InfeasibleError(SoftConstraintError):
    """No feasible flow, or no tuple within the requested budget"""


class UnreachableError(SoftConstraintError):
    """No residual path exists between the queried vertices"""


class NoWordOfThisLengthError(SoftConstraintError):
    """The language contains no string of the requested length"""


class EmptyLanguageError(SoftConstraintError):
    """The automaton accepts no string at all"""


class NoPathError(SoftConstraintError):
    """No accepting node is reachable in a layered graph"""


class MeasureUndefinedError(SoftConstraintError):
    """The variable-based gcc measure needs sum(l) <= n <= sum(u)"""


class PropagationFailure(SoftConstraintError):
    """A propagator proved that the current store has no solution"""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason
