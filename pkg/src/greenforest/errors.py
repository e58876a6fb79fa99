"""Exception types raised across the package."""


class GreenForestError(Exception):
    """Base class for all package errors."""


class GraphError(GreenForestError, ValueError):
    pass


class ParseError(GraphError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DuplicateEdge(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class BadWeight(GraphError):
    pass


class BadOrder(GraphError):
    pass


class NotStronglyConnected(GraphError):
    pass


class NotUndirected(GraphError):
    pass


class NotSimple(GraphError):
    pass


class TooSmall(GraphError):
    pass


class TooLarge(GraphError):
    pass


class BadConstraint(GraphError):
    pass


class NoSuchEdge(GraphError):
    pass


class ShapeError(GreenForestError, ValueError):
    pass


class KernelMismatch(GreenForestError, ValueError):
    pass


class SingularCorrection(GreenForestError, ArithmeticError):
    pass


class Timeout(GreenForestError, RuntimeError):
    """Raised when Monte Carlo trajectories exceed the step budget."""

    def __init__(self, censored, trials, max_steps):
        self.censored = censored
        self.trials = trials
        self.max_steps = max_steps
        super().__init__(
            f"{censored} of {trials} walks did not reach the target "
            f"within {max_steps} steps"
        )
