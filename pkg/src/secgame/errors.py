"""Shared exception types."""


class ValidationError(ValueError):
    """A network, configuration, or strategy violates a model constraint.

    ``violations`` lists every individual failure when several were collected
    in one pass, so callers can report them all rather than just the first.
    """

    def __init__(self, message, violations=None):
        super().__init__(message)
        self.violations = list(violations) if violations is not None else [message]


class ParseError(ValueError):
    """A configuration or result document is structurally malformed."""


class CapacityError(ValidationError):
    """The requested state space exceeds the configured size cap."""


class ConvergenceError(RuntimeError):
    """Value iteration hit the iteration cap; carries the last iterate."""

    def __init__(self, message, values, iterations, residual):
        super().__init__(message)
        self.values = values
        self.iterations = iterations
        self.residual = residual
