"""Exception types shared across the package."""


class InvalidArgument(ValueError):
    """A precondition on an argument was violated."""


class SingularPoint(ValueError):
    """Evaluation requested exactly at a singularity of a closed form."""


class NumericFailure(ArithmeticError):
    """A quadrature, series or extrapolation did not reach its tolerance.

    ``details`` carries diagnostics (worst subinterval, residuals, ...).
    """

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details


class SolverFailure(NumericFailure):
    """The polynomial root finder did not converge."""
