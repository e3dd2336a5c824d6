"""Exception types shared across the package.

Domain violations (bad inputs) raise ValueError with a message naming the
violated bound; numerical failures raise NumericalError subclasses so the CLI
can map them to a distinct exit code.
"""


class NumericalError(RuntimeError):
    """A computation failed to reach its accuracy or convergence target."""


class ConvergenceError(NumericalError):
    """A series or iteration exhausted its budget before converging."""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


class DegeneracyError(NumericalError):
    """A denominator or linear system that should be regular came out singular."""


class GammaPoleError(ValueError):
    """log_gamma evaluated at a non-positive integer, where Gamma has a pole."""
