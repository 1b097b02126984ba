"""Exception types shared across the toolkit.

Invalid arguments raise ValueError as usual; these classes cover failures of
numerical procedures that were called with valid arguments.
"""


class NumericalError(RuntimeError):
    """A numerical procedure failed to meet its accuracy contract."""


class ConvergenceError(NumericalError):
    """The step size is too coarse for the requested tolerance."""


class SingularCoefficientError(NumericalError):
    """The decay coefficient is singular because the amplitude passed through zero."""


class IntegratorError(NumericalError):
    """Master-equation integration produced an invalid state."""
