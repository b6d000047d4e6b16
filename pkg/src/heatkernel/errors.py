"""Exception types shared by the solver modules."""

from __future__ import annotations


class HeatKernelError(Exception):
    """Base class for solver failures."""


class ToleranceNotReached(HeatKernelError):
    """A requested accuracy could not be certified with the given budget.

    ``estimate`` is the achieved error bound, ``tolerance`` the request.
    """

    def __init__(self, message: str, estimate: float, tolerance: float):
        super().__init__(message)
        self.estimate = estimate
        self.tolerance = tolerance


class NumericalFailure(HeatKernelError):
    """A quadrature or evaluation produced non-finite or non-convergent results."""
