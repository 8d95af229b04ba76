"""Exception hierarchy.

Two families matter to callers: :class:`ValidationError` for inputs that
are out of range (CLI exit code 1) and :class:`NumericalError` for
algorithms that failed to converge or produced non-finite values (exit
code 2).
"""


class WedgeStarkError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(WedgeStarkError, ValueError):
    pass


class NumericalError(WedgeStarkError, ArithmeticError):
    pass


# -- input validation -------------------------------------------------------

class NonPositiveDimension(ValidationError):
    pass


class ApertureOutOfRange(ValidationError):
    pass


class NonPositiveParameter(ValidationError):
    pass


class NegativeField(ValidationError):
    pass


class DomainError(ValidationError):
    """Argument outside the domain of a mathematical function."""


class UnsupportedOrder(ValidationError):
    pass


class OrderTooLarge(ValidationError):
    pass


class GridTooSmall(ValidationError):
    pass


class SweepSpecError(ValidationError):
    pass


# -- numerical failures -----------------------------------------------------

class ConvergenceError(NumericalError):
    pass


class BracketError(NumericalError):
    """No sign change found while bracketing a Bessel zero."""


class BracketFailure(NumericalError):
    """Minimum bracketing ran into the upper limit while still descending."""


class MaxIterations(NumericalError):
    pass


class NoConvergence(NumericalError):
    pass


class NonFiniteIntegrand(NumericalError):
    pass


class NonFiniteResult(NumericalError):
    pass


class PartialSweep(NumericalError):
    """A sweep point failed; ``records`` holds the points completed before it."""

    def __init__(self, message, records, cause=None):
        super().__init__(message)
        self.records = list(records)
        self.cause = cause
