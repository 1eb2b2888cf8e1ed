"""Exception types shared across the package."""


class Rabi2Error(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(Rabi2Error, ValueError):
    """Invalid model or configuration input (non-finite, out of range, ...)."""


class NumericError(Rabi2Error, ArithmeticError):
    """A computation produced a non-finite or otherwise unusable result."""


class DegenerateAnsatzError(NumericError):
    """Trial state has (numerically) zero norm and defines no physical state."""


class ConvergenceError(Rabi2Error, RuntimeError):
    """An iterative procedure failed to reach its tolerance.

    Carries the best-effort result (if any) on the ``result`` attribute.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class TruncationError(Rabi2Error, ValueError):
    """A requested basis truncation lies outside the supported range."""
