from enum import Enum


class ConcSwapException(Exception):
    """Generic simulator exception"""
    pass


class DimensionError(ConcSwapException):
    """Shapes, signatures or subsystem counts do not fit together"""
    pass


class NotHermitianError(ConcSwapException):
    """Matrix is not Hermitian within tolerance"""
    pass


class InvalidStateError(ConcSwapException):
    """Vector or matrix violates a state invariant (norm, trace, positivity)"""
    pass


class InvalidParameterError(ConcSwapException):
    """
    Raised for user-facing parameter errors: mixing parameter or Schmidt
    coefficient out of range, malformed spectra, non-normalized basis pairs...
    """
    pass


class UndefinedRatioError(InvalidParameterError):
    """Ratio requested where the input concurrence vanishes"""
    pass


class NumericalError(ConcSwapException):
    """Round-off exceeded every tolerance, the computation cannot be trusted"""
    pass


class ConvergenceError(NumericalError):
    """Iterative solver ran out of sweeps"""
    pass


class ClosedFormMismatchError(NumericalError):
    """Oracle and closed form disagree"""
    pass


class OutputError(ConcSwapException):
    """Result file cannot be written"""
    pass


class MethodTag(Enum):
    ORACLE = "oracle"
    CLOSED_FORM = "closed_form"
    BOTH = "both"

    def __str__(self):
        return self.value

    @classmethod
    def from_string(cls, string):
        try:
            return MethodTag(string)
        except ValueError:
            return None
