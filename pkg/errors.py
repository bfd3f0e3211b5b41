"""
Exception hierarchy for the TRA solver and its command line
"""

from typing import Optional


class TRAError(Exception):
    """Base error; exit_code is what the CLI returns for it"""

    exit_code = 1

    def __init__(self, detail: str, *, constraint: Optional[str] = None):
        super().__init__(detail)
        self.detail = detail
        self.constraint = constraint

    def __str__(self) -> str:
        if self.constraint:
            return f"{self.detail} [{self.constraint}]"
        return self.detail


# Parameter errors (exit 2)

class ParameterError(TRAError):
    exit_code = 2


class InvalidRecurrenceError(ParameterError):
    """b_n^2 <= 0 or c_n == 0 met while running a recursion"""


class DomainError(ParameterError):
    """Argument outside the domain of a polynomial family or a basis"""


class RealityViolationError(ParameterError):
    """Scarf parameters give complex mu or nu"""


class InconsistentBasisError(ParameterError):
    """Declared basis exponents do not match what the system forces"""


class PoleError(ParameterError):
    """Gamma function evaluated at a nonpositive integer"""


class BasisMismatchError(ParameterError):
    """More expansion coefficients than basis functions available"""


class NonFiniteInputError(ParameterError):
    """NaN or inf in a matrix or grid"""


# Numerical errors (exit 3)

class NumericalError(TRAError):
    exit_code = 3


class EigensolverError(NumericalError):
    pass


class FitFailureError(NumericalError):
    pass


class GridTooCoarseError(NumericalError):
    pass


class ConvergenceError(NumericalError):
    pass


class GridResolutionWarning(UserWarning):
    """Grid spacing too large for the oscillation of the sampled function"""
