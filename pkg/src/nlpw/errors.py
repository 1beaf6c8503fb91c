"""Exception hierarchy for nlpw."""

from typing import Any, Optional


class NLPWError(Exception):
    """Base exception for nlpw."""

    pass


class ParameterDomainError(NLPWError, ValueError):
    """Raised when an argument lies outside the domain of an operation."""

    pass


class PoleError(ParameterDomainError):
    """Raised when an integrand bracket is nonpositive away from y = 1."""

    pass


class QuadratureInputError(NLPWError):
    """Raised when an integrand returns a non-finite interior sample."""

    pass


class DivergentIntegralError(NLPWError):
    """Raised when a finite integral is required but the integral diverges."""

    pass


class ZeroFunctionError(NLPWError):
    """Raised when the quotient is evaluated on a (numerically) zero function."""

    pass


class SolverConvergenceError(NLPWError):
    """Raised when the lowest start of the eigenvalue solver did not converge.

    The best iterate found is kept on ``best`` so callers can still inspect it.
    """

    def __init__(self, message: str, best: Optional[Any] = None):
        super().__init__(message)
        self.best = best


class BracketingError(NLPWError):
    """Raised when the critical parameter cannot be bracketed."""

    pass


class ReportFormatError(NLPWError):
    """Raised for unsupported output formats or unserializable reports."""

    pass
