"""
Exception hierarchy for the lpp_two_time project.
Each error class carries the process exit code the CLI reports for it.
"""

from typing import Optional


class TwoTimeError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class ParameterDomainError(TwoTimeError, ValueError):
    """An input lies outside the domain where the formulas are defined."""

    exit_code = 2


class ScaleTooSmallError(ParameterDomainError):
    """Lattice targets collapse after rounding (m >= M, n >= N or nonpositive indices)."""


class ParityError(ParameterDomainError):
    """Height function requested at x+t even without interpolation."""


class OutOfGridError(ParameterDomainError):
    """A lattice point lies outside the sampled passage field."""


class ContourError(ParameterDomainError):
    """Contour parameters violate an ordering or convergence condition."""


class PoleError(ParameterDomainError):
    """Evaluation requested at a pole (u = 0, w = 1 - q, ...)."""


class IndexingError(ParameterDomainError):
    """A kernel argument does not belong to the half-line of its block."""


class AccuracyError(TwoTimeError):
    """A numerical procedure did not reach its tolerance."""

    exit_code = 3

    def __init__(self, message: str, achieved: Optional[float] = None):
        super().__init__(message)
        self.achieved = achieved


class ScaledDeterminantError(AccuracyError):
    """Determinant not representable as a float; sign and log|det| are kept."""

    def __init__(self, message: str, sign: complex, log_abs: float):
        super().__init__(message, achieved=None)
        self.sign = sign
        self.log_abs = log_abs


class SupportError(AccuracyError):
    """Nonzero terms found beyond an analytic support bound."""


class VerificationFailedError(TwoTimeError):
    """At least one verification check failed."""
