"""
Services module for lpp_two_time.
"""

from .twotime_service import TwoTimeService, MarginalCheck, alpha_inverse_transform
from .simulation_service import SimulationService
from .verification_service import VerificationService, CheckResult, SuiteReport

__all__ = [
    "TwoTimeService", "MarginalCheck", "alpha_inverse_transform",
    "SimulationService",
    "VerificationService", "CheckResult", "SuiteReport",
]
