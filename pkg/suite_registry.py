"""
Suite registry for the lpp_two_time project.
Central registration of the verification suites and the checks they run.
"""

from typing import Dict, List

from domain.exceptions import ParameterDomainError
from services.verification_service import SuiteReport, VerificationService

SUITES: Dict[str, List[str]] = {
    "identities": ["f2_calibration", "airy_ode", "recursion", "s_plus_t", "unit_u",
                   "invariances", "forms_agree"],
    "marginals": ["marginals"],
    "duality": ["duality"],
    "finite": ["finite_oracle", "conjugation_invariance", "finite_monotone",
               "difference_contour", "hstar"],
    "mc": ["finite_vs_mc", "transitions", "limit_smoke"],
}


class SuiteRegistry:
    """Registry resolving suite names to the checks of a VerificationService."""

    def __init__(self, service: VerificationService):
        self.service = service

    def get_suite_names(self) -> List[str]:
        return list(SUITES)

    def get_checks(self, suite: str) -> List[str]:
        if suite not in SUITES:
            raise ParameterDomainError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
        return list(SUITES[suite])

    def run(self, suite: str) -> SuiteReport:
        return self.service.run_suite(suite, self.get_checks(suite))

    def run_all(self) -> List[SuiteReport]:
        return [self.run(name) for name in self.get_suite_names()]
