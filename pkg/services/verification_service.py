"""
Verification service: property-based acceptance checks grouped into suites.
Each check returns a CheckResult; failures are reported, never raised.
"""

import math
import time
from fractions import Fraction
from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from config_manager import get_section
from domain.exceptions import TwoTimeError
from domain.objects import ContourSpec, FiniteCase
from domain.scaling import map_parameters, params_from_scaled
from finite.checks import hstar_limit_check, transition_check
from finite.determinant import finite_two_point
from finite.weights import difference_weight_contour, finite_difference_weight
from fredholm.tracy_widom import tracy_widom_f2
from kernels.context import KernelContext
from kernels.two_time import kernel_matrices, s_t_from_components
from services.twotime_service import TwoTimeService
from simulation.monte_carlo import mc_joint_cdf, mc_point_probability
from simulation.passage import last_passage_table, sample_weights
from special.airy import default_evaluator
from utils.cache import cache_manager
from utils.logger import get_logger, log_verification
from utils.performance_monitor import PerformanceMonitor

ORACLE_CASE = dict(q="1/2", m=1, n=1, M=2, N=2, a=1, A=2)
ORACLE_VALUE = Fraction(11, 64)

# Monte-Carlo floors of the comparison checks
MIN_FINITE_MC_SAMPLES = 10 ** 6
MIN_LIMIT_SMOKE_SAMPLES = 10 ** 5
LIMIT_SMOKE_TIMES = (50, 100, 200)

AIRY_ODE_STEP = 5e-3


class CheckResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    suite: str
    name: str
    passed: bool
    details: Dict[str, Any] = Field(default_factory=dict)
    elapsed: float = 0.0


class SuiteReport(BaseModel):
    suite: str
    passed: bool
    checks: List[CheckResult]


class VerificationService:
    """Acceptance checks of the simulators, the exact formula and the limit evaluators."""

    def __init__(self, twotime: Optional[TwoTimeService] = None, seed: int = 20240101,
                 mc_samples: Optional[int] = None):
        self.logger = get_logger(__name__)
        self.twotime = twotime or TwoTimeService()
        self.seed = seed
        self.mc_samples = mc_samples or get_section("monte_carlo").samples

    # identities

    def check_f2_calibration(self) -> Dict[str, Any]:
        grid = get_section("grid")
        xs = [-2.0, -1.0, 0.0, 1.0, 2.0]
        values = [tracy_widom_f2(x) for x in xs]
        refined = [tracy_widom_f2(x, L=grid.f2_L + 4.0, nodes=4 * grid.f2_nodes) for x in xs]
        gap = max(abs(v - r) for v, r in zip(values, refined))
        tail = tracy_widom_f2(8.0)
        monotone = all(b >= a for a, b in zip(values, values[1:]))
        return {"passed": gap < 1e-8 and monotone and tail >= 1 - 1e-6,
                "max_gap": gap, "f2_at_8": tail, "monotone": monotone}

    def check_airy_ode(self) -> Dict[str, Any]:
        """Ai'' = x Ai, with Ai'' from the five-point second difference of Ai."""
        x = np.linspace(-8.0, 8.0, 161)
        h = AIRY_ODE_STEP
        ai = {k: default_evaluator.ai_pair(x + k * h)[0] for k in (-2, -1, 0, 1, 2)}
        second = (-ai[2] + 16 * ai[1] - 30 * ai[0] + 16 * ai[-1] - ai[-2]) / (12 * h ** 2)
        residual = float(np.max(np.abs(second - x * ai[0])))
        return {"passed": residual < 1e-8, "max_residual": residual, "step": h}

    def check_recursion(self) -> Dict[str, Any]:
        field = last_passage_table(sample_weights(0.5, 40, 30, self.seed))
        G, w = field.passage, field.weights
        padded = np.zeros((G.shape[0] + 1, G.shape[1] + 1), dtype=G.dtype)
        padded[1:, 1:] = G
        expected = np.maximum(padded[:-1, 1:], padded[1:, :-1]) + w
        violations = int(np.count_nonzero(expected != G))
        return {"passed": violations == 0, "violations": violations}

    def check_s_plus_t(self) -> Dict[str, Any]:
        ctx = KernelContext.build(params_from_scaled(0.0, 0.0, 0.0, 0.0, 1.0))
        x = np.array([-3.0, -0.5, 0.7, 2.5])
        parts = kernel_matrices(ctx, x, x)
        S, T = s_t_from_components(parts, x, x)
        gap = float(np.max(np.abs(S + T - (parts["S1"] - parts["T1"]))))
        return {"passed": gap < 1e-12, "max_gap": gap}

    def check_unit_u(self) -> Dict[str, Any]:
        params = params_from_scaled(-0.5, 0.2, 0.3, -0.1, 1.0)
        k_value, reference = self.twotime.unit_u_determinant(params, "K")
        q_value, _ = self.twotime.unit_u_determinant(params, "Q")
        gap = max(abs(k_value - reference), abs(q_value - reference))
        return {"passed": gap < 1e-6, "det_k": k_value, "det_q": q_value, "f2": reference}

    def check_invariances(self) -> Dict[str, Any]:
        params = params_from_scaled(0.0, 0.0, 0.0, 0.0, 1.0)
        base = self.twotime.eval_k_form(params).value
        radius = abs(self.twotime.eval_k_form(params, ContourSpec(radius=1.5)).value
                     - self.twotime.eval_k_form(params, ContourSpec(radius=2.5)).value)
        margin = abs(base - self.twotime.eval_k_form(params, delta_margin=2.0).value)
        grid = abs(base - self.twotime.eval_k_form(params, L=12.0).value)
        return {"passed": radius < 1e-8 and margin < 1e-6 and grid < 1e-6,
                "value": base, "radius_gap": radius, "delta_gap": margin, "grid_gap": grid}

    def check_forms_agree(self) -> Dict[str, Any]:
        points = [(0.0, 0.0, 0.0, 0.0, 1.0), (-1.0, 0.5, 0.5, 0.2, 1.0), (0.5, -0.3, 1.0, 0.0, 1.5)]
        gaps = []
        for xi1, eta1, xi2, eta2, alpha in points:
            params = params_from_scaled(xi1, eta1, xi2, eta2, alpha)
            gaps.append(abs(self.twotime.eval_k_form(params).value
                            - self.twotime.eval_q_form(params).value))
        return {"passed": max(gaps) < 1e-6, "gaps": gaps}

    # marginals

    def check_marginals(self) -> Dict[str, Any]:
        gaps = {}
        for xi1, eta1 in [(0.0, 0.0), (-1.0, 0.5)]:
            check = self.twotime.marginal_check(params_from_scaled(xi1, eta1, 0.0, 0.0, 1.0),
                                                "first", 8.0)
            gaps[f"{xi1},{eta1}"] = check.gap
        return {"passed": max(gaps.values()) < 1e-3, "gaps": gaps}

    # duality

    def check_duality(self) -> Dict[str, Any]:
        gaps = {}
        for alpha in (0.75, 1.0, 1.5):
            params = params_from_scaled(-0.5, 0.2, 0.4, 0.1, alpha)
            direct = self.twotime.eval_k_form(params).value
            dual = self.twotime.eval_dual_k_form(params).value
            gaps[str(alpha)] = abs(direct - dual)
        return {"passed": max(gaps.values()) < 1e-6, "gaps": gaps}

    # finite

    def check_finite_oracle(self) -> Dict[str, Any]:
        result = finite_two_point(FiniteCase(**ORACLE_CASE), exact=True)
        return {"passed": result.exact == ORACLE_VALUE, "value": str(result.exact)}

    def check_conjugation_invariance(self) -> Dict[str, Any]:
        case = FiniteCase(q="1/3", m=1, n=1, M=3, N=3, a=2, A=4)
        plain = finite_two_point(case, exact=True).exact
        conjugated = finite_two_point(case, exact=True, ratio=Fraction(1, 3)).exact
        return {"passed": plain == conjugated, "plain": str(plain), "conjugated": str(conjugated)}

    def check_finite_monotone(self) -> Dict[str, Any]:
        values = [finite_two_point(FiniteCase(q="1/2", m=1, n=1, M=2, N=2, a=a, A=A), exact=True).exact
                  for a, A in [(1, 1), (1, 2), (2, 2), (2, 3)]]
        monotone = all(b >= a for a, b in zip(values, values[1:]))
        return {"passed": monotone, "values": [str(v) for v in values]}

    def check_difference_contour(self) -> Dict[str, Any]:
        gap = 0.0
        for j in range(-3, 4):
            for x in range(-3, 6):
                exact = float(finite_difference_weight(j, 2, Fraction(1, 2), x))
                gap = max(gap, abs(difference_weight_contour(j, 2, 0.5, x) - exact))
        return {"passed": gap < 1e-10, "max_gap": gap}

    def check_hstar(self) -> Dict[str, Any]:
        coarse = hstar_limit_check(0.25, 1e4, 0.0, 0.0, 0.0, 0.5)
        fine = hstar_limit_check(0.25, 1e5, 0.0, 0.0, 0.0, 0.5)
        return {"passed": fine < coarse and fine < 0.02, "residual_1e4": coarse, "residual_1e5": fine}

    # mc

    def check_finite_vs_mc(self) -> Dict[str, Any]:
        rng = np.random.default_rng(self.seed)
        samples = max(MIN_FINITE_MC_SAMPLES, self.mc_samples)
        rows = []
        passed = True
        for index in range(3):
            N = int(rng.integers(2, 4))
            n = int(rng.integers(1, N))
            M = int(rng.integers(2, 4))
            m = int(rng.integers(1, M))
            a = int(rng.integers(1, 5))
            A = int(rng.integers(a, 7))
            q = ("1/3", "1/2")[int(rng.integers(0, 2))]
            case = FiniteCase(q=q, m=m, n=n, M=M, N=N, a=a, A=A)
            exact = finite_two_point(case).value
            estimate = mc_point_probability(float(Fraction(q)), case.target(), samples,
                                            self.seed + index)
            ok = abs(exact - estimate.value) < 4 * estimate.std_error
            passed = passed and ok
            rows.append({"case": {"q": q, "m": m, "n": n, "M": M, "N": N, "a": a, "A": A},
                         "exact": exact, "mc": estimate.value, "std_error": estimate.std_error})
        return {"passed": passed, "samples": samples, "cases": rows}

    def check_transitions(self) -> Dict[str, Any]:
        single = transition_check(Fraction(1, 2), [0], 3, self.mc_samples, self.seed)
        pair = transition_check(Fraction(1, 2), [0, 1], 1, self.mc_samples, self.seed + 1)
        box_ok = abs(pair.box_mass_formula - pair.box_mass_mc) < 4 * pair.box_std_error
        return {"passed": single.max_sigma < 4.5 and box_ok,
                "single_max_sigma": single.max_sigma,
                "pair_box": [pair.box_mass_formula, pair.box_mass_mc, pair.box_std_error]}

    def check_limit_smoke(self) -> Dict[str, Any]:
        limit = self.twotime.eval_k_form(params_from_scaled(0.0, 0.0, 0.0, 0.0, 1.0)).value
        samples = max(MIN_LIMIT_SMOKE_SAMPLES, self.mc_samples)
        gaps = {}
        errors = {}
        for T in LIMIT_SMOKE_TIMES:
            cell = mc_joint_cdf(0.25, T, 1.0, 2.0, 0.0, 0.0, [0.0], [0.0], samples, self.seed)[0]
            gaps[T] = abs(cell.estimate.value - limit)
            errors[T] = cell.estimate.std_error
        shrinking = all(gaps[b] <= gaps[a] + 2 * math.hypot(errors[a], errors[b])
                        for a, b in zip(LIMIT_SMOKE_TIMES, LIMIT_SMOKE_TIMES[1:]))
        passed = shrinking and gaps[LIMIT_SMOKE_TIMES[-1]] < 0.05
        return {"passed": passed, "limit": limit, "samples": samples, "gaps": gaps,
                "std_errors": errors}

    # running

    def run_check(self, suite: str, name: str) -> CheckResult:
        check = getattr(self, f"check_{name}")
        start = time.time()
        try:
            details = check()
            passed = bool(details.pop("passed"))
        except TwoTimeError as e:
            passed, details = False, {"error": type(e).__name__, "message": str(e)}
        result = CheckResult(suite=suite, name=name, passed=passed, details=details,
                             elapsed=time.time() - start)
        log_verification(self.logger, suite, name, passed, details)
        return result

    def run_suite(self, suite: str, checks: List[str]) -> SuiteReport:
        results = [self.run_check(suite, name) for name in checks]
        return SuiteReport(suite=suite, passed=all(r.passed for r in results), checks=results)

    def report(self, reports: List[SuiteReport]) -> Dict[str, Any]:
        """Machine-readable report with timing statistics and cache counters."""
        return {
            "passed": all(r.passed for r in reports),
            "suites": [r.model_dump() for r in reports],
            "performance": PerformanceMonitor().summary(),
            "cache": cache_manager.stats(),
        }
