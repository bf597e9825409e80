"""
Two-time distribution service.
Evaluates F_two-time by the u-contour integral of det(I + K(u)) or det(I + Q(u)),
and provides the duality, marginal and u = 1 checks built on it.
"""

import math
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Literal, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict

from config_manager import get_section
from domain.exceptions import AccuracyError, ParameterDomainError
from domain.objects import ContourSpec, TwoTimeParams, TwoTimeResult
from domain.scaling import derived_params, params_from_alpha
from fredholm.operator import det_eval
from fredholm.quadrature import build_grid, half_line_rule
from fredholm.tracy_widom import tracy_widom_f2
from kernels.context import KernelContext
from kernels.q_form import QFormAssembly
from kernels.two_time import KFormAssembly
from utils.logger import get_logger, log_evaluation
from utils.performance_monitor import performance_timer

# convergence targets of a single evaluation
IMAG_TOLERANCE = 1e-6
RANGE_TOLERANCE = 1e-6


class MarginalCheck(BaseModel):
    """F_two-time with one level sent to large_xi against the Tracy-Widom marginal."""
    model_config = ConfigDict(frozen=True)

    direction: Literal["first", "second"]
    value: float
    reference: float
    gap: float


def alpha_inverse_transform(params: TwoTimeParams) -> TwoTimeParams:
    """Dual parameters: alpha -> 1/alpha, xi1 <-> delta_xi, eta1 <-> delta_eta, delta -> delta/alpha.

    xi2 and eta2 are unchanged by the map.
    """
    beta = 1.0 / params.alpha
    dual = params_from_alpha(beta, xi1=params.delta_xi, eta1=params.delta_eta,
                             delta_xi=params.xi1, delta_eta=params.eta1)
    if params.delta is not None:
        dual = dual.with_delta(beta * params.delta)
    return dual


class TwoTimeService:
    """Evaluator of the two-time distribution in its K(u) and Q(u) forms."""

    def __init__(self, max_workers: Optional[int] = None):
        self.logger = get_logger(__name__)
        self.max_workers = max_workers or get_section("performance").max_workers

    def _contour(self, contour: Optional[ContourSpec]) -> ContourSpec:
        if contour is None:
            section = get_section("contour")
            contour = ContourSpec(radius=section.radius, u_nodes=section.u_nodes)
        return contour.check()

    def evaluate_contour(self, determinant: Callable[[complex], complex],
                         contour: Optional[ContourSpec] = None,
                         use_symmetry: Optional[bool] = None,
                         ) -> Tuple[complex, List[Tuple[float, float]], float]:
        """(1/2 pi i) int_{|u|=r} det(u) / (u - 1) du by the trapezoid rule.

        Returns (integral, per-node determinants, imaginary residue). With
        conjugate symmetry only the upper half circle is evaluated and
        det(conj u) = conj det(u) fills in the rest; a few lower-half nodes are
        still evaluated so the residue measures how far the determinants are
        from that symmetry, together with Im det at u = +-r.
        """
        contour = self._contour(contour)
        if use_symmetry is None:
            use_symmetry = get_section("contour").use_conjugate_symmetry
        n = contour.u_nodes
        u = contour.radius * np.exp(2j * math.pi * np.arange(n) / n)
        upper = np.arange(1, n // 2)
        if use_symmetry:
            mirrored = [n - k for k in sorted({n // 4, n // 4 + n // 8}) if 0 < k < n // 2]
            indices = list(range(n // 2 + 1)) + mirrored
        else:
            mirrored = list(n - upper)
            indices = list(range(n))

        with ThreadPoolExecutor(max_workers=self.max_workers) as pool:
            computed = list(pool.map(lambda k: complex(determinant(u[k])), indices))

        dets = np.empty(n, dtype=complex)
        dets[indices] = computed
        mirrored = np.asarray(mirrored, dtype=int)
        defect = np.abs(dets[mirrored] - np.conj(dets[n - mirrored]))
        if use_symmetry:
            dets[n - upper] = np.conj(dets[upper])

        total = complex(np.mean(dets * u / (u - 1.0)))
        residue = max(abs(total.imag), abs(dets[0].imag), abs(dets[n // 2].imag),
                      float(defect.max(initial=0.0)))
        return total, [(float(d.real), float(d.imag)) for d in dets], residue

    def _result(self, value: complex, form: str, params: TwoTimeParams, contour: ContourSpec,
                grid: dict, dets, start: float, residue: Optional[float] = None) -> TwoTimeResult:
        imag_residue = abs(value.imag) if residue is None else max(residue, abs(value.imag))
        result = TwoTimeResult(value=value.real, imag_residue=imag_residue, form=form,
                               params=params, contour=contour, grid=grid, determinants=dets,
                               elapsed=time.time() - start)
        log_evaluation(self.logger, form, params.model_dump(), result.value,
                       result.imag_residue, result.elapsed)
        if result.imag_residue > IMAG_TOLERANCE:
            raise AccuracyError(
                f"{form}-form contour integral has imaginary residue {result.imag_residue:.2e}",
                achieved=result.imag_residue)
        if not -RANGE_TOLERANCE <= result.value <= 1.0 + RANGE_TOLERANCE:
            raise AccuracyError(f"{form}-form value {result.value} is not a probability",
                                achieved=result.value)
        return result

    @performance_timer("twotime.k_form")
    def eval_k_form(self, params: TwoTimeParams, contour: Optional[ContourSpec] = None,
                    L: Optional[float] = None, nodes: Optional[int] = None,
                    delta_margin: Optional[float] = None,
                    invert_u: bool = False) -> TwoTimeResult:
        """F_two-time via det(I + K(u)) on X; ``invert_u`` evaluates K(1/u) instead."""
        start = time.time()
        contour = self._contour(contour)
        grid_section = get_section("grid")
        grid = build_grid(L or grid_section.L, nodes or grid_section.nodes_per_side)

        ctx = KernelContext.build(params, delta_margin=delta_margin)
        assembly = KFormAssembly(ctx, grid)
        if invert_u:
            det_fn = lambda u: det_eval(assembly.matrix(1.0 / u))
        else:
            det_fn = lambda u: det_eval(assembly.matrix(u))

        value, dets, residue = self.evaluate_contour(det_fn, contour)
        return self._result(value, "K", ctx.params, contour, grid.describe(), dets, start,
                            residue)

    @performance_timer("twotime.q_form")
    def eval_q_form(self, params: TwoTimeParams, contour: Optional[ContourSpec] = None,
                    L: Optional[float] = None, nodes: Optional[int] = None,
                    delta_margin: Optional[float] = None) -> TwoTimeResult:
        """F_two-time via det(I + Q(u)) on Y = L^2(R+) + L^2(R+)."""
        start = time.time()
        contour = self._contour(contour)
        grid_section = get_section("grid")
        L = L or grid_section.L
        nodes = nodes or grid_section.nodes_per_side
        v, w = half_line_rule(L, nodes)

        ctx = KernelContext.build(params, delta_margin=delta_margin)
        assembly = QFormAssembly(ctx, v, w)
        value, dets, residue = self.evaluate_contour(lambda u: det_eval(assembly.matrix(u)), contour)
        return self._result(value, "Q", ctx.params, contour, {"L": L, "nodes": nodes}, dets, start,
                            residue)

    def eval_dual_k_form(self, params: TwoTimeParams, contour: Optional[ContourSpec] = None,
                         L: Optional[float] = None, nodes: Optional[int] = None) -> TwoTimeResult:
        """K-form at the dual parameters with u replaced by 1/u."""
        return self.eval_k_form(alpha_inverse_transform(params), contour, L, nodes, invert_u=True)

    def marginal_check(self, params: TwoTimeParams, direction: Literal["first", "second"] = "first",
                       large_xi: float = 8.0, contour: Optional[ContourSpec] = None) -> MarginalCheck:
        """Send xi2 (direction 'first') or xi1 (direction 'second') to large_xi."""
        if large_xi < 6:
            raise ParameterDomainError(f"large_xi must be >= 6, got {large_xi}")
        p = params
        if direction == "first":
            shifted = derived_params(p.t1, p.t2, p.eta1, p.eta2, p.xi1, large_xi)
            reference = tracy_widom_f2(p.xi1 + p.eta1 ** 2)
        elif direction == "second":
            shifted = derived_params(p.t1, p.t2, p.eta1, p.eta2, large_xi, p.xi2)
            reference = tracy_widom_f2(p.xi2 + p.eta2 ** 2)
        else:
            raise ParameterDomainError(f"direction must be 'first' or 'second', got {direction!r}")

        value = self.eval_k_form(shifted, contour).value
        check = MarginalCheck(direction=direction, value=value, reference=reference,
                              gap=abs(value - reference))
        self.logger.info(f"Marginal check ({direction}, large_xi={large_xi}): gap {check.gap:.2e}")
        return check

    def unit_u_determinant(self, params: TwoTimeParams, form: Literal["K", "Q"] = "K",
                           L: Optional[float] = None, nodes: Optional[int] = None,
                           ) -> Tuple[float, float]:
        """(det(I + K(1)) or det(I + Q(1)), F2(xi2 + eta2^2)); the two agree."""
        grid_section = get_section("grid")
        L = L or grid_section.L
        nodes = nodes or grid_section.nodes_per_side
        ctx = KernelContext.build(params)
        if form == "K":
            assembly = KFormAssembly(ctx, build_grid(L, nodes))
        else:
            v, w = half_line_rule(L, nodes)
            assembly = QFormAssembly(ctx, v, w)
        value = det_eval(assembly.matrix(1.0)).real
        return value, tracy_widom_f2(params.xi2 + params.eta2 ** 2)

    @performance_timer("twotime.sweep")
    def sweep(self, xi1_values: Sequence[float], xi2_values: Sequence[float],
              eta1: float = 0.0, eta2: float = 0.0, t1: float = 1.0, t2: float = 2.0,
              form: Literal["K", "Q"] = "K",
              contour: Optional[ContourSpec] = None,
              L: Optional[float] = None, nodes: Optional[int] = None,
              delta_margin: Optional[float] = None) -> pd.DataFrame:
        """F_two-time on the product grid xi1_values x xi2_values.

        L, nodes and delta_margin override the configured quadrature for every point.
        """
        rows = []
        evaluate = self.eval_k_form if form == "K" else self.eval_q_form
        for xi1 in xi1_values:
            for xi2 in xi2_values:
                result = evaluate(derived_params(t1, t2, eta1, eta2, xi1, xi2), contour,
                                  L=L, nodes=nodes, delta_margin=delta_margin)
                rows.append({"xi1": xi1, "xi2": xi2, "eta1": eta1, "eta2": eta2,
                             "alpha": result.params.alpha, "form": form,
                             "value": result.value, "imag_residue": result.imag_residue,
                             "L": result.grid.get("L"), "nodes": result.grid.get("nodes")})
        self.logger.info(f"Swept {len(rows)} points of the two-time distribution")
        return pd.DataFrame(rows)
