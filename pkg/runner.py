"""
Command runner for the lpp_two_time CLI.
Turns a validated RunConfig into artifacts, a one-line summary and an exit code.
"""

import time
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, Tuple

from pydantic import ValidationError

from config import Config
from config_manager import config_manager
from domain.exceptions import (ParameterDomainError, TwoTimeError,
                               VerificationFailedError)
from domain.objects import ContourSpec, FiniteCase, RunConfig
from domain.scaling import params_from_scaled
from finite.determinant import finite_two_point
from fredholm.tracy_widom import tracy_widom_f2
from services.simulation_service import SimulationService
from services.twotime_service import TwoTimeService
from services.verification_service import VerificationService
from suite_registry import SuiteRegistry
from utils.artifacts import write_csv, write_json
from utils.logger import get_logger, log_performance

Outcome = Tuple[str, Path]


class CommandRunner:
    """Dispatches one CLI command to the services."""

    def __init__(self, config: RunConfig):
        self.config = config
        self.logger = get_logger(__name__)
        self.twotime = TwoTimeService(max_workers=config.threads)
        self.simulation = SimulationService(max_workers=config.threads)

    def effective_config(self) -> Dict[str, Any]:
        """Run configuration plus every numeric section, defaults included."""
        return {"run": self.config.model_dump(mode="json"), "numeric": config_manager.to_dict()}

    def _output(self, default_name: str) -> Path:
        return Path(self.config.output) if self.config.output else Config.output_path(default_name)

    def _param(self, name: str, default: Any = None) -> Any:
        value = self.config.params.get(name, default)
        if value is None:
            raise ParameterDomainError(f"missing parameter '{name}' for {self.config.command}")
        return value

    def _contour(self) -> ContourSpec:
        o = self.config.overrides
        section = config_manager.get_section("contour")
        return ContourSpec(radius=o.radius or section.radius, u_nodes=o.u_nodes or section.u_nodes)

    # commands

    def _run_simulate(self) -> Outcome:
        frame, summary = self.simulation.simulate_heights(
            q=float(Fraction(str(self._param("q")))), eta=float(self._param("eta", 0.0)),
            t=float(self._param("t", 1.0)), T=float(self._param("T")),
            seed=self.config.seed, samples=self.config.params.get("samples"))
        path = write_csv(self._output("simulate.csv"), frame, self.effective_config())
        write_json(path.with_name(path.stem + "_summary.json"), {"summary": summary},
                   self.effective_config())
        line = f"H_T mean {summary['mean']:.4f} variance {summary['variance']:.4f}"
        if "reference_mean" in summary:
            line += f" (limit mean {summary['reference_mean']:.4f})"
        return line, path

    def _run_mc_two_time(self) -> Outcome:
        frame = self.simulation.joint_cdf(
            q=float(Fraction(str(self._param("q")))), T=float(self._param("T")),
            t1=float(self._param("t1", 1.0)), t2=float(self._param("t2", 2.0)),
            eta1=float(self._param("eta1", 0.0)), eta2=float(self._param("eta2", 0.0)),
            xi1_values=self._param("xi1_values"), xi2_values=self._param("xi2_values"),
            seed=self.config.seed, samples=self.config.params.get("samples"))
        path = write_csv(self._output("mc_two_time.csv"), frame, self.effective_config())
        return f"joint CDF on {len(frame)} cells", path

    def _run_f2(self) -> Outcome:
        xi = float(self._param("xi"))
        value = tracy_widom_f2(xi)
        path = write_json(self._output("f2.json"), {"xi": xi, "value": value},
                          self.effective_config())
        return f"{value:.12f}", path

    def _run_twotime(self) -> Outcome:
        o = self.config.overrides
        form = self.config.params.get("form", "K")
        if self.config.params.get("sweep"):
            alpha = float(self._param("alpha", 1.0))
            frame = self.twotime.sweep(self._param("xi1_values"), self._param("xi2_values"),
                                       eta1=float(self._param("eta1", 0.0)),
                                       eta2=float(self._param("eta2", 0.0)),
                                       t1=alpha ** 3, t2=alpha ** 3 + 1.0, form=form,
                                       contour=self._contour(), L=o.grid_L, nodes=o.nodes,
                                       delta_margin=o.delta_margin)
            path = write_csv(self._output("twotime_sweep.csv"), frame, self.effective_config())
            return f"swept {len(frame)} points, max imag residue {frame['imag_residue'].max():.1e}", path

        params = params_from_scaled(float(self._param("xi1")), float(self._param("eta1")),
                                    float(self._param("xi2")), float(self._param("eta2")),
                                    float(self._param("alpha", 1.0)))
        if form == "Q":
            result = self.twotime.eval_q_form(params, self._contour(), o.grid_L, o.nodes,
                                              o.delta_margin)
        else:
            result = self.twotime.eval_k_form(params, self._contour(), o.grid_L, o.nodes,
                                              o.delta_margin)
        path = write_json(self._output("twotime.json"), result.to_artifact(), self.effective_config())
        return f"{result.value:.10f} (imag residue {result.imag_residue:.1e})", path

    def _run_finite(self) -> Outcome:
        case = FiniteCase(q=self._param("q"), m=self._param("m"), n=self._param("n"),
                          M=self._param("M"), N=self._param("N"), a=self._param("a"),
                          A=self._param("A"))
        result = finite_two_point(case)
        path = write_json(self._output("finite.json"), result.to_artifact(), self.effective_config())
        return (str(result.exact) if result.exact is not None else f"{result.value:.15f}"), path

    def _run_verify(self) -> Outcome:
        service = VerificationService(self.twotime, seed=self.config.seed,
                                      mc_samples=self.config.params.get("samples"))
        registry = SuiteRegistry(service)
        names = self.config.params.get("suites") or registry.get_suite_names()
        reports = [registry.run(name) for name in names]
        report = service.report(reports)
        path = write_json(self._output("verify.json"), report, self.effective_config())
        failed = [c.name for r in reports for c in r.checks if not c.passed]
        if failed:
            raise VerificationFailedError(f"failed checks: {', '.join(failed)}")
        return f"all {sum(len(r.checks) for r in reports)} checks passed", path

    def _handler(self) -> Callable[[], Outcome]:
        return getattr(self, "_run_" + self.config.command.replace("-", "_"))

    def run(self) -> Tuple[int, str]:
        """(exit code, summary line): 0 success, 2 parameter errors, 3 accuracy errors, 1 otherwise."""
        start = time.time()
        try:
            line, path = self._handler()()
        except ValidationError as e:
            self.logger.error(f"Invalid parameters: {e}")
            return ParameterDomainError.exit_code, f"error: {e.errors()[0]['msg']}"
        except TwoTimeError as e:
            # ParameterDomainError -> 2, AccuracyError -> 3
            self.logger.error(f"{type(e).__name__}: {e}")
            return e.exit_code, f"error: {e}"
        except Exception as e:
            self.logger.exception(f"Unexpected error in {self.config.command}: {e}")
            return 1, f"error: {e}"

        log_performance(self.logger, self.config.command, time.time() - start,
                        {"output": str(path)})
        self.logger.info(f"Artifact written to {path}")
        return 0, line
