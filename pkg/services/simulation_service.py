"""
Monte-Carlo service for the simulate and mc-two-time commands.
"""

import time
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from config_manager import get_section
from domain.objects import DiscreteTarget, McEstimate
from fredholm.tracy_widom import tracy_widom_moments
from simulation.monte_carlo import mc_height_samples, mc_joint_cdf, mc_point_probability
from utils.logger import get_logger, log_performance


class SimulationService:
    """Runs the LPP simulators and shapes their output for artifacts."""

    def __init__(self, max_workers: Optional[int] = None):
        self.logger = get_logger(__name__)
        self.max_workers = max_workers or get_section("performance").max_workers

    def _samples(self, samples: Optional[int]) -> int:
        return samples or get_section("monte_carlo").samples

    def simulate_heights(self, q: float, eta: float, t: float, T: float, seed: int,
                         samples: Optional[int] = None,
                         with_reference: bool = True) -> Tuple[pd.DataFrame, Dict[str, Any]]:
        """Samples of H_T(eta, t) and their summary, with the Tracy-Widom moments as reference."""
        start = time.time()
        samples = self._samples(samples)
        values = mc_height_samples(q, eta, t, T, samples, seed, max_workers=self.max_workers)
        frame = pd.DataFrame({"replica": np.arange(samples), "H_T": values})

        summary: Dict[str, Any] = {
            "q": q, "eta": eta, "t": t, "T": T, "samples": samples, "seed": seed,
            "mean": float(values.mean()),
            "variance": float(values.var(ddof=1)) if samples > 1 else 0.0,
            "mean_std_error": float(values.std(ddof=1) / np.sqrt(samples)) if samples > 1 else 0.0,
        }
        if with_reference:
            # H_T(eta, t) + eta^2 is Tracy-Widom distributed in the limit
            moments = tracy_widom_moments()
            summary["reference_mean"] = moments["mean"] - eta ** 2
            summary["reference_variance"] = moments["variance"]

        log_performance(self.logger, "simulate_heights", time.time() - start,
                        {"samples": samples, "T": T})
        return frame, summary

    def point_probability(self, q: float, target: DiscreteTarget, seed: int,
                          samples: Optional[int] = None) -> McEstimate:
        return mc_point_probability(q, target, self._samples(samples), seed,
                                    max_workers=self.max_workers)

    def joint_cdf(self, q: float, T: float, t1: float, t2: float, eta1: float, eta2: float,
                  xi1_values: Sequence[float], xi2_values: Sequence[float], seed: int,
                  samples: Optional[int] = None) -> pd.DataFrame:
        """Empirical joint CDF as rows (xi1, xi2, estimate, std_error, samples, seed)."""
        start = time.time()
        cells = mc_joint_cdf(q, T, t1, t2, eta1, eta2, xi1_values, xi2_values,
                             self._samples(samples), seed, max_workers=self.max_workers)
        frame = pd.DataFrame([
            {"xi1": c.xi1, "xi2": c.xi2, "estimate": c.estimate.value,
             "std_error": c.estimate.std_error, "samples": c.estimate.samples,
             "seed": c.estimate.seed, "m": c.target.m, "n": c.target.n, "a": c.target.a,
             "M": c.target.M, "N": c.target.N, "A": c.target.A}
            for c in cells
        ])
        log_performance(self.logger, "joint_cdf", time.time() - start,
                        {"cells": len(cells), "T": T})
        return frame
