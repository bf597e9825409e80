"""
Tracy-Widom GUE distribution F2(xi) = det(I - K_Ai) on L^2(xi, inf).
"""

from typing import Dict, Optional

import numpy as np

from config_manager import get_section
from fredholm.operator import det_eval, weight_matrix
from fredholm.quadrature import gauss_legendre
from special.airy import airy_kernel_matrix
from utils.logger import get_logger

logger = get_logger(__name__)


def tracy_widom_f2(xi: float, L: Optional[float] = None, nodes: Optional[int] = None) -> float:
    """F2(xi) by Nyström on [xi, xi + L]; defaults come from the grid section."""
    grid = get_section("grid")
    L = grid.f2_L if L is None else L
    nodes = grid.f2_nodes if nodes is None else nodes

    x, w = gauss_legendre(xi, xi + L, nodes)
    kernel = airy_kernel_matrix(x[:, None], x[None, :])
    value = det_eval(weight_matrix(-kernel, w)).real
    return float(min(1.0, max(0.0, value)))


def tracy_widom_moments(lower: float = -10.0, upper: float = 8.0, points: int = 80,
                        L: float = 12.0, nodes: int = 60) -> Dict[str, float]:
    """Mean and variance of F2 from integrals of the distribution function.

    mean = int_0^inf (1 - F) - int_-inf^0 F and
    E[X^2] = 2 int_0^inf x (1 - F) + 2 int_-inf^0 |x| F, truncated to [lower, upper].
    """
    xl, wl = gauss_legendre(lower, 0.0, points)
    xr, wr = gauss_legendre(0.0, upper, points)
    fl = np.array([tracy_widom_f2(x, L, nodes) for x in xl])
    fr = np.array([tracy_widom_f2(x, L, nodes) for x in xr])

    mean = np.sum(wr * (1.0 - fr)) - np.sum(wl * fl)
    second = 2.0 * np.sum(wr * xr * (1.0 - fr)) + 2.0 * np.sum(wl * np.abs(xl) * fl)
    variance = second - mean ** 2
    logger.debug(f"Tracy-Widom moments: mean={mean:.6f}, variance={variance:.6f}")
    return {"mean": float(mean), "variance": float(variance)}
