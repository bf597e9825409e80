"""
Nyström discretization and determinants of integral operators.
"""

from .quadrature import QuadratureGrid, build_grid, gauss_legendre, gauss_legendre_panels, half_line_rule
from .operator import DiscretizedOperator, det_eval, discretize, log_det_eval, weight_matrix
from .tracy_widom import tracy_widom_f2, tracy_widom_moments

__all__ = [
    "QuadratureGrid", "build_grid", "gauss_legendre", "gauss_legendre_panels", "half_line_rule",
    "DiscretizedOperator", "det_eval", "discretize", "log_det_eval", "weight_matrix",
    "tracy_widom_f2", "tracy_widom_moments",
]
