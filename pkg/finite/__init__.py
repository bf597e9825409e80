"""
Exact finite-N two-point probabilities.
"""

from .weights import beta_coeff, difference_weight_contour, finite_difference_weight, negbinom_weight
from .determinant import (
    FProbability, conjugation_ratio, f_functions, finite_two_point, l_matrix, laurent_coefficients
)
from .checks import TransitionReport, hstar_limit_check, transition_check, transition_probability

__all__ = [
    "beta_coeff", "difference_weight_contour", "finite_difference_weight", "negbinom_weight",
    "FProbability", "conjugation_ratio", "f_functions", "finite_two_point", "l_matrix",
    "laurent_coefficients",
    "TransitionReport", "hstar_limit_check", "transition_check", "transition_probability",
]
