"""
Special functions: Airy function and kernels, contour integrands and contours.
"""

from .airy import (
    AiryEvaluator, default_evaluator, airy_ai, airy_kernel, airy_kernel_matrix,
    deformed_airy, g_exponential
)
from .contours import Circle, VerticalLine, verify_airy_contour

__all__ = [
    "AiryEvaluator", "default_evaluator", "airy_ai", "airy_kernel", "airy_kernel_matrix",
    "deformed_airy", "g_exponential",
    "Circle", "VerticalLine", "verify_airy_contour",
]
