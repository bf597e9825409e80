"""
Two-time kernels in the K(u) and Q(u) forms.
"""

from .context import ContourOffsets, KernelContext, default_offsets
from .two_time import (
    BlockKernelValue, KFormAssembly, k_block, kernel_component, kernel_matrices, r_u,
    s_t_assemble
)
from .q_form import QFormAssembly, q_block, q_coefficients, q_component, q_matrices

__all__ = [
    "ContourOffsets", "KernelContext", "default_offsets",
    "BlockKernelValue", "KFormAssembly", "k_block", "kernel_component", "kernel_matrices",
    "r_u", "s_t_assemble",
    "QFormAssembly", "q_block", "q_coefficients", "q_component", "q_matrices",
]
