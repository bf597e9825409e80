"""
Nyström discretization of integral operators and determinant evaluation.
"""

import math
from typing import Callable, Union

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy import linalg

from domain.exceptions import AccuracyError, ScaledDeterminantError
from utils.logger import get_logger

logger = get_logger(__name__)

# exp(700) is close to the largest finite double
LOG_DET_LIMIT = 700.0

KernelFunction = Callable[[np.ndarray, np.ndarray], np.ndarray]


class DiscretizedOperator(BaseModel):
    """Weighted kernel matrix M so that det(I + K) ~ det(I + M)."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    matrix: np.ndarray
    symmetric: bool = True

    @property
    def size(self) -> int:
        return self.matrix.shape[0]


def weight_matrix(values: np.ndarray, weights: np.ndarray,
                  symmetric: bool = True) -> DiscretizedOperator:
    """Apply quadrature weights to kernel values K(x_p, x_q).

    Symmetric weighting gives sqrt(w_p) K sqrt(w_q); otherwise K w_q. Both are
    similar matrices and share the determinant.
    """
    values = np.asarray(values)
    if values.ndim != 2 or values.shape[0] != values.shape[1] or values.shape[0] != len(weights):
        raise ValueError(f"kernel matrix {values.shape} does not match {len(weights)} nodes")
    if symmetric:
        root = np.sqrt(weights)
        matrix = root[:, None] * values * root[None, :]
    else:
        matrix = values * weights[None, :]
    return DiscretizedOperator(matrix=matrix, symmetric=symmetric)


def discretize(kernel: KernelFunction, nodes: np.ndarray, weights: np.ndarray,
               symmetric: bool = True) -> DiscretizedOperator:
    """Entry (p, q) = sqrt(w_p) kernel(x_p, x_q) sqrt(w_q) (or kernel * w_q)."""
    nodes = np.asarray(nodes, dtype=float)
    values = kernel(nodes[:, None], nodes[None, :])
    return weight_matrix(values, np.asarray(weights, dtype=float), symmetric)


def log_det_eval(op: Union[DiscretizedOperator, np.ndarray]):
    """(phase, log|det(I + M)|) from a pivoted LU factorization."""
    matrix = op.matrix if isinstance(op, DiscretizedOperator) else np.asarray(op)
    if not np.all(np.isfinite(matrix)):
        raise AccuracyError("operator matrix has non-finite entries")

    system = np.eye(matrix.shape[0], dtype=np.result_type(matrix, float)) + matrix
    lu, piv = linalg.lu_factor(system, check_finite=False)
    diag = np.diag(lu)
    if np.any(diag == 0):
        return 0.0, -math.inf

    swaps = np.count_nonzero(piv != np.arange(len(piv)))
    phase = (-1.0) ** swaps
    if np.iscomplexobj(diag):
        phase = phase * np.prod(diag / np.abs(diag))
    else:
        phase = phase * np.prod(np.sign(diag))
    return phase, float(np.sum(np.log(np.abs(diag))))


def det_eval(op: Union[DiscretizedOperator, np.ndarray]) -> complex:
    """det(I + M) via LU with partial pivoting in complex arithmetic."""
    phase, log_abs = log_det_eval(op)
    if log_abs > LOG_DET_LIMIT:
        logger.debug(f"determinant overflow: log|det| = {log_abs:.1f}")
        raise ScaledDeterminantError(
            f"|det| = exp({log_abs:.1f}) overflows", sign=complex(phase), log_abs=log_abs)
    if log_abs == -math.inf:
        return 0j
    return complex(phase) * math.exp(log_abs)
