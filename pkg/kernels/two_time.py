"""
The scalar kernels S1, T1, S2, S3, their assemblies S, T, R(u) and the matrix
kernel K(u) on L^2(R-) + L^2(R+).

S1 and T1 are evaluated through their factorization into damped Airy-kernel
products integrated over s >= 0 and s <= 0 respectively.
"""

from enum import Enum
from typing import Dict, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from domain.exceptions import IndexingError, ParameterDomainError, PoleError
from fredholm.operator import DiscretizedOperator, weight_matrix
from fredholm.quadrature import QuadratureGrid, gauss_legendre_panels
from kernels.context import KernelContext
from special.airy import airy_kernel_matrix
from utils.logger import get_logger

logger = get_logger(__name__)

Component = Literal["S1", "T1", "S2", "S3"]


class Block(str, Enum):
    MINUS = "-"
    PLUS = "+"


def _s2(ctx: KernelContext, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    p = ctx.params
    c = ctx.increment_shift
    rate = ctx.delta - p.alpha * p.delta_eta
    return p.alpha * np.exp(rate * (y - x)) * airy_kernel_matrix(c + p.alpha * x, c + p.alpha * y)


def _s3(ctx: KernelContext, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    p = ctx.params
    c = ctx.first_shift
    return np.exp((ctx.delta - p.eta1) * (y - x)) * airy_kernel_matrix(c - x, c - y)


def _s_integral(ctx: KernelContext, x: np.ndarray, y: np.ndarray, sign: int) -> np.ndarray:
    """int over s in sign*[0, s_cutoff] of a1(x, s) a2(s, y), a1 = S3 e^{-delta s}, a2 = e^{delta s} S2."""
    p = ctx.params
    s, ws = gauss_legendre_panels(0.0, ctx.s_cutoff, ctx.s_panels, ctx.s_nodes)
    s = sign * s
    c1, c2 = ctx.first_shift, ctx.increment_shift
    x = np.ravel(x)
    y = np.ravel(y)

    with np.errstate(over="ignore", invalid="ignore"):
        left = np.exp(-(ctx.delta - p.eta1) * x)[:, None] * airy_kernel_matrix(
            c1 - x[:, None], c1 - s[None, :])
        right = airy_kernel_matrix(c2 + p.alpha * s[:, None], c2 + p.alpha * y[None, :]) * \
            np.exp((ctx.delta - p.alpha * p.delta_eta) * y)[None, :]
        damping = ws * np.exp((p.alpha * p.delta_eta - p.eta1) * s)
    product = p.alpha * (left * damping[None, :]) @ right
    if not np.all(np.isfinite(product)):
        raise ParameterDomainError("s-integral overflowed; reduce delta or the grid cutoff")
    return product


def kernel_matrices(ctx: KernelContext, x: np.ndarray, y: np.ndarray) -> Dict[str, np.ndarray]:
    """S1, T1, S2, S3 on all pairs (x_p, y_q) of two node vectors."""
    x = np.ravel(np.asarray(x, dtype=float))
    y = np.ravel(np.asarray(y, dtype=float))
    X, Y = x[:, None], y[None, :]
    return {
        "S1": -_s_integral(ctx, x, y, +1),
        "T1": _s_integral(ctx, x, y, -1),
        "S2": _s2(ctx, X, Y),
        "S3": _s3(ctx, X, Y),
    }


def kernel_component(which: Component, x: float, y: float, ctx: KernelContext) -> float:
    """A single value of S1, T1, S2 or S3."""
    x_arr, y_arr = np.array([x], dtype=float), np.array([y], dtype=float)
    if which == "S1":
        return float(-_s_integral(ctx, x_arr, y_arr, +1)[0, 0])
    if which == "T1":
        return float(_s_integral(ctx, x_arr, y_arr, -1)[0, 0])
    if which == "S2":
        return float(_s2(ctx, x_arr, y_arr)[0])
    if which == "S3":
        return float(_s3(ctx, x_arr, y_arr)[0])
    raise ParameterDomainError(f"unknown kernel component {which!r}")


def s_t_from_components(parts: Dict[str, np.ndarray], x: np.ndarray,
                        y: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """S = S1 + 1(x>0) S2 - S3 1(y<0) and T = -T1 - 1(x>0) S2 + S3 1(y<0)."""
    right_row = (np.ravel(x) > 0)[:, None]
    left_col = (np.ravel(y) < 0)[None, :]
    shared = np.where(right_row, parts["S2"], 0.0) - np.where(left_col, parts["S3"], 0.0)
    return parts["S1"] + shared, -parts["T1"] - shared


def s_t_assemble(x: float, y: float, ctx: KernelContext) -> Tuple[float, float]:
    """(S(x, y), T(x, y))."""
    xs, ys = np.array([x], dtype=float), np.array([y], dtype=float)
    S, T = s_t_from_components(kernel_matrices(ctx, xs, ys), xs, ys)
    return float(S[0, 0]), float(T[0, 0])


def r_u(u: complex, x: float, y: float, ctx: KernelContext) -> complex:
    """R(u)(x, y) = S(x, y) + T(x, y) / u."""
    if u == 0:
        raise PoleError("R(u) has a pole at u = 0")
    S, T = s_t_assemble(x, y, ctx)
    return S + T / u


class BlockKernelValue(BaseModel):
    """The 2x2 matrix K(u)(x, y), blocks indexed by the half-lines of x (row) and y (column)."""
    model_config = ConfigDict(frozen=True)

    minus_minus: complex
    minus_plus: complex
    plus_minus: complex
    plus_plus: complex

    def entry(self, row: Block, col: Block) -> complex:
        return getattr(self, f"{Block(row).name.lower()}_{Block(col).name.lower()}")


def _block_of(value: float) -> Block:
    return Block.MINUS if value < 0 else Block.PLUS


def k_block(u: complex, x: float, y: float, ctx: KernelContext,
            row: Optional[Block] = None, col: Optional[Block] = None) -> BlockKernelValue:
    """K(u)(x, y): both top entries R_u(x, y), both bottom entries u R_u(x, y).

    When ``row``/``col`` are given, x and y must lie in those half-lines.
    """
    if row is not None and Block(row) != _block_of(x) and x != 0:
        raise IndexingError(f"x={x} is not in the {Block(row).value} half-line")
    if col is not None and Block(col) != _block_of(y) and y != 0:
        raise IndexingError(f"y={y} is not in the {Block(col).value} half-line")
    value = r_u(u, x, y, ctx)
    return BlockKernelValue(minus_minus=value, minus_plus=value,
                            plus_minus=u * value, plus_plus=u * value)


class KFormAssembly:
    """Precomputed S and T on a fixed grid; produces the weighted matrix of K(u) for any u."""

    def __init__(self, ctx: KernelContext, grid: QuadratureGrid):
        self.ctx = ctx
        self.grid = grid
        nodes = grid.nodes
        parts = kernel_matrices(ctx, nodes, nodes)
        self.S, self.T = s_t_from_components(parts, nodes, nodes)
        self.weights = grid.weights
        # rows with x in R+ carry the factor u
        self.plus_rows = np.concatenate([np.zeros(grid.nodes_per_side, dtype=bool),
                                         np.ones(grid.nodes_per_side, dtype=bool)])
        logger.debug(f"K-form assembled on {grid.size} nodes (delta={ctx.delta:.3f})")

    def kernel_values(self, u: complex) -> np.ndarray:
        if u == 0:
            raise PoleError("K(u) has a pole at u = 0")
        R = self.S + self.T / u
        return np.where(self.plus_rows[:, None], u * R, R)

    def matrix(self, u: complex) -> DiscretizedOperator:
        return weight_matrix(self.kernel_values(u), self.weights)
