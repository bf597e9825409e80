"""
Gauss-Legendre rules for Nyström discretization on L^2(R-) + L^2(R+) and for
the auxiliary s/lambda integrals.
"""

from functools import lru_cache
from typing import Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss
from pydantic import BaseModel, ConfigDict, Field

from domain.exceptions import ParameterDomainError


@lru_cache(maxsize=64)
def _reference_rule(n: int) -> Tuple[np.ndarray, np.ndarray]:
    nodes, weights = leggauss(n)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def gauss_legendre(a: float, b: float, n: int) -> Tuple[np.ndarray, np.ndarray]:
    """n-point Gauss-Legendre rule mapped affinely onto [a, b]."""
    if n < 1:
        raise ParameterDomainError(f"need at least one node, got {n}")
    t, w = _reference_rule(n)
    half = 0.5 * (b - a)
    return a + half * (t + 1.0), half * w


def gauss_legendre_panels(a: float, b: float, panels: int,
                          nodes_total: int) -> Tuple[np.ndarray, np.ndarray]:
    """Composite rule: ``panels`` equal panels with nodes_total/panels nodes each."""
    if panels < 1 or nodes_total % panels:
        raise ParameterDomainError(
            f"nodes_total={nodes_total} must be a positive multiple of panels={panels}")
    per_panel = nodes_total // panels
    edges = np.linspace(a, b, panels + 1)
    parts = [gauss_legendre(lo, hi, per_panel) for lo, hi in zip(edges[:-1], edges[1:])]
    return np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts])


class QuadratureGrid(BaseModel):
    """Nodes on [-L, 0] followed by nodes on [0, L]."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    L: float = Field(gt=0)
    nodes_per_side: int = Field(ge=4)
    left_nodes: np.ndarray
    left_weights: np.ndarray
    right_nodes: np.ndarray
    right_weights: np.ndarray

    @property
    def nodes(self) -> np.ndarray:
        return np.concatenate([self.left_nodes, self.right_nodes])

    @property
    def weights(self) -> np.ndarray:
        return np.concatenate([self.left_weights, self.right_weights])

    @property
    def size(self) -> int:
        return 2 * self.nodes_per_side

    def describe(self) -> dict:
        return {"L": self.L, "nodes": self.nodes_per_side}


def build_grid(L: float, nodes_per_side: int) -> QuadratureGrid:
    """Gauss-Legendre nodes mapped onto [-L, 0] and [0, L]."""
    if not L > 0:
        raise ParameterDomainError(f"grid cutoff must be positive, got {L}")
    if nodes_per_side < 4:
        raise ParameterDomainError(f"need at least 4 nodes per side, got {nodes_per_side}")
    left_x, left_w = gauss_legendre(-L, 0.0, nodes_per_side)
    right_x, right_w = gauss_legendre(0.0, L, nodes_per_side)
    return QuadratureGrid(L=L, nodes_per_side=nodes_per_side,
                          left_nodes=left_x, left_weights=left_w,
                          right_nodes=right_x, right_weights=right_w)


def half_line_rule(L: float, nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre rule on [0, L], the discretization of L^2(R+) used on Y."""
    if not L > 0 or nodes < 4:
        raise ParameterDomainError(f"invalid half-line rule L={L}, nodes={nodes}")
    return gauss_legendre(0.0, L, nodes)
