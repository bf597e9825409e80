"""
Kernels M1-M3, k1-k7 on R+ and the matrix kernel Q(u) on L^2(R+) + L^2(R+).

Every kernel is a product of deformed Airy kernels Ai_{xi,eta} integrated over
lambda in [0, s_cutoff]^k; k4 is closed form.
"""

from typing import Dict, Literal, Optional

import numpy as np

from domain.exceptions import IndexingError, ParameterDomainError, PoleError
from fredholm.operator import DiscretizedOperator, weight_matrix
from fredholm.quadrature import gauss_legendre_panels
from kernels.context import KernelContext
from special.airy import deformed_airy
from utils.logger import get_logger

logger = get_logger(__name__)

QComponent = Literal["M1", "M2", "M3", "k1", "k2", "k3", "k4", "k5", "k6", "k7"]
Q_COMPONENTS = ("M1", "M2", "M3", "k1", "k2", "k3", "k4", "k5", "k6", "k7")


def _ai(xi: float, eta: float, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return deformed_airy(xi, eta, x, y)


def q_matrices(ctx: KernelContext, v1: np.ndarray, v2: np.ndarray,
               damping: Optional[float] = None) -> Dict[str, np.ndarray]:
    """All ten kernels on the pairs (v1_p, v2_q).

    ``damping`` replaces delta in the exponential factors of M1, k3, k4, k6 and k7;
    those factors conjugate the second block of Q(u), so det(I + Q(u)) does not
    depend on it.
    """
    p = ctx.params
    a, ap = p.alpha, p.alpha_prime
    delta = ctx.delta if damping is None else damping
    v1 = np.ravel(np.asarray(v1, dtype=float))
    v2 = np.ravel(np.asarray(v2, dtype=float))
    if np.any(v1 < 0) or np.any(v2 < 0):
        raise IndexingError("Q-form kernels live on R+; got a negative argument")

    lam, w = gauss_legendre_panels(0.0, ctx.s_cutoff, ctx.s_panels, ctx.s_nodes)
    col, row = lam[:, None], lam[None, :]
    V1, V2 = v1[:, None], v2[None, :]
    W = w[None, :]

    # factors shared by several kernels
    inc_minus_left = _ai(p.delta_xi, -p.delta_eta, V1, -a * row) * W        # v1 x lam
    inc_plus_right = _ai(p.delta_xi, p.delta_eta, -a * col, V2)            # lam x v2
    first_minus = _ai(p.xi1, -p.eta1, col, row) * W                        # lam x lam
    first_plus = _ai(p.xi1, p.eta1, col, row) * W                          # lam x lam
    first_plus_left = _ai(p.xi1, p.eta1, V1, row) * W                      # v1 x lam
    second_plus_right = _ai(p.xi2, p.eta2, a * col, V2 / ap)               # lam x v2
    first_minus_scaled = _ai(p.xi1, -p.eta1, col, ap * row) * W            # lam x lam

    out = {
        "M1": np.exp(delta * (V1 - V2)) * (
            first_plus_left @ _ai(p.xi1, -p.eta1, col, V2)),
        "M2": (_ai(p.xi2, -p.eta2, V1 / ap, row) * W) @ _ai(p.xi2, p.eta2, col, V2 / ap) / ap,
        "M3": (_ai(p.delta_xi, -p.delta_eta, V1, row) * W) @ _ai(p.delta_xi, p.delta_eta, col, V2),
        "k1": a * inc_minus_left @ first_minus @ first_plus @ inc_plus_right,
        "k2": a * (_ai(p.xi2, -p.eta2, V1 / ap, a * row) * W)
              @ (_ai(p.xi1, p.eta1, ap * col, row) * W) @ inc_plus_right,
        "k3": a * (inc_minus_left @ _ai(p.xi1, -p.eta1, col, V2)) * np.exp(-delta * V2),
        "k4": np.exp(-delta * V2) * (a / ap) * _ai(p.xi2, -p.eta2, V1 / ap, a * V2 / ap),
        "k5": a * inc_minus_left @ first_minus_scaled @ second_plus_right,
        "k6": np.exp(delta * V1) * (first_plus_left @ first_minus @ first_plus @ inc_plus_right),
        "k7": np.exp(delta * V1) * (first_plus_left @ first_minus_scaled @ second_plus_right),
    }
    for name, value in out.items():
        if not np.all(np.isfinite(value)):
            raise ParameterDomainError(f"{name} overflowed on the lambda grid")
    return out


def q_component(which: QComponent, v1: float, v2: float, ctx: KernelContext) -> float:
    """A single value of M1..M3 or k1..k7."""
    if which not in Q_COMPONENTS:
        raise ParameterDomainError(f"unknown Q-form kernel {which!r}")
    values = q_matrices(ctx, np.array([v1]), np.array([v2]))
    return float(values[which][0, 0])


def q_coefficients(u: complex) -> Dict[str, Dict[str, complex]]:
    """Coefficient of every kernel in each block of Q(u)."""
    if u == 0:
        raise PoleError("Q(u) has a pole at u = 0")
    inv = 1.0 / u
    return {
        "11": {"k1": 2.0 - u - inv, "k2": u - 1.0, "k5": u - 1.0, "M3": u - 1.0, "M2": -u},
        "12": {"k3": u + inv - 2.0, "k4": 1.0 - u},
        "21": {"k6": 1.0 - inv, "k7": -1.0},
        "22": {"M1": inv - 1.0},
    }


def q_block(u: complex, v1: float, v2: float, ctx: KernelContext) -> Dict[str, complex]:
    """The four entries Q11, Q12, Q21, Q22 of Q(u)(v1, v2)."""
    coefficients = q_coefficients(u)
    values = q_matrices(ctx, np.array([v1]), np.array([v2]))
    return {block: complex(sum(c * values[name][0, 0] for name, c in terms.items()))
            for block, terms in coefficients.items()}


class QFormAssembly:
    """Precomputed M/k matrices on one half-line rule; weighted Q(u) for any u."""

    def __init__(self, ctx: KernelContext, nodes: np.ndarray, weights: np.ndarray,
                 damping: Optional[float] = None):
        self.ctx = ctx
        self.nodes = np.asarray(nodes, dtype=float)
        self.weights = np.concatenate([weights, weights])
        self.parts = q_matrices(ctx, self.nodes, self.nodes, damping)
        logger.debug(f"Q-form assembled on {2 * len(self.nodes)} nodes")

    def kernel_values(self, u: complex) -> np.ndarray:
        blocks = {block: sum(c * self.parts[name] for name, c in terms.items())
                  for block, terms in q_coefficients(u).items()}
        return np.block([[blocks["11"], blocks["12"]], [blocks["21"], blocks["22"]]])

    def matrix(self, u: complex) -> DiscretizedOperator:
        return weight_matrix(self.kernel_values(u), self.weights)
