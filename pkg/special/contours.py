"""
Contour descriptors and trapezoid-rule contour integration.

Integrals are normalised as (1/2 pi i) * int f(z) dz throughout.
"""

import math
from typing import Callable, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from domain.exceptions import ContourError
from special.airy import deformed_airy, g_exponential


class VerticalLine(BaseModel):
    """Upward line Re z = anchor, truncated to |Im z| <= half_width."""
    model_config = ConfigDict(frozen=True)

    anchor: float
    node_count: int = Field(default=400)
    half_width: float = Field(default=12.0, gt=0)

    @model_validator(mode="after")
    def _check(self):
        if self.node_count < 8 or self.node_count % 2:
            raise ValueError(f"node_count must be even and >= 8, got {self.node_count}")
        return self

    @classmethod
    def for_decay(cls, anchor: float, rate: float, oscillation: float = 1.0,
                  min_nodes: int = 200) -> "VerticalLine":
        """Line sized for an integrand bounded by exp(-rate t^2) with phase ~ t^3/3.

        The half width drops the Gaussian below 1e-16 and the spacing resolves the
        cubic phase where the Gaussian is still above 1e-10.
        """
        if rate <= 0:
            raise ContourError(f"integrand does not decay along Re z = {anchor} (rate {rate})")
        half_width = math.sqrt(37.0 / rate)
        t_active = math.sqrt(23.0 / rate)
        spacing = min(0.05, math.pi / (2.0 * oscillation * t_active ** 2))
        nodes = max(min_nodes, int(math.ceil(2.0 * half_width / spacing)))
        nodes += nodes % 2
        return cls(anchor=anchor, node_count=nodes, half_width=half_width)

    def nodes(self) -> Tuple[np.ndarray, np.ndarray]:
        """Nodes z_k and weights with sum(f(z_k) w_k) ~ (1/2 pi i) int f dz."""
        h = 2.0 * self.half_width / self.node_count
        t = -self.half_width + h * (np.arange(self.node_count) + 0.5)
        z = self.anchor + 1j * t
        weights = np.full(self.node_count, h / (2.0 * math.pi), dtype=complex)
        return z, weights

    def integrate(self, f: Callable[[np.ndarray], np.ndarray]) -> complex:
        z, w = self.nodes()
        return complex(np.sum(f(z) * w))


class Circle(BaseModel):
    """Positively oriented circle |z - center| = radius."""
    model_config = ConfigDict(frozen=True)

    center: float = 0.0
    radius: float = Field(gt=0)
    node_count: int = Field(default=64)

    @model_validator(mode="after")
    def _check(self):
        if self.node_count < 8 or self.node_count % 2:
            raise ValueError(f"node_count must be even and >= 8, got {self.node_count}")
        return self

    def nodes(self) -> Tuple[np.ndarray, np.ndarray]:
        theta = 2.0 * math.pi * np.arange(self.node_count) / self.node_count
        offset = self.radius * np.exp(1j * theta)
        # dz = i (z - c) dtheta; the 1/(2 pi i) cancels the i and the 2 pi
        return self.center + offset, offset / self.node_count

    def integrate(self, f: Callable[[np.ndarray], np.ndarray]) -> complex:
        z, w = self.nodes()
        return complex(np.sum(f(z) * w))


def verify_airy_contour(xi: float, eta: float, D: float, d: float,
                        nodes: int = 200) -> Tuple[float, float]:
    """Residuals of the two contour identities for Ai(xi + eta^2) e^{+-(xi eta + 2 eta^3/3)}.

    Returns (|int_{Gamma_D} G - closed form|, |int_{Gamma_{-d}} 1/G - closed form|).
    """
    if D <= 0 or d <= 0:
        raise ContourError(f"offsets must be positive, got D={D}, d={d}")
    right = VerticalLine.for_decay(D, D + eta, min_nodes=nodes)
    left = VerticalLine.for_decay(-d, d - eta, min_nodes=nodes)

    upper = right.integrate(lambda z: g_exponential(xi, eta, z))
    lower = left.integrate(lambda z: 1.0 / g_exponential(xi, eta, z))

    return (abs(upper - deformed_airy(xi, eta, 0.0, 0.0)),
            abs(lower - deformed_airy(xi, -eta, 0.0, 0.0)))
