"""
Immutable evaluation context shared by every two-time kernel.
"""

from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from config_manager import KernelConfig, get_section
from domain.exceptions import ContourError, ParameterDomainError
from domain.objects import TwoTimeParams
from domain.scaling import choose_delta

# lower bound on the Gaussian decay rate along every oracle contour
MIN_CONTOUR_DECAY = 0.3


class ContourOffsets(BaseModel):
    """Real parts of the vertical contours: Gamma_{D_i} to the right, Gamma_{-d_i} to the left."""
    model_config = ConfigDict(frozen=True)

    D1: float = Field(gt=0)
    D2: float = Field(gt=0)
    D3: float = Field(gt=0)
    d1: float = Field(gt=0)
    d2: float = Field(gt=0)
    d3: float = Field(gt=0)

    def check(self, alpha: float) -> "ContourOffsets":
        """Require 0 < D1 < alpha D2 < D3 and 0 < d1 < alpha d2 < d3."""
        if not (self.D1 < alpha * self.D2 < self.D3):
            raise ContourError(f"need D1 < alpha*D2 < D3, got {self.D1}, {alpha * self.D2}, {self.D3}")
        if not (self.d1 < alpha * self.d2 < self.d3):
            raise ContourError(f"need d1 < alpha*d2 < d3, got {self.d1}, {alpha * self.d2}, {self.d3}")
        return self


def default_offsets(params: TwoTimeParams) -> ContourOffsets:
    """Offsets d_i = D_i = (0.5, 0.75/alpha, 2 max(1, alpha)), scaled up until every
    contour integrand decays at least like exp(-MIN_CONTOUR_DECAY t^2)."""
    a = params.alpha
    base = (0.5, 0.75 / a, 2.0 * max(1.0, a))
    # Re z > -eta on contours carrying G_{., eta}(z); Re zeta < eta for 1/G_{., eta}(zeta)
    need_right = [(base[0], params.eta1), (base[1], params.delta_eta), (base[2], params.eta1),
                  (params.alpha_prime * base[1], params.eta2)]
    need_left = [(base[0], -params.eta1), (base[1], -params.delta_eta), (base[2], -params.eta1),
                 (base[1], -params.eta2)]
    scale = 1.0
    for offset, eta in need_right + need_left:
        scale = max(scale, (MIN_CONTOUR_DECAY - eta) / offset)
    D = tuple(scale * b for b in base)
    return ContourOffsets(D1=D[0], D2=D[1], D3=D[2], d1=D[0], d2=D[1], d3=D[2])


class KernelContext(BaseModel):
    """Parameters with a chosen delta, contour offsets and s/lambda quadrature settings."""
    model_config = ConfigDict(frozen=True)

    params: TwoTimeParams
    offsets: ContourOffsets
    s_cutoff: float = Field(default=40.0, gt=0)
    s_panels: int = Field(default=10, ge=1)
    s_nodes: int = Field(default=200, ge=1)

    @classmethod
    def build(cls, params: TwoTimeParams, kernel: Optional[KernelConfig] = None,
              delta_margin: Optional[float] = None,
              offsets: Optional[ContourOffsets] = None) -> "KernelContext":
        """Fill in delta (if unset) and offsets, then validate every invariant."""
        kernel = kernel or get_section("kernel")
        if params.delta is None:
            margin = kernel.delta_margin if delta_margin is None else delta_margin
            params = params.with_delta(choose_delta(params, margin, kernel.delta_cap))
        elif not params.delta > params.delta_lower_bound:
            raise ParameterDomainError(
                f"delta={params.delta} must exceed {params.delta_lower_bound}")
        offsets = (offsets or default_offsets(params)).check(params.alpha)
        return cls(params=params, offsets=offsets, s_cutoff=kernel.s_cutoff,
                   s_panels=kernel.s_panels, s_nodes=kernel.s_nodes)

    @property
    def delta(self) -> float:
        return self.params.require_delta()

    @property
    def first_shift(self) -> float:
        """xi1 + eta1^2, the argument shift of the first-time Airy factors."""
        return self.params.xi1 + self.params.eta1 ** 2

    @property
    def increment_shift(self) -> float:
        """delta_xi + delta_eta^2, the argument shift of the increment Airy factors."""
        return self.params.delta_xi + self.params.delta_eta ** 2
