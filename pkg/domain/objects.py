"""
Domain objects for the lpp_two_time project.
Contains the Pydantic value types shared by the numerical modules and the CLI.
"""

from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from domain.exceptions import ContourError, OutOfGridError, ParameterDomainError


class ScalingConstants(BaseModel):
    """The q-dependent constants tying lattice quantities to KPZ-scaled ones."""
    model_config = ConfigDict(frozen=True)

    q: float = Field(gt=0, lt=1, description="Geometric weight parameter")
    c0: float = Field(gt=0, description="q^{-1/3}(1+sqrt q)^{1/3}")
    c1: float = Field(gt=0, description="Spatial scale q^{-1/6}(1+sqrt q)^{2/3}")
    c2: float = Field(gt=0, description="Law of large numbers 2 sqrt q/(1-sqrt q)")
    c3: float = Field(gt=0, description="Fluctuation scale q^{1/6}(1+sqrt q)^{1/3}/(1-sqrt q)")
    c4: float = Field(gt=0, description="Critical-point scale q^{1/3}(1-sqrt q)/(1+sqrt q)^{1/3}")


class TwoTimeParams(BaseModel):
    """Scaled coordinates of the two-time distribution plus derived quantities."""
    model_config = ConfigDict(frozen=True)

    t1: float = Field(gt=0, description="Earlier macroscopic time")
    t2: float = Field(gt=0, description="Later macroscopic time")
    eta1: float = Field(description="Spatial coordinate at t1")
    eta2: float = Field(description="Spatial coordinate at t2")
    xi1: float = Field(description="Fluctuation level at t1")
    xi2: float = Field(description="Fluctuation level at t2")
    alpha: float = Field(gt=0, description="(t1/(t2-t1))^{1/3}")
    alpha_prime: float = Field(gt=0, description="(t2/(t2-t1))^{1/3}")
    delta_eta: float = Field(description="eta2 (t2/dt)^{2/3} - eta1 (t1/dt)^{2/3}")
    delta_xi: float = Field(description="xi2 (t2/dt)^{1/3} - xi1 (t1/dt)^{1/3}")
    delta: Optional[float] = Field(default=None, description="Damping parameter")

    @model_validator(mode="after")
    def _check_times(self):
        if self.t1 >= self.t2:
            raise ValueError(f"t1 must be smaller than t2 (got {self.t1}, {self.t2})")
        return self

    @property
    def delta_lower_bound(self) -> float:
        """delta must strictly exceed this value."""
        return max(self.eta1, self.alpha * self.delta_eta)

    def with_delta(self, delta: float) -> "TwoTimeParams":
        """Copy with the damping parameter set; rejects values violating the lower bound."""
        if not delta > self.delta_lower_bound:
            raise ParameterDomainError(
                f"delta={delta} must exceed max(eta1, alpha*delta_eta)={self.delta_lower_bound}")
        return self.model_copy(update={"delta": float(delta)})

    def require_delta(self) -> float:
        if self.delta is None:
            raise ParameterDomainError("delta has not been chosen for these parameters")
        return self.delta


class DiscreteTarget(BaseModel):
    """Lattice sizes and thresholds of the event {G(m,n) < a, G(M,N) < A}."""
    model_config = ConfigDict(frozen=True)

    m: int = Field(ge=1)
    n: int = Field(ge=1)
    M: int = Field(ge=1)
    N: int = Field(ge=1)
    a: int
    A: int

    @model_validator(mode="after")
    def _check_order(self):
        if not (self.m < self.M and self.n < self.N):
            raise ValueError(f"need m<M and n<N, got m={self.m}, M={self.M}, n={self.n}, N={self.N}")
        return self


class PassageField(BaseModel):
    """A sampled geometric weight grid and, once computed, its last-passage table."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    q: float = Field(gt=0, lt=1)
    m_max: int = Field(ge=1, description="Extent of the first lattice index")
    n_max: int = Field(ge=1, description="Extent of the second lattice index")
    weights: np.ndarray = Field(description="weights[i-1, j-1] = w(i, j)")
    passage: Optional[np.ndarray] = Field(default=None, description="passage[i-1, j-1] = G(i, j)")
    seed: Optional[int] = None

    def G(self, m: int, n: int) -> int:
        """Last-passage time with G = 0 off the positive quadrant."""
        if self.passage is None:
            raise ParameterDomainError("passage table has not been computed")
        if m < 1 or n < 1:
            return 0
        if m > self.m_max or n > self.n_max:
            raise OutOfGridError(f"G({m},{n}) outside the {self.m_max}x{self.n_max} field")
        return int(self.passage[m - 1, n - 1])


class McEstimate(BaseModel):
    """Empirical probability with a Wilson-centred standard error."""
    model_config = ConfigDict(frozen=True)

    value: float = Field(ge=0, le=1)
    std_error: float = Field(ge=0)
    samples: int = Field(ge=1)
    seed: int
    hits: int = Field(ge=0, description="Number of replicas in the event")


class JointCdfCell(BaseModel):
    """One cell of an empirical joint CDF grid."""
    model_config = ConfigDict(frozen=True)

    xi1: float
    xi2: float
    target: DiscreteTarget
    estimate: McEstimate


class FiniteCase(BaseModel):
    """Integer data of the exact finite-N formula."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    q: Fraction
    m: int = Field(ge=1)
    n: int = Field(ge=1)
    M: int = Field(ge=1)
    N: int = Field(ge=1)
    a: int = Field(ge=0)
    A: int = Field(ge=0)

    @field_validator("q", mode="before")
    @classmethod
    def _parse_q(cls, value: Any) -> Fraction:
        if isinstance(value, Fraction):
            q = value
        elif isinstance(value, float):
            q = Fraction(value).limit_denominator(10**12)
        else:
            q = Fraction(str(value).strip())
        if not 0 < q < 1:
            raise ValueError(f"q must lie in (0,1), got {q}")
        return q

    @model_validator(mode="after")
    def _check_order(self):
        if not (self.m < self.M and self.n < self.N):
            raise ValueError("need m<M and n<N")
        return self

    @property
    def delta_m(self) -> int:
        return self.M - self.m

    @property
    def delta_N(self) -> int:
        return self.N - self.n

    @property
    def delta_a(self) -> int:
        return self.A - self.a

    def target(self) -> DiscreteTarget:
        return DiscreteTarget(m=self.m, n=self.n, M=self.M, N=self.N, a=self.a, A=self.A)


class LMatrix(BaseModel):
    """The two N x N matrices whose u-weighted sum gives the finite-N determinant."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    l1: List[List[Any]] = Field(description="Sum over x < 0")
    l2: List[List[Any]] = Field(description="Sum over x >= 0")
    n: int = Field(ge=1, description="Rows i <= n carry u^{-1} on L2, rows i > n carry u on L1")
    exact: bool = True

    @property
    def size(self) -> int:
        return len(self.l1)

    def at_u(self, u: Any) -> List[List[Any]]:
        """Entries of L(i,j;u)."""
        return [
            [(self.l1[i][j] + self.l2[i][j] / u) if i < self.n else (u * self.l1[i][j] + self.l2[i][j])
             for j in range(self.size)]
            for i in range(self.size)
        ]


class ContourSpec(BaseModel):
    """Circle |u| = radius sampled at u_nodes equispaced angles."""
    model_config = ConfigDict(frozen=True)

    radius: float = Field(default=2.0, description="Must exceed 1")
    u_nodes: int = Field(default=64, description="Even, at least 16")

    def check(self) -> "ContourSpec":
        """Raise ContourError unless radius > 1 and u_nodes is even and >= 16."""
        if not self.radius > 1:
            raise ContourError(f"contour radius must exceed 1, got {self.radius}")
        if self.u_nodes < 16 or self.u_nodes % 2:
            raise ContourError(f"u_nodes must be even and >= 16, got {self.u_nodes}")
        return self


class TwoTimeResult(BaseModel):
    """Value of the two-time distribution with its convergence diagnostics."""
    model_config = ConfigDict(frozen=True)

    value: float
    imag_residue: float
    form: Literal["K", "Q"]
    params: TwoTimeParams
    contour: ContourSpec
    grid: Dict[str, Any]
    determinants: List[Tuple[float, float]] = Field(
        default_factory=list, description="(Re, Im) of det(I+K(u)) per u node")
    elapsed: float = 0.0

    def to_artifact(self) -> Dict[str, Any]:
        return {
            "params": self.params.model_dump(),
            "form": self.form,
            "value": self.value,
            "imag_residue": self.imag_residue,
            "grid": self.grid,
            "contour": {"r": self.contour.radius, "u_nodes": self.contour.u_nodes},
            "diagnostics": {"determinants": self.determinants, "elapsed": self.elapsed},
        }


class NumericOverrides(BaseModel):
    """Command-line overrides of the numeric configuration, with admissible ranges."""
    model_config = ConfigDict(frozen=True)

    grid_L: Optional[float] = Field(default=None, gt=0, le=40)
    nodes: Optional[int] = Field(default=None, ge=4, le=400)
    radius: Optional[float] = Field(default=None, gt=1, le=10)
    u_nodes: Optional[int] = Field(default=None, ge=16, le=1024)
    delta_margin: Optional[float] = Field(default=None, gt=0, le=6)

    @field_validator("u_nodes")
    @classmethod
    def _even(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value % 2:
            raise ValueError("u_nodes must be even")
        return value


class RunConfig(BaseModel):
    """Everything a CLI run needs; embedded verbatim in every artifact."""
    model_config = ConfigDict(frozen=True)

    command: Literal["simulate", "mc-two-time", "f2", "twotime", "finite", "verify"]
    params: Dict[str, Any] = Field(default_factory=dict)
    output: Optional[Path] = None
    seed: int = 20240101
    threads: Optional[int] = Field(default=None, ge=1)
    overrides: NumericOverrides = Field(default_factory=NumericOverrides)
