"""
Airy function, Airy kernel, the deformed kernel Ai_{xi,eta} and the cubic
exponential G_{xi,eta}.
"""

import math
from typing import Tuple, Union

import numpy as np
from scipy import integrate, special

from domain.exceptions import AccuracyError, ParameterDomainError
from utils.cache import MemoCache, memoized
from utils.logger import get_logger

logger = get_logger(__name__)

ArrayLike = Union[float, np.ndarray]

# |x - y| below which the closed-form kernel switches to its midpoint expansion
DIAGONAL_BAND = 1e-3

# lattices kept by the Airy memo cache
LATTICE_CACHE_ENTRIES = 64


def _check_finite(*values) -> None:
    for value in values:
        if np.any(np.isnan(np.asarray(value, dtype=float))):
            raise ParameterDomainError("NaN argument passed to an Airy evaluation")


class AiryEvaluator:
    """Ai and Ai' on real arrays.

    For x > 0 the exponentially scaled functions are used, so Ai underflows to 0
    instead of Bi overflowing. Values at or above ``underflow_cutoff`` are returned
    as exact zeros.
    """

    def __init__(self, underflow_cutoff: float = 110.0):
        self.underflow_cutoff = underflow_cutoff

    def ai_pair(self, x: ArrayLike) -> Tuple[np.ndarray, np.ndarray]:
        """Return (Ai(x), Ai'(x)) with the shape of x."""
        x = np.asarray(x, dtype=float)
        _check_finite(x)
        ai = np.zeros_like(x)
        aip = np.zeros_like(x)

        neg = x <= 0
        if np.any(neg):
            ai_n, aip_n, _, _ = special.airy(x[neg])
            ai[neg] = ai_n
            aip[neg] = aip_n

        pos = (x > 0) & (x < self.underflow_cutoff)
        if np.any(pos):
            xp = x[pos]
            eai, eaip, _, _ = special.airye(xp)
            scale = np.exp(-(2.0 / 3.0) * xp ** 1.5)
            ai[pos] = eai * scale
            aip[pos] = eaip * scale
        return ai, aip

    def ai(self, x: ArrayLike) -> np.ndarray:
        return self.ai_pair(x)[0]

    def lattice(self, x: ArrayLike) -> Tuple[np.ndarray, np.ndarray]:
        """Memoized (Ai, Ai') on a lattice of arguments, shaped like x; the arrays are read-only."""
        x = np.asarray(x, dtype=float)
        ai, aip = _lattice_values(np.ascontiguousarray(x.ravel()), self.underflow_cutoff)
        return ai.reshape(x.shape), aip.reshape(x.shape)


_lattice_cache = MemoCache(max_entries=LATTICE_CACHE_ENTRIES)


@memoized("airy-lattice", cache=_lattice_cache)
def _lattice_values(x: np.ndarray, cutoff: float) -> Tuple[np.ndarray, np.ndarray]:
    ai, aip = AiryEvaluator(cutoff).ai_pair(x)
    ai.setflags(write=False)
    aip.setflags(write=False)
    return ai, aip


default_evaluator = AiryEvaluator()


def airy_ai(x: float) -> float:
    """Ai(x) for real finite x."""
    _check_finite(x)
    return float(default_evaluator.ai(np.array([x], dtype=float))[0])


def airy_kernel(x: float, y: float, tolerance: float = 1e-11) -> float:
    """K_Ai(x, y) = int_0^inf Ai(x+s) Ai(y+s) ds by adaptive quadrature.

    The half-line is mapped to [0, 1) with s = u/(1-u). Raises AccuracyError with
    the achieved error estimate when quad cannot reach ``tolerance``.
    """
    _check_finite(x, y)

    def integrand(u: float) -> float:
        if u >= 1.0:
            return 0.0
        s = u / (1.0 - u)
        ai_x = default_evaluator.ai(np.array([x + s]))[0]
        ai_y = default_evaluator.ai(np.array([y + s]))[0]
        return ai_x * ai_y / (1.0 - u) ** 2

    breakpoints = None
    low = min(x, y)
    if low < 0:
        # resolve the oscillatory stretch s in [0, -low]
        u_turn = -low / (1.0 - low)
        breakpoints = [u_turn * k / 8.0 for k in range(1, 8)] + [u_turn]

    value, abserr, *_ = integrate.quad(integrand, 0.0, 1.0, epsabs=1e-15, epsrel=1e-12,
                                       limit=400, points=breakpoints, full_output=1)
    if abserr > tolerance * max(1.0, abs(value)):
        raise AccuracyError(f"K_Ai({x}, {y}) quadrature did not converge", achieved=abserr)
    return float(value)


def airy_kernel_matrix(x: ArrayLike, y: ArrayLike,
                       evaluator: AiryEvaluator = default_evaluator) -> np.ndarray:
    """K_Ai on broadcast arrays via (Ai(x)Ai'(y) - Ai'(x)Ai(y))/(x - y).

    Within DIAGONAL_BAND of the diagonal the kernel is expanded about the midpoint
    m: Ai'(m)^2 - m Ai(m)^2 + e^2 (Ai Ai' + 2m Ai'^2 - 2m^2 Ai^2)(m)/3 with e = (x-y)/2.
    """
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    ax, apx = evaluator.lattice(x)
    ay, apy = evaluator.lattice(y)
    diff = x - y
    near = np.abs(diff) < DIAGONAL_BAND

    with np.errstate(divide="ignore", invalid="ignore"):
        out = (ax * apy - apx * ay) / diff

    if np.any(near):
        mid = 0.5 * (x[near] + y[near])
        e = 0.5 * diff[near]
        am, apm = evaluator.lattice(mid)
        out[near] = (apm ** 2 - mid * am ** 2
                     + e ** 2 * (am * apm + 2.0 * mid * apm ** 2 - 2.0 * mid ** 2 * am ** 2) / 3.0)
    return out


def deformed_airy(xi: float, eta: float, x: ArrayLike, y: ArrayLike,
                  evaluator: AiryEvaluator = default_evaluator) -> np.ndarray:
    """Ai_{xi,eta}(x, y) = Ai(xi + eta^2 + x + y) exp((xi + x + y) eta + 2 eta^3 / 3)."""
    _check_finite(xi, eta)
    s = np.asarray(x, dtype=float) + np.asarray(y, dtype=float)
    exponent = (xi + s) * eta + (2.0 / 3.0) * eta ** 3
    ai = evaluator.lattice(xi + eta ** 2 + s)[0]
    with np.errstate(over="ignore"):
        factor = np.exp(exponent)
    if np.any(np.isinf(factor) & (ai != 0)):
        raise AccuracyError(
            f"exp factor of Ai_{{xi,eta}} overflows (max exponent {np.max(exponent):.1f})")
    out = np.where(ai == 0, 0.0, ai * np.where(np.isinf(factor), 0.0, factor))
    return out if out.ndim else float(out)


def g_exponential(xi: float, eta: float, z: Union[complex, np.ndarray]) -> np.ndarray:
    """G_{xi,eta}(z) = exp(z^3/3 + eta z^2 - xi z)."""
    z = np.asarray(z, dtype=complex)
    return np.exp(z ** 3 / 3.0 + eta * z ** 2 - xi * z)


def ai_zero_value() -> float:
    """Ai(0) = 3^{-2/3} / Gamma(2/3)."""
    return 3.0 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0)
