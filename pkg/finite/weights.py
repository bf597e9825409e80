"""
Negative binomial weights, their finite differences of any integer order and the
beta coefficients of the exact finite-N formula. All arithmetic is in Fractions.
"""

import cmath
import math
from fractions import Fraction
from typing import Union

from domain.exceptions import ParameterDomainError
from utils.cache import memoized

Rational = Union[Fraction, int]


def _check(m: int, q: Fraction) -> None:
    if m < 1:
        raise ParameterDomainError(f"weight order m must be >= 1, got {m}")
    if not 0 < q < 1:
        raise ParameterDomainError(f"q must lie in (0, 1), got {q}")


def negbinom_weight(m: int, q: Fraction, x: int) -> Fraction:
    """w_m(x) = (1-q)^m C(x+m-1, x) q^x for x >= 0, and 0 for x < 0."""
    q = Fraction(q)
    _check(m, q)
    if x < 0:
        return Fraction(0)
    return (1 - q) ** m * math.comb(x + m - 1, x) * q ** x


@memoized("finite-difference")
def finite_difference_weight(j: int, m: int, q: Fraction, x: int) -> Fraction:
    """Delta^j w_m(x) for any integer j.

    j > 0: forward differences, Delta f(x) = f(x+1) - f(x).
    j < 0: iterated partial sums, Delta^{-r} f(x) = sum_{y <= x-r} C(x-1-y, r-1) f(y);
    finite because w_m vanishes on the negative integers.
    """
    q = Fraction(q)
    _check(m, q)
    if j == 0:
        return negbinom_weight(m, q, x)
    if j > 0:
        return sum((math.comb(j, k) * (-1) ** (j - k) * negbinom_weight(m, q, x + k)
                    for k in range(j + 1)), Fraction(0))
    r = -j
    return sum((math.comb(x - 1 - y, r - 1) * negbinom_weight(m, q, y)
                for y in range(0, x - r + 1)), Fraction(0))


def difference_weight_contour(j: int, m: int, q: float, x: int, radius: float = 1.5,
                              nodes: int = 256) -> float:
    """Delta^j w_m(x) from its contour representation.

    (-1)^(j-1) (1/2 pi i) int_{|z|=radius} z^j (1-z)^(x+m) (1 - z/(1-q))^(-m) / (1-z) dz,
    radius > 1 so that the circle encloses z = 0, 1 - q and 1.
    """
    if not radius > 1:
        raise ParameterDomainError(f"contour radius must exceed 1, got {radius}")
    q = float(q)
    total = 0j
    for k in range(nodes):
        z = radius * cmath.exp(2j * math.pi * k / nodes)
        H = z ** j * (1 - z) ** (x + m) / (1 - z / (1 - q)) ** m
        total += H / (1 - z) * z
    return ((-1) ** (j - 1) * total / nodes).real


def _rising_binomial(s: Rational, r: int) -> Fraction:
    """Coefficient of zeta^r in (1 - zeta)^(-s), i.e. s (s+1) ... (s+r-1) / r!."""
    value = Fraction(1)
    for i in range(r):
        value *= Fraction(s + i, i + 1)
    return value


def beta_coeff(k: int, eps: int, m: int, a: int, q: Fraction) -> Fraction:
    """Coefficient of zeta^(-k) in (1 - zeta/(1-q))^m (1 - zeta)^(-(a+m-eps)).

    Zero for k >= 1 and one for k = 0.
    """
    if eps not in (0, 1):
        raise ParameterDomainError(f"eps must be 0 or 1, got {eps}")
    q = Fraction(q)
    _check(m, q)
    if k > 0:
        return Fraction(0)
    order = -k
    s = a + m - eps
    ratio = -1 / (1 - q)
    return sum((math.comb(m, i) * ratio ** i * _rising_binomial(s, order - i)
                for i in range(min(order, m) + 1)), Fraction(0))
