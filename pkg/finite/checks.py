"""
Diagnostics of the finite-N ingredients: the determinantal transition law of
the passage-time vector and the local asymptotics at the critical point.
"""

import cmath
import itertools
import math
from fractions import Fraction
from typing import List, Sequence, Tuple

import sympy
from pydantic import BaseModel, ConfigDict

from domain.exceptions import ParameterDomainError, PoleError
from domain.scaling import compute_constants
from finite.weights import finite_difference_weight
from simulation.monte_carlo import mc_transition_frequencies, wilson_std_error
from utils.logger import get_logger

logger = get_logger(__name__)


class TransitionReport(BaseModel):
    """Formula vs Monte-Carlo law of G(l + steps, .) started from x."""
    model_config = ConfigDict(frozen=True)

    start: List[int]
    steps: int
    states: int
    max_deviation: float
    max_sigma: float
    box_mass_formula: float
    box_mass_mc: float
    box_std_error: float


def transition_probability(q: Fraction, x: Sequence[int], y: Sequence[int], steps: int) -> Fraction:
    """det(Delta^{j-i} w_steps(y_j - x_i)), exact."""
    N = len(x)
    if len(y) != N:
        raise ParameterDomainError("x and y must have the same length")

    def entry(i: int, j: int) -> sympy.Rational:
        i, j = int(i), int(j)
        value = finite_difference_weight(j - i, steps, Fraction(q), y[j] - x[i])
        return sympy.Rational(value.numerator, value.denominator)

    matrix = sympy.Matrix(N, N, entry)
    value = sympy.Rational(matrix.det())
    return Fraction(int(value.p), int(value.q))


def _box(x: Sequence[int], width: int) -> List[Tuple[int, ...]]:
    ranges = [range(xi, xi + width) for xi in x]
    return [y for y in itertools.product(*ranges) if all(a <= b for a, b in zip(y, y[1:]))]


def transition_check(q: Fraction, x: Sequence[int], steps: int, samples: int, seed: int,
                     width: int = 6) -> TransitionReport:
    """Compare the determinantal transition law with simulated transitions on a y-box.

    The box holds every weakly increasing y with x_i <= y_i < x_i + width.
    """
    if any(b < a for a, b in zip(x, x[1:])):
        raise ParameterDomainError(f"x must be weakly increasing, got {list(x)}")
    q = Fraction(q)
    frequencies = mc_transition_frequencies(float(q), x, steps, samples, seed)

    max_deviation = max_sigma = 0.0
    mass_formula = Fraction(0)
    mass_mc = 0.0
    states = _box(x, width)
    for y in states:
        p = transition_probability(q, x, y, steps)
        f = frequencies.get(tuple(y), 0.0)
        deviation = abs(float(p) - f)
        sigma = wilson_std_error(round(f * samples), samples)
        max_deviation = max(max_deviation, deviation)
        max_sigma = max(max_sigma, deviation / sigma)
        mass_formula += p
        mass_mc += f

    hits = round(mass_mc * samples)
    report = TransitionReport(start=list(x), steps=steps, states=len(states),
                              max_deviation=max_deviation, max_sigma=max_sigma,
                              box_mass_formula=float(mass_formula), box_mass_mc=mass_mc,
                              box_std_error=wilson_std_error(hits, samples))
    logger.info(f"Transition check from {list(x)} over {steps} steps: "
                f"max deviation {max_deviation:.2e} ({max_sigma:.2f} sigma)")
    return report


def _saddle_exponent(w: complex, k: float, l: float, b: float, q: float) -> complex:
    if w == 0 or w == 1:
        raise PoleError(f"logarithmic singularity at w={w}")
    if w == 1 - q:
        raise PoleError(f"pole at w = 1 - q = {1 - q}")
    return k * cmath.log(w) + (b + l) * cmath.log(1 - w) - l * cmath.log(1 - w / (1 - q))


def hstar_limit_check(q: float, K: float, xi: float, eta: float, v: float,
                      w_prime: complex) -> float:
    """|H*(w_c + c4 w'/K^{1/3}) - exp(w'^3/3 + eta w'^2 - (xi - v) w')| with w_c = 1 - sqrt q.

    H*(w) = exp(f(w) - f(w_c)) for f(w) = k log w + (b + l) log(1-w) - l log(1 - w/(1-q)),
    k = K - c1 eta K^{2/3} + c0 v K^{1/3}, l = K + c1 eta K^{2/3}, b = c2 K + c3 xi K^{1/3}.
    """
    consts = compute_constants(q)
    k = K - consts.c1 * eta * K ** (2.0 / 3.0) + consts.c0 * v * K ** (1.0 / 3.0)
    l = K + consts.c1 * eta * K ** (2.0 / 3.0)
    b = consts.c2 * K + consts.c3 * xi * K ** (1.0 / 3.0)
    if min(k, l, b) < 1:
        raise ParameterDomainError(f"K={K} too small: k={k:.3f}, l={l:.3f}, b={b:.3f}")

    w_c = 1.0 - math.sqrt(q)
    w = w_c + consts.c4 * complex(w_prime) / K ** (1.0 / 3.0)
    local = cmath.exp(_saddle_exponent(w, k, l, b, q) - _saddle_exponent(w_c, k, l, b, q))
    w_prime = complex(w_prime)
    limit = cmath.exp(w_prime ** 3 / 3.0 + eta * w_prime ** 2 - (xi - v) * w_prime)
    return abs(local - limit)
