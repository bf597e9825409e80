"""
Exact two-point probability P(a, A) = P[G(m,n) < a, G(M,N) < A] at finite sizes.

The probability is the sum of the nonnegative-power coefficients of the Laurent
polynomial det L(u), where row i of L(u) is L1 + L2/u for i <= n and u L1 + L2
for i > n, and L1, L2 are the x < 0 and x >= 0 parts of sum_x f01(i, x) f12(x, j).
"""

import math
import time
from fractions import Fraction
from typing import Callable, Dict, List, Literal, Optional, Tuple, Union

import mpmath
import sympy
from pydantic import BaseModel, ConfigDict

from config_manager import get_section
from domain.exceptions import SupportError
from domain.objects import FiniteCase, LMatrix
from domain.scaling import compute_constants
from finite.weights import beta_coeff, finite_difference_weight
from utils.logger import get_logger, log_performance
from utils.performance_monitor import performance_timer

logger = get_logger(__name__)


class FProbability(BaseModel):
    """Result of the finite-N formula; ``exact`` is set in rational mode."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    case: FiniteCase
    mode: Literal["exact", "float"]
    value: float
    exact: Optional[Fraction] = None
    coefficients: Dict[int, str]

    def to_artifact(self) -> dict:
        c = self.case
        return {
            "case": {"q": str(c.q), "m": c.m, "n": c.n, "M": c.M, "N": c.N, "a": c.a, "A": c.A},
            "P_exact": str(self.exact) if self.exact is not None else None,
            "P_float": self.value,
            "mode": self.mode,
            "laurent_coefficients": self.coefficients,
        }


def conjugation_ratio(q: float, delta: float, K1: float) -> float:
    """c(i+1)/c(i) = (1 - sqrt q) exp(-delta / (c0 K1^{1/3}))."""
    consts = compute_constants(float(q))
    return (1.0 - math.sqrt(q)) * math.exp(-delta / (consts.c0 * K1 ** (1.0 / 3.0)))


def _ratio(ratio: Optional[Union[Fraction, float]]) -> Fraction:
    return Fraction(1) if ratio is None else Fraction(ratio)


def triangular_factors(case: FiniteCase, ratio: Optional[Union[Fraction, float]] = None,
                       ) -> Tuple[List[List[Fraction]], List[List[Fraction]]]:
    """(a_ik, b_kj), 1-based indices stored 0-based.

    a_ik = c(i) (-1)^k beta^1_{k-i}(m, a) vanishes for k > i;
    b_kj = c(j)^{-1} (-1)^k beta^0_{j-k}(dm, da) vanishes for k < j.
    """
    c = _ratio(ratio)
    N = case.N
    A = [[c ** i * (-1) ** k * beta_coeff(k - i, 1, case.m, case.a, case.q)
          for k in range(1, N + 1)] for i in range(1, N + 1)]
    B = [[(-1) ** k * beta_coeff(j - k, 0, case.delta_m, case.delta_a, case.q) / c ** j
          for j in range(1, N + 1)] for k in range(1, N + 1)]
    return A, B


def f_functions(case: FiniteCase, ratio: Optional[Union[Fraction, float]] = None,
                ) -> Tuple[Callable[[int, int], Fraction], Callable[[int, int], Fraction]]:
    """f01(i, x) and f12(x, j) for 1 <= i, j <= N.

    f01(i, x) = sum_{k <= i} a_ik (-1)^n Delta^{n-k} w_m(x + a)
    f12(x, j) = sum_{k >= j} (-1)^n Delta^{k-1-n} w_dm(da - x) b_kj
    """
    A, B = triangular_factors(case, ratio)
    n, N, q = case.n, case.N, case.q
    sign = (-1) ** n

    def f01(i: int, x: int) -> Fraction:
        return sign * sum((A[i - 1][k - 1] * finite_difference_weight(n - k, case.m, q, x + case.a)
                           for k in range(1, i + 1)), Fraction(0))

    def f12(x: int, j: int) -> Fraction:
        return sign * sum((finite_difference_weight(k - 1 - n, case.delta_m, q, case.delta_a - x)
                           * B[k - 1][j - 1] for k in range(j, N + 1)), Fraction(0))

    return f01, f12


def support_bounds(case: FiniteCase) -> Tuple[int, int]:
    """Analytic range of x outside which f01(i, x) f12(x, j) vanishes."""
    return -case.a - case.N, case.delta_a + case.N


@performance_timer("finite.l_matrix")
def l_matrix(case: FiniteCase, ratio: Optional[Union[Fraction, float]] = None) -> LMatrix:
    """L1 (x < 0) and L2 (x >= 0), scanning x over twice the analytic support."""
    f01, f12 = f_functions(case, ratio)
    N = case.N
    low, high = support_bounds(case)
    cap_low, cap_high = -case.a - 2 * N, case.delta_a + 2 * N

    l1 = [[Fraction(0)] * N for _ in range(N)]
    l2 = [[Fraction(0)] * N for _ in range(N)]
    for x in range(cap_low, cap_high + 1):
        left = [f01(i, x) for i in range(1, N + 1)]
        right = [f12(x, j) for j in range(1, N + 1)]
        target = l1 if x < 0 else l2
        for i in range(N):
            for j in range(N):
                term = left[i] * right[j]
                if term == 0:
                    continue
                if not low <= x <= high:
                    raise SupportError(f"nonzero term at x={x} outside [{low}, {high}] "
                                       f"for entry ({i + 1}, {j + 1})", achieved=float(abs(term)))
                target[i][j] += term
    logger.debug(f"L-matrix for N={N}, n={case.n} summed over x in [{low}, {high}]")
    return LMatrix(l1=l1, l2=l2, n=case.n, exact=True)


def _exact_coefficients(L: LMatrix) -> Dict[int, Fraction]:
    u = sympy.Symbol("u")
    symbolic = LMatrix(
        l1=[[sympy.Rational(v.numerator, v.denominator) for v in row] for row in L.l1],
        l2=[[sympy.Rational(v.numerator, v.denominator) for v in row] for row in L.l2],
        n=L.n)
    det = sympy.Matrix(symbolic.at_u(u)).det(method="berkowitz")
    poly = sympy.Poly(sympy.expand(sympy.cancel(det * u ** L.n)), u)
    coefficients = {}
    for (power,), value in poly.terms():
        value = sympy.Rational(value)
        coefficients[power - L.n] = Fraction(int(value.p), int(value.q))
    return coefficients


def _float_coefficients(L: LMatrix, dps: int, radius: float = 2.0) -> Dict[int, mpmath.mpf]:
    """DFT of det L(u) on |u| = radius, with one guard power on either side of u^{-n} .. u^{N-n}.

    4(N+1) nodes resolve the N+1 Laurent terms and the guards without aliasing.
    """
    size = L.size
    nodes = 4 * (size + 1)
    with mpmath.workdps(dps):
        l1 = [[mpmath.mpf(v.numerator) / v.denominator for v in row] for row in L.l1]
        l2 = [[mpmath.mpf(v.numerator) / v.denominator for v in row] for row in L.l2]
        samples = []
        for k in range(nodes):
            u = radius * mpmath.expjpi(mpmath.mpf(2 * k) / nodes)
            rows = [[(l1[i][j] + l2[i][j] / u) if i < L.n else (u * l1[i][j] + l2[i][j])
                     for j in range(size)] for i in range(size)]
            samples.append((u, mpmath.det(mpmath.matrix(rows))))
        coefficients = {}
        for power in range(-L.n - 1, size - L.n + 2):
            total = mpmath.fsum(d * u ** (-power) for u, d in samples) / nodes
            coefficients[power] = +mpmath.re(total)
    return coefficients


def laurent_coefficients(case: FiniteCase, exact: Optional[bool] = None,
                         ratio: Optional[Union[Fraction, float]] = None) -> Dict[int, Union[Fraction, float]]:
    """Coefficients of det L(u) for powers u^{-n} .. u^{N-n}.

    Raises SupportError if det L(u) has a nonzero term outside that range.
    """
    L = l_matrix(case, ratio)
    section = get_section("finite")
    if exact is None:
        exact = case.N <= section.exact_max_N
    powers = range(-case.n, case.N - case.n + 1)
    if exact:
        coefficients = _exact_coefficients(L)
        tolerance = 0
    else:
        coefficients = _float_coefficients(L, section.float_dps)
        tolerance = mpmath.mpf(10) ** (-(section.float_dps // 2))
    stray = {p: c for p, c in coefficients.items() if p not in powers and abs(c) > tolerance}
    if stray:
        power, value = max(stray.items(), key=lambda item: abs(item[1]))
        raise SupportError(f"det L(u) has a term u^{power} outside [{powers.start}, {powers.stop - 1}]",
                           achieved=float(abs(value)))
    return {p: coefficients.get(p, 0) for p in powers}


@performance_timer("finite.two_point")
def finite_two_point(case: FiniteCase, exact: Optional[bool] = None,
                     ratio: Optional[Union[Fraction, float]] = None) -> FProbability:
    """P(a, A) as the sum of the coefficients of u^k, k >= 0, in det L(u)."""
    start = time.time()
    section = get_section("finite")
    if exact is None:
        exact = case.N <= section.exact_max_N
    coefficients = laurent_coefficients(case, exact, ratio)
    total = sum((c for p, c in coefficients.items() if p >= 0), Fraction(0) if exact else 0)

    if exact:
        result = FProbability(case=case, mode="exact", value=float(total), exact=total,
                              coefficients={p: str(c) for p, c in coefficients.items()})
    else:
        with mpmath.workdps(section.float_dps):
            result = FProbability(case=case, mode="float", value=float(total),
                                  coefficients={p: mpmath.nstr(c, 30) for p, c in coefficients.items()})
    log_performance(logger, "finite_two_point", time.time() - start,
                    {"case": result.to_artifact()["case"], "mode": result.mode, "value": result.value})
    return result
