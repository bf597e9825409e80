"""
Constants and coordinate maps between lattice quantities (m, n, a, ...)
and KPZ-scaled quantities (xi, eta, t, T).
"""

import math

from domain.exceptions import ParameterDomainError, ScaleTooSmallError
from domain.objects import DiscreteTarget, ScalingConstants, TwoTimeParams

DEFAULT_DELTA_MARGIN = 1.0
DELTA_CAP = 6.0


def _check_q(q: float) -> None:
    if not (isinstance(q, (int, float)) and 0.0 < q < 1.0):
        raise ParameterDomainError(f"q must lie in (0, 1), got {q!r}")


def compute_constants(q: float) -> ScalingConstants:
    """Evaluate c0..c4 for geometric weights of parameter q."""
    _check_q(q)
    r = math.sqrt(q)
    return ScalingConstants(
        q=q,
        c0=q ** (-1.0 / 3.0) * (1.0 + r) ** (1.0 / 3.0),
        c1=q ** (-1.0 / 6.0) * (1.0 + r) ** (2.0 / 3.0),
        c2=2.0 * r / (1.0 - r),
        c3=q ** (1.0 / 6.0) * (1.0 + r) ** (1.0 / 3.0) / (1.0 - r),
        c4=q ** (1.0 / 3.0) * (1.0 - r) / (1.0 + r) ** (1.0 / 3.0),
    )


def lattice_point(consts: ScalingConstants, t: float, T: float, eta: float,
                  xi: float):
    """(m, n, a) at macroscopic time t: n = tT - c1 eta (tT)^{2/3}, m = tT + c1 eta (tT)^{2/3}."""
    K = t * T
    shift = consts.c1 * eta * K ** (2.0 / 3.0)
    # round() is half-to-even
    m = round(K + shift)
    n = round(K - shift)
    a = round(consts.c2 * K + consts.c3 * xi * K ** (1.0 / 3.0))
    return m, n, a


def map_parameters(q: float, T: float, t1: float, t2: float, eta1: float, eta2: float,
                   xi1: float, xi2: float) -> DiscreteTarget:
    """Lattice target whose probability converges to F_two-time(xi1, eta1; xi2, eta2)."""
    if not T > 0:
        raise ParameterDomainError(f"T must be positive, got {T}")
    if not 0 < t1 < t2:
        raise ParameterDomainError(f"need 0 < t1 < t2, got t1={t1}, t2={t2}")
    consts = compute_constants(q)

    m, n, a = lattice_point(consts, t1, T, eta1, xi1)
    M, N, A = lattice_point(consts, t2, T, eta2, xi2)
    if min(m, n) < 1 or not (m < M and n < N):
        raise ScaleTooSmallError(
            f"T={T} too small: m={m}, n={n}, M={M}, N={N} after rounding")
    return DiscreteTarget(m=m, n=n, M=M, N=N, a=a, A=A)


def derived_params(t1: float, t2: float, eta1: float, eta2: float,
                   xi1: float, xi2: float) -> TwoTimeParams:
    """alpha, alpha', delta_eta and delta_xi of the two-time problem (delta unset)."""
    if not 0 < t1 < t2:
        raise ParameterDomainError(f"need 0 < t1 < t2, got t1={t1}, t2={t2}")
    dt = t2 - t1
    r1 = t1 / dt
    r2 = t2 / dt
    return TwoTimeParams(
        t1=t1, t2=t2, eta1=eta1, eta2=eta2, xi1=xi1, xi2=xi2,
        alpha=r1 ** (1.0 / 3.0),
        alpha_prime=r2 ** (1.0 / 3.0),
        delta_eta=eta2 * r2 ** (2.0 / 3.0) - eta1 * r1 ** (2.0 / 3.0),
        delta_xi=xi2 * r2 ** (1.0 / 3.0) - xi1 * r1 ** (1.0 / 3.0),
    )


def params_from_alpha(alpha: float, xi1: float, eta1: float, delta_xi: float,
                      delta_eta: float) -> TwoTimeParams:
    """Parameters given (alpha, xi1, eta1, delta_xi, delta_eta), normalised to t2 - t1 = 1."""
    if not alpha > 0:
        raise ParameterDomainError(f"alpha must be positive, got {alpha}")
    alpha_prime = (1.0 + alpha ** 3) ** (1.0 / 3.0)
    return TwoTimeParams(
        t1=alpha ** 3, t2=alpha ** 3 + 1.0,
        eta1=eta1, xi1=xi1,
        xi2=(alpha * xi1 + delta_xi) / alpha_prime,
        eta2=(alpha ** 2 * eta1 + delta_eta) / alpha_prime ** 2,
        alpha=alpha, alpha_prime=alpha_prime,
        delta_eta=delta_eta, delta_xi=delta_xi,
    )


def params_from_scaled(xi1: float, eta1: float, xi2: float, eta2: float,
                       alpha: float) -> TwoTimeParams:
    """Parameters from the scaled coordinates at both times and alpha."""
    if not alpha > 0:
        raise ParameterDomainError(f"alpha must be positive, got {alpha}")
    return derived_params(alpha ** 3, alpha ** 3 + 1.0, eta1, eta2, xi1, xi2)


def choose_delta(params: TwoTimeParams, margin: float = DEFAULT_DELTA_MARGIN,
                 cap: float = DELTA_CAP) -> float:
    """delta = max(eta1, alpha*delta_eta, 0) + margin, pulled down to `cap` when the bound allows."""
    if not margin > 0:
        raise ParameterDomainError(f"delta margin must be positive, got {margin}")
    floor = max(params.eta1, params.alpha * params.delta_eta, 0.0)
    delta = floor + margin
    if delta > cap and floor < cap:
        delta = cap
    return delta
