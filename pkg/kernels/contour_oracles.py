"""
Contour-integral representations of the two-time kernels.

They are independent of the Airy-product evaluation path and serve as its
oracle. Multiple integrals are reduced to O(n^2) work by summing the variables
coupled only through a single Cauchy factor first.
"""

from typing import Callable, Dict, Tuple

import numpy as np

from kernels.context import MIN_CONTOUR_DECAY, KernelContext
from special.airy import g_exponential
from special.contours import VerticalLine


def _line(anchor: float, rate: float, oscillation: float = 1.0) -> Tuple[np.ndarray, np.ndarray]:
    return VerticalLine.for_decay(anchor, rate, oscillation).nodes()


def _cauchy_sum(targets: np.ndarray, nodes: np.ndarray, values: np.ndarray) -> np.ndarray:
    """sum_k values_k / (target - node_k) for every target."""
    return (values[None, :] / (targets[:, None] - nodes[None, :])).sum(axis=1)


def _four_fold(ctx: KernelContext, x: float, y: float, z_anchor: float) -> complex:
    p, o = ctx.params, ctx.offsets
    z, wz = _line(z_anchor, z_anchor + p.eta1)
    w, ww = _line(o.D2, o.D2 + p.delta_eta)
    zeta, wzeta = _line(-o.d1, o.d1 - p.eta1)
    omega, womega = _line(-o.d2, o.d2 - p.delta_eta)

    inner_z = _cauchy_sum(z, zeta, wzeta / g_exponential(p.xi1 - x, p.eta1, zeta))
    inner_w = _cauchy_sum(w, omega, womega / g_exponential(p.delta_xi + p.alpha * y, p.delta_eta, omega))
    left = wz * g_exponential(p.xi1, p.eta1, z) * inner_z
    right = ww * g_exponential(p.delta_xi, p.delta_eta, w) * inner_w
    coupled = left @ (1.0 / (z[:, None] - p.alpha * w[None, :])) @ right
    return p.alpha * np.exp(ctx.delta * (y - x)) * coupled


def s1_contour(x: float, y: float, ctx: KernelContext) -> complex:
    """S1 as a 4-fold integral with z on Gamma_{D1}."""
    return _four_fold(ctx, x, y, ctx.offsets.D1)


def t1_contour(x: float, y: float, ctx: KernelContext) -> complex:
    """T1: the same integrand with z on Gamma_{D3}."""
    return _four_fold(ctx, x, y, ctx.offsets.D3)


def s2_contour(x: float, y: float, ctx: KernelContext) -> complex:
    p, o = ctx.params, ctx.offsets
    w, ww = _line(o.D2, o.D2 + p.delta_eta)
    omega, womega = _line(-o.d2, o.d2 - p.delta_eta)
    inner = _cauchy_sum(w, omega, womega / g_exponential(p.delta_xi + p.alpha * y, p.delta_eta, omega))
    total = np.sum(ww * g_exponential(p.delta_xi + p.alpha * x, p.delta_eta, w) * inner)
    return p.alpha * np.exp(ctx.delta * (y - x)) * total


def s3_contour(x: float, y: float, ctx: KernelContext) -> complex:
    p, o = ctx.params, ctx.offsets
    z, wz = _line(o.D1, o.D1 + p.eta1)
    zeta, wzeta = _line(-o.d1, o.d1 - p.eta1)
    inner = _cauchy_sum(z, zeta, wzeta / g_exponential(p.xi1 - x, p.eta1, zeta))
    total = np.sum(wz * g_exponential(p.xi1 - y, p.eta1, z) * inner)
    return np.exp(ctx.delta * (y - x)) * total


def s4_contour(x: float, y: float, ctx: KernelContext) -> complex:
    """S4 = S1 - T1 as the 3-fold integral left by the pole at z = alpha w."""
    p, o = ctx.params, ctx.offsets
    ap = p.alpha_prime
    w, ww = _line(o.D2, ap ** 2 * (ap * o.D2 + p.eta2), oscillation=ap ** 3)
    zeta, wzeta = _line(-o.d1, o.d1 - p.eta1)
    omega, womega = _line(-o.d2, o.d2 - p.delta_eta)

    first = _cauchy_sum(p.alpha * w, zeta, wzeta / g_exponential(p.xi1 - x, p.eta1, zeta))
    second = _cauchy_sum(w, omega, womega / g_exponential(p.delta_xi + p.alpha * y, p.delta_eta, omega))
    total = np.sum(ww * g_exponential(p.xi2, p.eta2, ap * w) * first * second)
    return -p.alpha * np.exp(ctx.delta * (y - x)) * total


def m3_contour(v1: float, v2: float, ctx: KernelContext) -> complex:
    p, o = ctx.params, ctx.offsets
    z, wz = _line(o.D2, o.D2 + p.delta_eta)
    zeta, wzeta = _line(-o.d2, o.d2 - p.delta_eta)
    inner = _cauchy_sum(z, zeta, wzeta / g_exponential(p.delta_xi + v1, p.delta_eta, zeta))
    return complex(np.sum(wz * g_exponential(p.delta_xi + v2, p.delta_eta, z) * inner))


def k4_contour(v1: float, v2: float, ctx: KernelContext) -> complex:
    p, o = ctx.params, ctx.offsets
    omega, womega = _line(-o.d2, o.d2 - p.eta2)
    shift = p.xi2 + (v1 + p.alpha * v2) / p.alpha_prime
    total = np.sum(womega / g_exponential(shift, p.eta2, omega))
    return p.alpha * np.exp(-ctx.delta * v2) / p.alpha_prime * total


def _free_anchor(offset: float, eta: float) -> float:
    """Offset of a contour constrained only by its sign, moved out until G_{., eta} decays."""
    return max(offset, MIN_CONTOUR_DECAY - eta)


def m1_contour(v1: float, v2: float, ctx: KernelContext) -> complex:
    p, o = ctx.params, ctx.offsets
    z, wz = _line(o.D1, o.D1 + p.eta1)
    zeta, wzeta = _line(-o.d1, o.d1 - p.eta1)
    inner = _cauchy_sum(z, zeta, wzeta / g_exponential(p.xi1 + v2, p.eta1, zeta))
    total = np.sum(wz * g_exponential(p.xi1 + v1, p.eta1, z) * inner)
    return complex(np.exp(ctx.delta * (v1 - v2)) * total)


def m2_contour(v1: float, v2: float, ctx: KernelContext) -> complex:
    p, o = ctx.params, ctx.offsets
    ap = p.alpha_prime
    D, d = _free_anchor(o.D2, p.eta2), _free_anchor(o.d2, -p.eta2)
    z, wz = _line(D, D + p.eta2)
    zeta, wzeta = _line(-d, d - p.eta2)
    inner = _cauchy_sum(z, zeta, wzeta / g_exponential(p.xi2 + v1 / ap, p.eta2, zeta))
    return complex(np.sum(wz * g_exponential(p.xi2 + v2 / ap, p.eta2, z) * inner) / ap)


def k1_contour(v1: float, v2: float, ctx: KernelContext) -> complex:
    """4-fold chain w - z - zeta - omega with z on Gamma_{D3}, zeta on Gamma_{-d3}."""
    p, o = ctx.params, ctx.offsets
    a = p.alpha
    z, wz = _line(o.D3, o.D3 + p.eta1)
    w, ww = _line(o.D2, o.D2 + p.delta_eta)
    zeta, wzeta = _line(-o.d3, o.d3 - p.eta1)
    omega, womega = _line(-o.d2, o.d2 - p.delta_eta)

    # sum over omega of 1/(alpha omega - zeta)
    by_zeta = -_cauchy_sum(zeta, a * omega, womega / g_exponential(p.delta_xi + v1, p.delta_eta, omega))
    by_z = _cauchy_sum(z, zeta, wzeta * by_zeta / g_exponential(p.xi1, p.eta1, zeta))
    w_part = _cauchy_sum(z, a * w, ww * g_exponential(p.delta_xi + v2, p.delta_eta, w))
    return complex(a * np.sum(wz * g_exponential(p.xi1, p.eta1, z) * by_z * w_part))


def k2_contour(v1: float, v2: float, ctx: KernelContext) -> complex:
    p, o = ctx.params, ctx.offsets
    a, ap = p.alpha, p.alpha_prime
    z, wz = _line(o.D3, o.D3 + p.eta1)
    w, ww = _line(o.D2, o.D2 + p.delta_eta)
    omega, womega = _line(-o.d2, o.d2 - p.eta2)

    omega_part = _cauchy_sum(ap * z, a * omega, womega / g_exponential(p.xi2 + v1 / ap, p.eta2, omega))
    w_part = _cauchy_sum(z, a * w, ww * g_exponential(p.delta_xi + v2, p.delta_eta, w))
    return complex(a * np.sum(wz * g_exponential(p.xi1, p.eta1, z) * omega_part * w_part))


def k3_contour(v1: float, v2: float, ctx: KernelContext) -> complex:
    p, o = ctx.params, ctx.offsets
    a = p.alpha
    zeta, wzeta = _line(-o.d3, o.d3 - p.eta1)
    omega, womega = _line(-o.d2, o.d2 - p.delta_eta)
    inner = -_cauchy_sum(zeta, a * omega, womega / g_exponential(p.delta_xi + v1, p.delta_eta, omega))
    total = np.sum(wzeta * inner / g_exponential(p.xi1 + v2, p.eta1, zeta))
    return complex(a * np.exp(-ctx.delta * v2) * total)


def k5_contour(v1: float, v2: float, ctx: KernelContext) -> complex:
    p, o = ctx.params, ctx.offsets
    a, ap = p.alpha, p.alpha_prime
    D = _free_anchor(o.D2, p.eta2)
    w, ww = _line(D, D + p.eta2)
    zeta, wzeta = _line(-o.d3, o.d3 - p.eta1)
    omega, womega = _line(-o.d2, o.d2 - p.delta_eta)

    omega_part = -_cauchy_sum(zeta, a * omega, womega / g_exponential(p.delta_xi + v1, p.delta_eta, omega))
    # sum over w of 1/(alpha w - alpha' zeta)
    w_part = -_cauchy_sum(ap * zeta, a * w, ww * g_exponential(p.xi2 + v2 / ap, p.eta2, w))
    total = np.sum(wzeta * omega_part * w_part / g_exponential(p.xi1, p.eta1, zeta))
    return complex(a * total)


def k6_contour(v1: float, v2: float, ctx: KernelContext) -> complex:
    """4-fold chain z2 - zeta - z1 - w with z1 on Gamma_{D3}, z2 on Gamma_{D1}."""
    p, o = ctx.params, ctx.offsets
    z1, wz1 = _line(o.D3, o.D3 + p.eta1)
    z2, wz2 = _line(o.D1, o.D1 + p.eta1)
    w, ww = _line(o.D2, o.D2 + p.delta_eta)
    zeta, wzeta = _line(-o.d1, o.d1 - p.eta1)

    by_zeta = -_cauchy_sum(zeta, z2, wz2 * g_exponential(p.xi1 + v1, p.eta1, z2))
    by_z1 = _cauchy_sum(z1, zeta, wzeta * by_zeta / g_exponential(p.xi1, p.eta1, zeta))
    w_part = _cauchy_sum(z1, p.alpha * w, ww * g_exponential(p.delta_xi + v2, p.delta_eta, w))
    total = np.sum(wz1 * g_exponential(p.xi1, p.eta1, z1) * by_z1 * w_part)
    return complex(np.exp(ctx.delta * v1) * total)


def k7_contour(v1: float, v2: float, ctx: KernelContext) -> complex:
    p, o = ctx.params, ctx.offsets
    a, ap = p.alpha, p.alpha_prime
    D = _free_anchor(o.D2, p.eta2)
    z, wz = _line(o.D1, o.D1 + p.eta1)
    w, ww = _line(D, D + p.eta2)
    zeta, wzeta = _line(-o.d1, o.d1 - p.eta1)

    z_part = -_cauchy_sum(zeta, z, wz * g_exponential(p.xi1 + v1, p.eta1, z))
    w_part = -_cauchy_sum(ap * zeta, a * w, ww * g_exponential(p.xi2 + v2 / ap, p.eta2, w))
    total = np.sum(wzeta * z_part * w_part / g_exponential(p.xi1, p.eta1, zeta))
    return complex(np.exp(ctx.delta * v1) * total)


Q_CONTOURS: Dict[str, Callable[[float, float, KernelContext], complex]] = {
    "M1": m1_contour, "M2": m2_contour, "M3": m3_contour,
    "k1": k1_contour, "k2": k2_contour, "k3": k3_contour, "k4": k4_contour,
    "k5": k5_contour, "k6": k6_contour, "k7": k7_contour,
}
