"""
Geometric last-passage percolation: weight sampling, the passage-time recursion
and the PNG height function read off the passage table.
"""

import math
from typing import Optional

import numpy as np

from domain.exceptions import OutOfGridError, ParameterDomainError, ParityError
from domain.objects import PassageField, ScalingConstants
from utils.logger import get_logger

logger = get_logger(__name__)


def make_generator(seed: int, stream: int = 0) -> np.random.Generator:
    """Counter-based Philox generator; (seed, stream) addresses an independent stream."""
    if seed < 0 or stream < 0:
        raise ParameterDomainError(f"seed and stream must be nonnegative, got {seed}, {stream}")
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(stream,))
    return np.random.Generator(np.random.Philox(sequence))


def geometric_block(rng: np.random.Generator, q: float, shape) -> np.ndarray:
    """I.i.d. draws with P[w = k] = (1 - q) q^k by inversion, floor(log U / log q)."""
    # U in (0, 1] so that log U is finite
    u = 1.0 - rng.random(shape)
    return np.floor(np.log(u) / math.log(q)).astype(np.int64)


def sample_weights(q: float, m_max: int, n_max: int, seed: int, stream: int = 0) -> PassageField:
    """A weight field w(i, j), 1 <= i <= m_max, 1 <= j <= n_max."""
    if not 0.0 < q < 1.0:
        raise ParameterDomainError(f"q must lie in (0, 1), got {q}")
    if m_max < 1 or n_max < 1:
        raise ParameterDomainError(f"field dimensions must be >= 1, got {m_max}x{n_max}")
    weights = geometric_block(make_generator(seed, stream), q, (m_max, n_max))
    return PassageField(q=q, m_max=m_max, n_max=n_max, weights=weights, seed=seed)


def next_row(previous: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Row i of G from row i-1 and the weights of row i, along the last axis.

    G(i, j) = max(G(i-1, j), G(i, j-1)) + w(i, j) unrolls to
    S_j + max_{k <= j} (G(i-1, k) - S_{k-1}) with S the running sum of row i.
    Leading axes are independent replicas.
    """
    running = np.cumsum(weights, axis=-1)
    shifted = np.concatenate([np.zeros_like(running[..., :1]), running[..., :-1]], axis=-1)
    return running + np.maximum.accumulate(previous - shifted, axis=-1)


def passage_rows(weights: np.ndarray, start: Optional[np.ndarray] = None):
    """Yield G(i, .) for i = 1, 2, ... keeping a single rolling row.

    ``weights`` has shape (..., m_max, n_max); ``start`` is the row G(0, .)
    (zero when omitted).
    """
    row = np.zeros_like(weights[..., 0, :]) if start is None else np.asarray(start)
    for i in range(weights.shape[-2]):
        row = next_row(row, weights[..., i, :])
        yield row


def last_passage_table(field: PassageField) -> PassageField:
    """Copy of the field with the full passage table filled in."""
    table = np.empty_like(field.weights)
    for i, row in enumerate(passage_rows(field.weights)):
        table[i] = row
    logger.debug(f"Computed {field.m_max}x{field.n_max} passage table, G(m,n)={table[-1, -1]}")
    return field.model_copy(update={"passage": table})


def height_function(field: PassageField, x: int, t: int, interpolate: bool = False) -> float:
    """h(x, t) = G((t+x+1)/2, (t-x+1)/2); for x+t even the neighbours x-1, x+1 are averaged."""
    if (x + t) % 2 == 0:
        if not interpolate:
            raise ParityError(f"h(x, t) needs x+t odd, got x={x}, t={t}")
        return 0.5 * (height_function(field, x - 1, t) + height_function(field, x + 1, t))
    return float(field.G((t + x + 1) // 2, (t - x + 1) // 2))


def rescaled_height(field: PassageField, consts: ScalingConstants, eta: float, t: float,
                    T: float) -> float:
    """H_T(eta, t) = (h(2 c1 eta (tT)^{2/3}, 2tT) - c2 tT) / (c3 (tT)^{1/3})."""
    K = t * T
    x = round(2.0 * consts.c1 * eta * K ** (2.0 / 3.0))
    tau = round(2.0 * K)
    m, n = (tau + x + 2) // 2, (tau - x + 2) // 2
    if m > field.m_max or n > field.n_max:
        raise OutOfGridError(
            f"H_T(eta={eta}, t={t}) needs G({m},{n}); field is {field.m_max}x{field.n_max}")
    h = height_function(field, x, tau, interpolate=True)
    return (h - consts.c2 * K) / (consts.c3 * K ** (1.0 / 3.0))
