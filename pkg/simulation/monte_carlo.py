"""
Monte-Carlo estimators over independent replicas of the geometric LPP field.

Replicas are processed in blocks of ``batch_size``; block b draws from Philox
stream b of the run seed, so every estimate is a deterministic function of
(seed, samples, batch_size, parameters) whatever the number of workers.
"""

import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from config_manager import get_section
from domain.exceptions import ParameterDomainError
from domain.objects import DiscreteTarget, JointCdfCell, McEstimate
from domain.scaling import compute_constants, lattice_point, map_parameters
from simulation.passage import geometric_block, make_generator, next_row
from utils.logger import get_logger, log_mc_run
from utils.performance_monitor import performance_timer

logger = get_logger(__name__)

Site = Tuple[int, int]


def wilson_std_error(hits: int, samples: int) -> float:
    """Half-width of the z = 1 Wilson score interval."""
    return math.sqrt(hits * (samples - hits) / samples + 0.25) / (samples + 1)


def _estimate(hits: int, samples: int, seed: int) -> McEstimate:
    return McEstimate(value=hits / samples, std_error=wilson_std_error(hits, samples),
                      samples=samples, seed=seed, hits=hits)


def _blocks(samples: int, batch_size: int) -> List[int]:
    full, rest = divmod(samples, batch_size)
    return [batch_size] * full + ([rest] if rest else [])


def _site_block(rng: np.random.Generator, q: float, size: int, sites: Sequence[Site]) -> np.ndarray:
    """G at every site for ``size`` replicas, shape (size, len(sites)).

    Weights are drawn one row at a time and only the current row of G is kept.
    """
    m_max = max(m for m, _ in sites)
    n_max = max(n for _, n in sites)
    out = np.zeros((size, len(sites)), dtype=np.int64)
    row = np.zeros((size, n_max), dtype=np.int64)
    for i in range(1, m_max + 1):
        row = next_row(row, geometric_block(rng, q, (size, n_max)))
        for k, (m, n) in enumerate(sites):
            if m == i:
                out[:, k] = row[:, n - 1]
    return out


def _run_blocks(block_fn: Callable[[np.random.Generator, int], np.ndarray], samples: int,
                seed: int, batch_size: Optional[int], max_workers: Optional[int]) -> np.ndarray:
    if samples < 1:
        raise ParameterDomainError(f"samples must be >= 1, got {samples}")
    batch_size = batch_size or get_section("monte_carlo").batch_size
    max_workers = max_workers or get_section("performance").max_workers
    sizes = _blocks(samples, batch_size)

    def run(index: int) -> np.ndarray:
        return block_fn(make_generator(seed, index), sizes[index])

    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        parts = list(pool.map(run, range(len(sizes))))
    return np.concatenate(parts, axis=0)


def sample_passage_times(q: float, sites: Sequence[Site], samples: int, seed: int,
                         batch_size: Optional[int] = None,
                         max_workers: Optional[int] = None) -> np.ndarray:
    """Joint samples of G at the site points, shape (samples, len(sites))."""
    if not 0.0 < q < 1.0:
        raise ParameterDomainError(f"q must lie in (0, 1), got {q}")
    if any(m < 1 or n < 1 for m, n in sites):
        raise ParameterDomainError(f"site points must have positive indices, got {list(sites)}")
    return _run_blocks(lambda rng, size: _site_block(rng, q, size, sites),
                       samples, seed, batch_size, max_workers)


@performance_timer("mc.point_probability")
def mc_point_probability(q: float, target: DiscreteTarget, samples: int, seed: int,
                         batch_size: Optional[int] = None,
                         max_workers: Optional[int] = None) -> McEstimate:
    """Empirical P[G(m,n) < a, G(M,N) < A]."""
    G = sample_passage_times(q, [(target.m, target.n), (target.M, target.N)], samples, seed,
                             batch_size, max_workers)
    hits = int(np.count_nonzero((G[:, 0] < target.a) & (G[:, 1] < target.A)))
    estimate = _estimate(hits, samples, seed)
    log_mc_run(logger, target.model_dump(), estimate.value, estimate.std_error, samples, seed)
    return estimate


@performance_timer("mc.joint_cdf")
def mc_joint_cdf(q: float, T: float, t1: float, t2: float, eta1: float, eta2: float,
                 xi1_values: Sequence[float], xi2_values: Sequence[float], samples: int,
                 seed: int, batch_size: Optional[int] = None,
                 max_workers: Optional[int] = None) -> List[JointCdfCell]:
    """Empirical joint CDF of (H_T(eta1, t1), H_T(eta2, t2)) on the (xi1, xi2) grid.

    The lattice points depend on eta and t only, so one set of replicas serves
    every cell.
    """
    targets = {(xi1, xi2): map_parameters(q, T, t1, t2, eta1, eta2, xi1, xi2)
               for xi1 in xi1_values for xi2 in xi2_values}
    first = next(iter(targets.values()))
    G = sample_passage_times(q, [(first.m, first.n), (first.M, first.N)], samples, seed,
                             batch_size, max_workers)

    cells = []
    for (xi1, xi2), target in targets.items():
        hits = int(np.count_nonzero((G[:, 0] < target.a) & (G[:, 1] < target.A)))
        cells.append(JointCdfCell(xi1=xi1, xi2=xi2, target=target,
                                  estimate=_estimate(hits, samples, seed)))
    logger.info(f"Joint CDF on {len(cells)} cells from {samples} replicas (T={T}, seed={seed})")
    return cells


@performance_timer("mc.height_samples")
def mc_height_samples(q: float, eta: float, t: float, T: float, samples: int, seed: int,
                      batch_size: Optional[int] = None,
                      max_workers: Optional[int] = None) -> np.ndarray:
    """Samples of H_T(eta, t) = (G(m, n) - c2 tT) / (c3 (tT)^{1/3}) at the lattice point of (eta, t)."""
    consts = compute_constants(q)
    m, n, _ = lattice_point(consts, t, T, eta, 0.0)
    if min(m, n) < 1:
        raise ParameterDomainError(f"lattice point ({m}, {n}) of eta={eta}, tT={t * T} is off the quadrant")
    G = sample_passage_times(q, [(m, n)], samples, seed, batch_size, max_workers)[:, 0]
    K = t * T
    return (G - consts.c2 * K) / (consts.c3 * K ** (1.0 / 3.0))


def mc_transition_frequencies(q: float, start: Sequence[int], steps: int, samples: int,
                              seed: int, batch_size: Optional[int] = None,
                              max_workers: Optional[int] = None) -> Dict[Tuple[int, ...], float]:
    """Empirical law of G(l + steps, .) given G(l, .) = start, a weakly increasing vector."""
    x = np.asarray(start, dtype=np.int64)
    if x.ndim != 1 or x.size < 1 or np.any(np.diff(x) < 0):
        raise ParameterDomainError(f"start state must be weakly increasing, got {list(start)}")
    if steps < 1:
        raise ParameterDomainError(f"steps must be >= 1, got {steps}")

    def block(rng: np.random.Generator, size: int) -> np.ndarray:
        row = np.broadcast_to(x, (size, x.size)).copy()
        for _ in range(steps):
            row = next_row(row, geometric_block(rng, q, (size, x.size)))
        return row

    rows = _run_blocks(block, samples, seed, batch_size, max_workers)
    counts = Counter(map(tuple, rows.tolist()))
    return {state: count / samples for state, count in counts.items()}
