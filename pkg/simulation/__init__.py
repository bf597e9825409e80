"""
Geometric last-passage percolation simulators.
"""

from .passage import height_function, last_passage_table, make_generator, rescaled_height, sample_weights
from .monte_carlo import (
    mc_height_samples, mc_joint_cdf, mc_point_probability, mc_transition_frequencies,
    sample_passage_times
)

__all__ = [
    "height_function", "last_passage_table", "make_generator", "rescaled_height", "sample_weights",
    "mc_height_samples", "mc_joint_cdf", "mc_point_probability", "mc_transition_frequencies",
    "sample_passage_times",
]
