import numpy as np
import pytest

from domain.exceptions import OutOfGridError, ParameterDomainError, ParityError
from domain.objects import PassageField
from domain.scaling import compute_constants
from simulation.passage import (
    height_function,
    last_passage_table,
    make_generator,
    next_row,
    passage_rows,
    rescaled_height,
    sample_weights,
)


def brute_force_passage(weights):
    m_max, n_max = weights.shape
    G = np.zeros((m_max + 1, n_max + 1), dtype=np.int64)
    for i in range(1, m_max + 1):
        for j in range(1, n_max + 1):
            G[i, j] = max(G[i - 1, j], G[i, j - 1]) + weights[i - 1, j - 1]
    return G[1:, 1:]


def field_of(weights, q=0.5):
    weights = np.asarray(weights, dtype=np.int64)
    return PassageField(q=q, m_max=weights.shape[0], n_max=weights.shape[1], weights=weights)


def test_two_by_two_example():
    field = last_passage_table(field_of([[1, 2], [0, 3]]))
    assert field.G(1, 1) == 1
    assert field.G(1, 2) == 3
    assert field.G(2, 1) == 1
    assert field.G(2, 2) == 6


def test_zero_weights_give_zero_passage():
    field = last_passage_table(field_of(np.zeros((4, 5))))
    assert not field.passage.any()


def test_single_row_is_cumulative_sum():
    field = last_passage_table(field_of([[2, 0, 1, 4]]))
    assert field.passage[0].tolist() == [2, 2, 3, 7]


def test_passage_off_quadrant_is_zero():
    field = last_passage_table(field_of([[1]]))
    assert field.G(0, 1) == 0
    assert field.G(1, 0) == 0
    with pytest.raises(OutOfGridError):
        field.G(2, 1)


def test_passage_table_required():
    with pytest.raises(ParameterDomainError):
        field_of([[1]]).G(1, 1)


def test_vectorised_recursion_matches_brute_force():
    field = sample_weights(0.6, 17, 23, seed=5)
    assert np.array_equal(last_passage_table(field).passage, brute_force_passage(field.weights))


def test_passage_is_monotone_along_both_axes():
    G = last_passage_table(sample_weights(0.4, 12, 12, seed=11)).passage
    assert (np.diff(G, axis=0) >= 0).all()
    assert (np.diff(G, axis=1) >= 0).all()


def test_next_row_acts_on_replicas_independently():
    rng = make_generator(3)
    weights = rng.integers(0, 5, size=(4, 6, 7))
    last = None
    for last in passage_rows(weights):
        pass
    for r in range(4):
        assert np.array_equal(last[r], brute_force_passage(weights[r])[-1])


def test_next_row_from_nonzero_start():
    row = next_row(np.array([0, 2, 5]), np.array([1, 0, 0]))
    assert row.tolist() == [1, 2, 5]


def test_weights_are_reproducible_per_seed_and_stream():
    a = sample_weights(0.5, 8, 8, seed=42).weights
    b = sample_weights(0.5, 8, 8, seed=42).weights
    c = sample_weights(0.5, 8, 8, seed=42, stream=1).weights
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_geometric_weights_have_expected_mean():
    q = 0.5
    weights = sample_weights(q, 200, 200, seed=7).weights
    assert weights.min() >= 0
    std = np.sqrt(q) / (1 - q) / 200
    assert abs(weights.mean() - q / (1 - q)) < 5 * std


@pytest.mark.parametrize("q", [0.0, 1.0])
def test_sample_weights_rejects_bad_q(q):
    with pytest.raises(ParameterDomainError):
        sample_weights(q, 2, 2, seed=0)


def test_negative_seed_rejected():
    with pytest.raises(ParameterDomainError):
        make_generator(-1)


def test_height_function_reads_passage_table():
    field = last_passage_table(field_of([[1, 2], [0, 3]]))
    assert height_function(field, 0, 1) == 1.0
    assert height_function(field, 1, 2) == 1.0
    assert height_function(field, -1, 2) == 3.0
    assert height_function(field, 0, 3) == 6.0


def test_height_function_parity():
    field = last_passage_table(field_of([[1, 2], [0, 3]]))
    with pytest.raises(ParityError):
        height_function(field, 0, 2)
    assert height_function(field, 0, 2, interpolate=True) == pytest.approx(2.0)


def test_rescaled_height_out_of_grid():
    field = last_passage_table(sample_weights(0.25, 5, 5, seed=1))
    with pytest.raises(OutOfGridError):
        rescaled_height(field, compute_constants(0.25), 0.0, 1.0, 50.0)


def test_rescaled_height_interpolates_on_the_diagonal():
    q = 0.25
    consts = compute_constants(q)
    field = last_passage_table(sample_weights(q, 120, 120, seed=3))
    value = rescaled_height(field, consts, 0.0, 1.0, 100.0)
    K = 100.0
    h = 0.5 * (field.G(100, 101) + field.G(101, 100))
    assert value == pytest.approx((h - consts.c2 * K) / (consts.c3 * K ** (1 / 3)))
