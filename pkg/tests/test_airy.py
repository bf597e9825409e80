import mpmath
import numpy as np
import pytest
from pydantic import ValidationError
from scipy import special

from domain.exceptions import ContourError, ParameterDomainError
from special.airy import (
    AiryEvaluator,
    _lattice_cache,
    ai_zero_value,
    airy_ai,
    airy_kernel,
    airy_kernel_matrix,
    deformed_airy,
    g_exponential,
)
from special.contours import Circle, VerticalLine, verify_airy_contour
from utils.cache import CacheManager


@pytest.mark.parametrize("x,expected", [
    (0.0, 0.3550280538878172),
    (1.0, 0.1352924163128814),
    (-2.0, 0.2274074282016856),
])
def test_airy_ai_reference_values(x, expected):
    assert airy_ai(x) == pytest.approx(expected, rel=1e-12)


def test_airy_pair_matches_mpmath():
    x = np.linspace(-8.0, 8.0, 33)
    ai, aip = AiryEvaluator().ai_pair(x)
    for xk, a, ap in zip(x, ai, aip):
        assert a == pytest.approx(float(mpmath.airyai(xk)), abs=1e-12)
        assert ap == pytest.approx(float(mpmath.airyai(xk, derivative=1)), abs=1e-12)


def test_airy_ai_at_zero_closed_form():
    assert airy_ai(0.0) == pytest.approx(ai_zero_value(), rel=1e-14)


def test_large_arguments_underflow_to_zero():
    ai, aip = AiryEvaluator().ai_pair(np.array([50.0, 200.0]))
    assert ai[0] == pytest.approx(special.airy(50.0)[0], rel=1e-8)
    assert ai[1] == 0.0
    assert aip[1] == 0.0


def test_nan_argument_rejected():
    with pytest.raises(ParameterDomainError):
        airy_ai(float("nan"))


def test_lattice_values_are_read_only():
    ai, _ = AiryEvaluator().lattice(np.linspace(-3.0, 3.0, 7))
    with pytest.raises(ValueError):
        ai[0] = 1.0


def test_airy_kernel_diagonal_at_origin():
    aip0 = special.airy(0.0)[1]
    assert airy_kernel(0.0, 0.0) == pytest.approx(aip0 ** 2, rel=1e-10)
    assert float(airy_kernel_matrix(0.0, 0.0)) == pytest.approx(aip0 ** 2, rel=1e-12)


@pytest.mark.parametrize("x,y", [(0.3, -0.7), (1.0, 2.0), (-1.5, -1.5), (0.1, 0.1005)])
def test_closed_form_kernel_matches_quadrature(x, y):
    assert float(airy_kernel_matrix(x, y)) == pytest.approx(airy_kernel(x, y), abs=1e-10)


def test_kernel_matrix_is_symmetric():
    x = np.linspace(-4.0, 4.0, 9)
    K = airy_kernel_matrix(x[:, None], x[None, :])
    assert np.allclose(K, K.T, atol=1e-14)


def test_kernel_matrix_continuous_across_diagonal_band():
    outside = float(airy_kernel_matrix(0.5, 0.5 + 1.01e-3))
    inside = float(airy_kernel_matrix(0.5, 0.5 + 0.99e-3))
    assert outside == pytest.approx(inside, abs=1e-6)


def test_deformed_airy_without_drift_is_shifted_airy():
    assert deformed_airy(0.4, 0.0, 0.1, 0.2) == pytest.approx(airy_ai(0.7), rel=1e-14)


def test_deformed_airy_closed_form():
    xi, eta, x, y = 0.3, -0.4, 0.2, 0.5
    expected = airy_ai(xi + eta ** 2 + x + y) * np.exp((xi + x + y) * eta + 2 * eta ** 3 / 3)
    assert deformed_airy(xi, eta, x, y) == pytest.approx(expected, rel=1e-13)


def test_g_exponential_at_real_point():
    assert complex(g_exponential(1.0, 0.5, 1.0)) == pytest.approx(np.exp(1 / 3 + 0.5 - 1.0))


@pytest.mark.parametrize("xi,eta", [(0.0, 0.0), (0.5, 0.3), (-1.0, -0.4)])
def test_contour_representations_reproduce_airy(xi, eta):
    upper, lower = verify_airy_contour(xi, eta, D=1.0, d=1.0)
    assert upper < 1e-9
    assert lower < 1e-9


def test_contour_offsets_must_be_positive():
    with pytest.raises(ContourError):
        verify_airy_contour(0.0, 0.0, D=0.0, d=1.0)


def test_circle_residue():
    circle = Circle(radius=1.5, node_count=32)
    assert circle.integrate(lambda z: 1.0 / z) == pytest.approx(1.0, abs=1e-14)
    assert abs(circle.integrate(lambda z: z ** 3)) < 1e-14


def test_circle_requires_even_node_count():
    with pytest.raises(ValidationError):
        Circle(radius=1.0, node_count=7)


def test_vertical_line_rejects_growing_integrand():
    with pytest.raises(ContourError):
        VerticalLine.for_decay(anchor=1.0, rate=-0.5)


def test_vertical_line_gaussian_integral():
    line = VerticalLine.for_decay(anchor=0.0, rate=1.0)
    # (1/2 pi i) int exp(z^2) dz over Re z = 0 equals 1/(2 sqrt(pi))
    value = line.integrate(lambda z: np.exp(z ** 2))
    assert value == pytest.approx(1.0 / (2.0 * np.sqrt(np.pi)), abs=1e-12)


def test_kernel_assembly_reuses_cached_lattices():
    if not CacheManager().enabled:
        pytest.skip("caching disabled")
    x = np.linspace(-2.0, 2.0, 11) + 0.0137
    airy_kernel_matrix(x[:, None], x[None, :])
    hits = _lattice_cache.hits
    airy_kernel_matrix(x[:, None], x[None, :])
    assert _lattice_cache.hits > hits
    assert _lattice_cache.size() <= _lattice_cache.max_entries
