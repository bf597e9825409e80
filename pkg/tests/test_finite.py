import itertools
from fractions import Fraction

import mpmath
import pytest

from domain.exceptions import ParameterDomainError, PoleError, SupportError
from domain.objects import FiniteCase
from finite import determinant
from finite.checks import _saddle_exponent, hstar_limit_check, transition_check, transition_probability
from finite.determinant import (
    _exact_coefficients,
    conjugation_ratio,
    finite_two_point,
    l_matrix,
    laurent_coefficients,
    triangular_factors,
)
from finite.weights import beta_coeff, difference_weight_contour, finite_difference_weight, negbinom_weight

HALF = Fraction(1, 2)


def brute_force_two_point(case: FiniteCase) -> Fraction:
    """P[G(m,n) < a, G(M,N) < A] by enumerating every weight below A in the M x N box."""
    M, N, A, q = case.M, case.N, case.A, case.q
    total = Fraction(0)
    for values in itertools.product(range(A), repeat=M * N):
        G = [[0] * (N + 1) for _ in range(M + 1)]
        for i in range(1, M + 1):
            for j in range(1, N + 1):
                G[i][j] = max(G[i - 1][j], G[i][j - 1]) + values[(i - 1) * N + (j - 1)]
        if G[case.m][case.n] < case.a and G[M][N] < A:
            weight = Fraction(1)
            for v in values:
                weight *= (1 - q) * q ** v
            total += weight
    return total


def test_negbinom_weight_values():
    assert negbinom_weight(1, HALF, 0) == HALF
    assert negbinom_weight(2, HALF, 1) == Fraction(1, 4)
    assert negbinom_weight(3, HALF, -1) == 0


def test_negbinom_weight_mass():
    assert float(sum(negbinom_weight(3, Fraction(1, 3), x) for x in range(120))) == pytest.approx(1.0)


def test_weights_reject_bad_order():
    with pytest.raises(ParameterDomainError):
        negbinom_weight(0, HALF, 1)
    with pytest.raises(ParameterDomainError):
        finite_difference_weight(1, 2, Fraction(3, 2), 0)


@pytest.mark.parametrize("x", range(-2, 6))
def test_forward_difference_inverts_partial_sums(x):
    q = Fraction(2, 5)
    for j in (-1, -2, -3):
        lifted = finite_difference_weight(j, 2, q, x + 1) - finite_difference_weight(j, 2, q, x)
        assert lifted == finite_difference_weight(j + 1, 2, q, x)


def test_first_difference_by_hand():
    assert finite_difference_weight(1, 1, HALF, 0) == Fraction(1, 4) - Fraction(1, 2)


def test_partial_sum_by_hand():
    # Delta^{-1} w(x) = sum_{y <= x-1} w(y)
    assert finite_difference_weight(-1, 1, HALF, 2) == Fraction(3, 4)
    assert finite_difference_weight(-1, 1, HALF, 0) == 0


@pytest.mark.parametrize("j", [-2, -1, 0, 1, 2])
def test_contour_representation_of_differences(j):
    for x in range(-2, 5):
        exact = float(finite_difference_weight(j, 2, HALF, x))
        assert difference_weight_contour(j, 2, 0.5, x) == pytest.approx(exact, abs=1e-10)


def test_contour_radius_must_enclose_poles():
    with pytest.raises(ParameterDomainError):
        difference_weight_contour(0, 1, 0.5, 0, radius=0.9)


def test_beta_coefficients():
    assert beta_coeff(0, 1, 2, 3, HALF) == 1
    assert beta_coeff(2, 0, 2, 3, HALF) == 0
    # coefficient of zeta: -m/(1-q) + (a + m - eps)
    assert beta_coeff(-1, 1, 1, 1, HALF) == -1
    assert beta_coeff(-1, 0, 2, 3, Fraction(1, 3)) == 2 * Fraction(-3, 2) + 5


def test_beta_rejects_bad_eps():
    with pytest.raises(ParameterDomainError):
        beta_coeff(0, 2, 1, 1, HALF)


def test_triangular_factors():
    case = FiniteCase(q="1/3", m=1, n=2, M=3, N=3, a=2, A=4)
    A, B = triangular_factors(case)
    for i in range(3):
        assert A[i][i] == (-1) ** (i + 1)
        assert B[i][i] == (-1) ** (i + 1)
        for k in range(i + 1, 3):
            assert A[i][k] == 0
            assert B[i][k] == 0


def test_oracle_case():
    case = FiniteCase(q="1/2", m=1, n=1, M=2, N=2, a=1, A=2)
    result = finite_two_point(case, exact=True)
    assert result.exact == Fraction(11, 64)
    assert result.mode == "exact"
    assert laurent_coefficients(case, exact=True) == {-1: Fraction(1, 32), 0: Fraction(11, 64), 1: 0}


@pytest.mark.parametrize("case", [
    FiniteCase(q="1/2", m=1, n=1, M=2, N=2, a=2, A=3),
    FiniteCase(q="1/3", m=1, n=2, M=2, N=3, a=2, A=3),
    FiniteCase(q="2/3", m=2, n=1, M=3, N=2, a=1, A=3),
    FiniteCase(q="1/2", m=1, n=1, M=2, N=2, a=1, A=1),
])
def test_exact_formula_matches_enumeration(case):
    assert finite_two_point(case, exact=True).exact == brute_force_two_point(case)


def test_float_mode_matches_exact_mode():
    case = FiniteCase(q="1/3", m=1, n=2, M=2, N=3, a=2, A=3)
    exact = finite_two_point(case, exact=True)
    floating = finite_two_point(case, exact=False)
    assert floating.mode == "float"
    assert floating.exact is None
    assert floating.value == pytest.approx(float(exact.exact), abs=1e-14)


def test_conjugation_leaves_probability_unchanged():
    case = FiniteCase(q="1/3", m=1, n=1, M=3, N=3, a=2, A=4)
    plain = finite_two_point(case, exact=True).exact
    assert finite_two_point(case, exact=True, ratio=Fraction(1, 3)).exact == plain


def test_probability_is_monotone_in_thresholds():
    values = [finite_two_point(FiniteCase(q="1/2", m=1, n=1, M=2, N=2, a=a, A=A), exact=True).exact
              for a, A in [(1, 1), (1, 2), (2, 2), (2, 3)]]
    assert values == sorted(values)
    assert all(0 <= v <= 1 for v in values)


@pytest.mark.parametrize("case", [
    FiniteCase(q="1/2", m=1, n=2, M=2, N=3, a=1, A=3),
    FiniteCase(q="1/3", m=1, n=1, M=3, N=3, a=2, A=4),
])
def test_laurent_degrees(case):
    raw = _exact_coefficients(l_matrix(case))
    assert raw
    assert set(raw) <= set(range(-case.n, case.N - case.n + 1))
    assert sorted(laurent_coefficients(case, exact=True)) == list(range(-case.n, case.N - case.n + 1))


@pytest.mark.parametrize("exact", [True, False])
def test_term_outside_laurent_range_is_a_support_error(monkeypatch, exact):
    case = FiniteCase(q="1/2", m=1, n=1, M=2, N=2, a=1, A=2)
    stray = {0: Fraction(1, 2), 5: Fraction(1, 7)}
    if not exact:
        stray = {p: mpmath.mpf(c.numerator) / c.denominator for p, c in stray.items()}
    name = "_exact_coefficients" if exact else "_float_coefficients"
    monkeypatch.setattr(determinant, name, lambda *args, **kwargs: stray)
    with pytest.raises(SupportError):
        laurent_coefficients(case, exact=exact)


def test_l_matrix_shape():
    L = l_matrix(FiniteCase(q="1/2", m=1, n=1, M=2, N=2, a=1, A=2))
    assert L.size == 2
    assert L.n == 1


def test_zero_first_level_with_single_row():
    case = FiniteCase(q="1/2", m=1, n=1, M=2, N=2, a=0, A=2)
    L = l_matrix(case)
    assert all(v == 0 for row in L.l1 for v in row)
    assert finite_two_point(case, exact=True).exact == 0


def test_artifact_keeps_rational_strings():
    artifact = finite_two_point(FiniteCase(q="1/2", m=1, n=1, M=2, N=2, a=1, A=2)).to_artifact()
    assert artifact["P_exact"] == "11/64"
    assert artifact["case"]["q"] == "1/2"
    assert artifact["P_float"] == pytest.approx(11 / 64)


def test_case_validation():
    with pytest.raises(ValueError):
        FiniteCase(q="3/2", m=1, n=1, M=2, N=2, a=1, A=2)
    with pytest.raises(ValueError):
        FiniteCase(q="1/2", m=2, n=1, M=2, N=2, a=1, A=2)


def test_conjugation_ratio_without_damping():
    assert conjugation_ratio(0.25, 0.0, 100.0) == pytest.approx(0.5)
    assert conjugation_ratio(0.25, 1.0, 100.0) < 0.5


def test_transition_law_single_column():
    # one column: G grows by a sum of three geometric weights
    assert transition_probability(HALF, [0], [2], 3) == Fraction(3, 16)


@pytest.mark.parametrize("y,expected", [((0, 1), Fraction(1, 4)), ((1, 1), Fraction(1, 8)),
                                        ((2, 2), Fraction(1, 16)), ((0, 2), Fraction(1, 8))])
def test_transition_law_two_columns_by_hand(y, expected):
    assert transition_probability(HALF, [0, 1], y, 1) == expected


def test_transition_law_length_mismatch():
    with pytest.raises(ParameterDomainError):
        transition_probability(HALF, [0, 1], [1], 1)


def test_transition_check_against_simulation():
    report = transition_check(HALF, [0, 1], 1, samples=20_000, seed=3)
    assert report.states > 0
    assert abs(report.box_mass_formula - report.box_mass_mc) < 4 * report.box_std_error
    assert report.max_sigma < 5.0


def test_hstar_residual_shrinks_with_scale():
    coarse = hstar_limit_check(0.25, 1e4, 0.0, 0.0, 0.0, 0.5)
    fine = hstar_limit_check(0.25, 1e6, 0.0, 0.0, 0.0, 0.5)
    assert fine < coarse
    assert fine < 0.02


def test_hstar_rejects_small_scale():
    with pytest.raises(ParameterDomainError):
        hstar_limit_check(0.25, 0.5, 0.0, 0.0, 0.0, 0.5)


@pytest.mark.parametrize("w", [0, 1, 0.75])
def test_saddle_exponent_singularities(w):
    with pytest.raises(PoleError):
        _saddle_exponent(w, 10.0, 10.0, 10.0, 0.25)
