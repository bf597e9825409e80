from types import SimpleNamespace

import pytest

from domain.exceptions import AccuracyError, ContourError, ParameterDomainError
from domain.objects import ContourSpec
from domain.scaling import params_from_scaled
from fredholm.tracy_widom import tracy_widom_f2
from services.twotime_service import TwoTimeService, alpha_inverse_transform

CONTOUR = ContourSpec(radius=2.0, u_nodes=64)


@pytest.mark.parametrize("use_symmetry", [True, False])
def test_contour_integral_keeps_nonnegative_powers(twotime_service, use_symmetry):
    value, dets, residue = twotime_service.evaluate_contour(lambda u: 0.3 + 0.2 / u + 0.1 * u,
                                                            CONTOUR, use_symmetry)
    assert value.real == pytest.approx(0.4, abs=1e-12)
    assert abs(value.imag) < 1e-12
    assert len(dets) == 64
    assert residue < 1e-12


def test_constant_determinant_integrates_to_itself(twotime_service):
    value, _, _ = twotime_service.evaluate_contour(lambda u: 1.0, CONTOUR)
    assert value.real == pytest.approx(1.0, abs=1e-12)


def test_symmetry_fills_conjugate_half(twotime_service):
    _, dets, _ = twotime_service.evaluate_contour(lambda u: 1.0 / u, CONTOUR, use_symmetry=True)
    for k in range(1, 32):
        assert dets[64 - k][0] == pytest.approx(dets[k][0])
        assert dets[64 - k][1] == pytest.approx(-dets[k][1])


@pytest.mark.parametrize("contour", [ContourSpec(radius=1.0), ContourSpec(u_nodes=15),
                                     ContourSpec(u_nodes=8)])
def test_bad_contours_rejected(twotime_service, contour):
    with pytest.raises(ContourError):
        twotime_service.evaluate_contour(lambda u: 1.0, contour)


def test_result_outside_unit_interval_is_an_accuracy_error(twotime_service, origin_params):
    value, dets, _ = twotime_service.evaluate_contour(lambda u: 2.0 + 0j, CONTOUR)
    with pytest.raises(AccuracyError):
        twotime_service._result(value, "K", origin_params, CONTOUR, {}, dets, 0.0)


@pytest.mark.parametrize("use_symmetry", [True, False])
def test_residue_flags_determinants_without_conjugate_symmetry(twotime_service, use_symmetry):
    # real on u = +-2 but det(conj u) != conj det(u) elsewhere
    value, _, residue = twotime_service.evaluate_contour(lambda u: 0.5 + 0.01j * (u - 4.0 / u),
                                                         CONTOUR, use_symmetry)
    assert residue > 1e-3
    if use_symmetry:
        assert abs(value.imag) < 1e-12


def test_residue_reaches_the_result(twotime_service, origin_params):
    value, dets, residue = twotime_service.evaluate_contour(
        lambda u: 0.5 + 0.01j * (u - 4.0 / u), CONTOUR, use_symmetry=True)
    with pytest.raises(AccuracyError):
        twotime_service._result(value, "K", origin_params, CONTOUR, {}, dets, 0.0, residue)


def test_alpha_inverse_transform_swaps_roles(shifted_params):
    dual = alpha_inverse_transform(shifted_params.with_delta(2.0))
    assert dual.alpha == pytest.approx(1.0 / shifted_params.alpha)
    assert dual.xi1 == pytest.approx(shifted_params.delta_xi)
    assert dual.eta1 == pytest.approx(shifted_params.delta_eta)
    assert dual.delta_xi == pytest.approx(shifted_params.xi1)
    assert dual.delta_eta == pytest.approx(shifted_params.eta1)
    assert dual.xi2 == pytest.approx(shifted_params.xi2)
    assert dual.eta2 == pytest.approx(shifted_params.eta2)
    assert dual.delta == pytest.approx(2.0 / shifted_params.alpha)


def test_alpha_inverse_transform_is_an_involution():
    params = params_from_scaled(-0.5, 0.2, 0.4, 0.1, 1.5)
    twice = alpha_inverse_transform(alpha_inverse_transform(params))
    assert twice.alpha == pytest.approx(params.alpha)
    assert twice.xi1 == pytest.approx(params.xi1)
    assert twice.eta1 == pytest.approx(params.eta1)


def test_marginal_check_requires_large_level(twotime_service, origin_params):
    with pytest.raises(ParameterDomainError):
        twotime_service.marginal_check(origin_params, large_xi=3.0)


def test_marginal_check_direction(twotime_service, origin_params):
    with pytest.raises(ParameterDomainError):
        twotime_service.marginal_check(origin_params, direction="third")


@pytest.mark.slow
@pytest.mark.parametrize("form", ["K", "Q"])
def test_unit_u_determinant_is_tracy_widom(twotime_service, shifted_params, form):
    value, reference = twotime_service.unit_u_determinant(shifted_params, form)
    assert value == pytest.approx(reference, abs=1e-6)


@pytest.mark.slow
def test_k_form_value_lies_within_frechet_bounds(twotime_service, origin_params):
    result = twotime_service.eval_k_form(origin_params)
    f2 = tracy_widom_f2(0.0)
    assert result.imag_residue < 1e-6
    assert 2 * f2 - 1 - 1e-6 <= result.value <= f2 + 1e-6
    assert result.form == "K"
    assert len(result.determinants) == 64


@pytest.mark.slow
def test_k_form_independent_of_contour_radius(twotime_service, origin_params):
    small = twotime_service.eval_k_form(origin_params, ContourSpec(radius=1.5, u_nodes=64))
    large = twotime_service.eval_k_form(origin_params, ContourSpec(radius=2.5, u_nodes=64))
    assert small.value == pytest.approx(large.value, abs=1e-8)


@pytest.mark.slow
def test_k_and_q_forms_agree(twotime_service, shifted_params):
    k_value = twotime_service.eval_k_form(shifted_params).value
    q_value = twotime_service.eval_q_form(shifted_params).value
    assert k_value == pytest.approx(q_value, abs=1e-6)


@pytest.mark.slow
@pytest.mark.parametrize("alpha", [0.75, 1.5])
def test_duality(twotime_service, alpha):
    params = params_from_scaled(-0.5, 0.2, 0.4, 0.1, alpha)
    direct = twotime_service.eval_k_form(params).value
    dual = twotime_service.eval_dual_k_form(params).value
    assert direct == pytest.approx(dual, abs=1e-6)


@pytest.mark.slow
def test_marginal_matches_tracy_widom(twotime_service):
    check = twotime_service.marginal_check(params_from_scaled(-1.0, 0.5, 0.0, 0.0, 1.0), "first")
    assert check.gap < 1e-3


@pytest.mark.slow
def test_sweep_is_monotone_in_both_levels():
    frame = TwoTimeService(max_workers=2).sweep([-1.0, 0.5], [-1.0, 0.5])
    grid = frame.set_index(["xi1", "xi2"])["value"]
    assert grid[(0.5, 0.5)] >= grid[(-1.0, 0.5)] - 1e-6
    assert grid[(0.5, 0.5)] >= grid[(0.5, -1.0)] - 1e-6
    assert set(frame.columns) >= {"xi1", "xi2", "alpha", "form", "value", "imag_residue"}


def test_sweep_forwards_grid_overrides(monkeypatch):
    service = TwoTimeService(max_workers=1)
    seen = []

    def fake_eval(params, contour=None, L=None, nodes=None, delta_margin=None):
        seen.append((L, nodes, delta_margin))
        return SimpleNamespace(params=params, value=0.5, imag_residue=0.0,
                               grid={"L": L, "nodes": nodes})

    monkeypatch.setattr(service, "eval_q_form", fake_eval)
    frame = service.sweep([0.0, 1.0], [0.5], form="Q", L=12.0, nodes=40, delta_margin=2.0)
    assert seen == [(12.0, 40, 2.0)] * 2
    assert (frame["L"] == 12.0).all()
    assert (frame["nodes"] == 40).all()
