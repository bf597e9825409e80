from types import SimpleNamespace

import numpy as np
import pytest

from domain.scaling import params_from_scaled
from services import verification_service
from services.twotime_service import TwoTimeService
from services.verification_service import (
    LIMIT_SMOKE_TIMES,
    MIN_FINITE_MC_SAMPLES,
    MIN_LIMIT_SMOKE_SAMPLES,
    VerificationService,
)


class FixedLimit:
    def eval_k_form(self, params, *args, **kwargs):
        return SimpleNamespace(value=0.4)


def test_airy_ode_check_passes():
    details = VerificationService(FixedLimit()).check_airy_ode()
    assert details["passed"]
    assert details["max_residual"] < 1e-8


def test_finite_vs_mc_uses_sample_floor(monkeypatch):
    seen = []

    def fake_mc(q, target, samples, seed):
        seen.append(samples)
        return SimpleNamespace(value=0.5, std_error=1e-3)

    monkeypatch.setattr(verification_service, "finite_two_point",
                        lambda case: SimpleNamespace(value=0.5))
    monkeypatch.setattr(verification_service, "mc_point_probability", fake_mc)
    details = VerificationService(FixedLimit(), mc_samples=1000).check_finite_vs_mc()
    assert details["passed"]
    assert seen == [MIN_FINITE_MC_SAMPLES] * 3


def test_limit_smoke_uses_sample_floor_and_every_scale(monkeypatch):
    seen = []

    def fake_cdf(q, T, t1, t2, eta1, eta2, xi1_values, xi2_values, samples, seed):
        seen.append((T, samples))
        return [SimpleNamespace(estimate=SimpleNamespace(value=0.4 + 1.0 / T, std_error=1e-3))]

    monkeypatch.setattr(verification_service, "mc_joint_cdf", fake_cdf)
    details = VerificationService(FixedLimit(), mc_samples=500).check_limit_smoke()
    assert details["passed"]
    assert seen == [(T, MIN_LIMIT_SMOKE_SAMPLES) for T in LIMIT_SMOKE_TIMES]
    assert LIMIT_SMOKE_TIMES == (50, 100, 200)


def test_limit_smoke_fails_when_gap_grows(monkeypatch):
    monkeypatch.setattr(verification_service, "mc_joint_cdf",
                        lambda *args: [SimpleNamespace(estimate=SimpleNamespace(
                            value=0.4 + args[1] / 1000.0, std_error=1e-4))])
    assert not VerificationService(FixedLimit()).check_limit_smoke()["passed"]


@pytest.mark.slow
def test_value_independent_of_delta_margin(twotime_service):
    params = params_from_scaled(-0.5, 0.2, 0.4, 0.1, 1.0)
    narrow = twotime_service.eval_k_form(params, delta_margin=1.0).value
    wide = twotime_service.eval_k_form(params, delta_margin=2.0).value
    assert narrow == pytest.approx(wide, abs=1e-6)


@pytest.mark.slow
def test_value_independent_of_grid_cutoff(twotime_service):
    params = params_from_scaled(-0.5, 0.2, 0.4, 0.1, 1.0)
    short = twotime_service.eval_k_form(params, L=10.0).value
    long = twotime_service.eval_k_form(params, L=12.0).value
    assert short == pytest.approx(long, abs=1e-6)


@pytest.mark.slow
def test_sweep_is_monotone_on_five_by_five_grid():
    levels = [-2.0, -1.0, 0.0, 1.0, 2.0]
    frame = TwoTimeService(max_workers=4).sweep(levels, levels)
    table = frame.pivot(index="xi1", columns="xi2", values="value").to_numpy()
    assert (np.diff(table, axis=0) >= -1e-6).all()
    assert (np.diff(table, axis=1) >= -1e-6).all()
    assert ((table >= -1e-6) & (table <= 1 + 1e-6)).all()


@pytest.mark.slow
def test_simulation_approaches_the_limit(twotime_service):
    details = VerificationService(twotime_service, seed=7).check_limit_smoke()
    assert details["passed"], details


@pytest.mark.slow
def test_exact_finite_probabilities_match_simulation(twotime_service):
    details = VerificationService(twotime_service, seed=11).check_finite_vs_mc()
    assert details["passed"], details
    assert details["samples"] >= MIN_FINITE_MC_SAMPLES
