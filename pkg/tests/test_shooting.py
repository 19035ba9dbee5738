import numpy as np
import pytest

from frontflux.errors import ParameterError, SingularIntegrationError, StepFailureError
from frontflux.profiles import ProfileSource
from frontflux.series import build_series
from frontflux.shooting import ShootConfig, integrate_from_front, shoot_alpha
from frontflux.similarity import FluxConvention, cauchy_quadratic_profile

PG = FluxConvention.POWER_GRADIENT


def test_linear_profile_origin_values():
    prof = integrate_from_front(1, 1, 1.0)
    assert prof.f_values[0] == pytest.approx(1.0, abs=1e-8)
    assert prof.df_values[0] == pytest.approx(-1.0, abs=1e-8)
    assert prof.source is ProfileSource.SHOOTING
    assert prof.thetas[-1] == 1.0 and prof.f_values[-1] == 0.0


def test_cauchy_quadratic_recovered():
    prof = integrate_from_front(2, -0.5, 1.0)
    exact = cauchy_quadratic_profile(2, 1.0)
    assert np.max(np.abs(prof.f_values - exact.f(prof.thetas))) < 1e-8


def test_matches_high_order_series():
    prof = integrate_from_front(1, 1 / 3, 1.4819)
    series = build_series(1, 1 / 3, 1.4819, 16)
    assert np.max(np.abs(prof.f_values - series.f(prof.thetas))) < 1e-3


def test_shoot_alpha_exact_case():
    alpha, prof, report = shoot_alpha(1, 1)
    assert alpha == pytest.approx(1.0, abs=1e-7)
    assert report.method == "shooting"
    assert abs(report.residual_at_root) < 1e-7
    assert prof.alpha == alpha


def test_shoot_alpha_power_gradient():
    alpha, _, report = shoot_alpha(1, 1 / 3, ShootConfig(convention="power-gradient"))
    assert report.convention is PG
    assert alpha == pytest.approx(1.1762, abs=1e-3)


def test_seed_offset_insensitivity():
    a1, _, _ = shoot_alpha(1, 1 / 3, ShootConfig(seed_offset_fraction=0.01))
    a2, _, _ = shoot_alpha(1, 1 / 3, ShootConfig(seed_offset_fraction=0.005))
    assert abs(a1 - a2) < 1e-6


def test_step_tolerance_insensitivity():
    loose = integrate_from_front(1, 1 / 3, 1.48, ShootConfig(step_tolerance=1e-8))
    tight = integrate_from_front(1, 1 / 3, 1.48, ShootConfig(step_tolerance=1e-11))
    assert abs(loose.f_values[0] - tight.f_values[0]) < 1e-7


@pytest.mark.parametrize("n, m", [(1, 0.0), (1, 1 / 3), (2, 0.5), (0.5, 2.0), (4, 3.0)])
def test_profiles_monotone_for_nonnegative_m(n, m):
    prof = integrate_from_front(n, m, 1.0)
    assert np.all(np.diff(prof.f_values) <= 1e-12)
    assert np.all(prof.f_values >= 0)


def test_singular_integration_detected():
    # below the Cauchy branch the curve bends down and touches zero before the origin
    with pytest.raises(SingularIntegrationError):
        integrate_from_front(1, -0.5, 1.0)


def test_step_failure_reported():
    with pytest.raises(StepFailureError):
        integrate_from_front(1, -0.6, 1.0)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(seed_offset_fraction=0.0),
        dict(seed_offset_fraction=0.5),
        dict(seed_order=0),
        dict(step_tolerance=-1.0),
        dict(samples=50),
        dict(convention="nope"),
    ],
)
def test_config_validation(kwargs):
    with pytest.raises(ParameterError):
        ShootConfig(**kwargs)


def test_sample_count():
    assert len(integrate_from_front(1, 1, 1.0, ShootConfig(samples=250))) == 250
