import pytest

from apps.oracle.models import Extrapolation, OracleEstimate, SweepConfig


def test_default_grid_comes_from_settings(settings):
    settings.LPSENS_ORACLE_ALPHAS = [0.1, 0.01]

    assert SweepConfig().alphas == (0.1, 0.01)


def test_default_extrapolation_is_richardson():
    assert SweepConfig(alphas=(1e-2, 1e-3)).extrapolation == Extrapolation.RICHARDSON


def test_extrapolation_accepts_its_name():
    assert SweepConfig(alphas=(1e-2,), extrapolation='none').extrapolation == Extrapolation.NONE


@pytest.mark.parametrize('alphas', [(), (1e-2, 0), (1e-2, -1e-3), (1e-3, 1e-2), (1e-3, 1e-3)])
def test_invalid_grids(alphas):
    with pytest.raises(ValueError):
        SweepConfig(alphas=alphas)


def test_small_grid_is_allowed_on_rationals():
    assert SweepConfig(alphas=(1e-6, 1e-9), backend='rational').alphas == (1e-6, 1e-9)


def test_estimate_unpacks_into_value_and_residual():
    estimate, residual, quotients = OracleEstimate(2.0, 0.1, (2.1, 2.01))

    assert (estimate, residual) == (2.0, 0.1)
    assert quotients == (2.1, 2.01)
