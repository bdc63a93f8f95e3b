import math

import pytest

from polder.errors import InvalidArgumentError
from polder.models import ModelParams, MollifierSpec, RegulatorSpec, SpacetimePoint


def test_default_params_are_reduced_units():
    params = ModelParams()
    assert params.reduced(12.0, 36.0) == (12.0, 36.0)
    assert params.profile_scale == pytest.approx(1 / (24 * math.pi ** 2))
    assert params.far_zone_radius() == 10.0


@pytest.mark.parametrize('changes', [
    {'omega0': 0.0},
    {'light_speed': -1.0},
    {'alpha_test': -0.5},
    {'dipole': (1.0, 0.0)},
])
def test_invalid_params(changes):
    with pytest.raises(InvalidArgumentError):
        ModelParams(**changes)


def test_large_shift_warns():
    with pytest.warns(RuntimeWarning):
        params = ModelParams(delta_omega0=0.5)
    assert params.perturbative_ratio == 0.5


def test_params_round_trip():
    params = ModelParams(delta_omega0=0.02, dipole=(1, 2, 2))
    assert ModelParams.from_dict(params.to_dict()) == params
    assert params.dipole_sq == 9.0


def test_spacetime_point():
    params = ModelParams()
    point = SpacetimePoint(12, 5)
    assert point.front_offset(params) == 7.0
    assert point.is_far_zone(params)
    assert not SpacetimePoint(9.5, 5.0).is_far_zone(params)
    with pytest.raises(InvalidArgumentError):
        SpacetimePoint(0.0, 1.0)
    with pytest.raises(InvalidArgumentError):
        SpacetimePoint(12.0, -1.0)


def test_regulator_cutoff():
    reg = RegulatorSpec(eta=0.1)
    assert reg.k_max == pytest.approx(600.0)
    assert reg.with_eta(0.05).k_max == pytest.approx(1200.0)
    with pytest.raises(InvalidArgumentError):
        RegulatorSpec(eta=0.1, k_max=100.0)
    with pytest.raises(InvalidArgumentError):
        RegulatorSpec(eta=0.0)


def test_mollifier_width():
    assert MollifierSpec('gaussian', 0.1).with_width(0.05) == MollifierSpec('gaussian', 0.05)
