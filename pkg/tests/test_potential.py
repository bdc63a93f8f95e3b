import math

import numpy as np
import pytest

from polder.errors import InvalidArgumentError
from polder.models import ModelParams, MollifierSpec, SpacetimePoint
from polder.services.closedform import static_value
from polder.services.potential import cp_force, cp_potential_delta, magnetic_interaction_delta

STATIC = SpacetimePoint(20.0, 120.0)


def test_zero_polarizability_gives_no_potential(gaussian):
    params = ModelParams(alpha_test=0.0)
    sample = cp_potential_delta(STATIC, params, gaussian)
    assert sample.delta_v == 0.0
    assert sample.force == 0.0


def test_static_potential(params, gaussian):
    sample = cp_potential_delta(STATIC, params, gaussian)
    expected = -4 * math.pi * params.alpha_test * static_value(20.0, params, 'electric')
    assert sample.delta_v == pytest.approx(expected, rel=1e-10)
    assert sample.delta_v > 0
    assert sample.valid
    assert sample.engine == 'closedform'


def test_static_potential_falls_as_seventh_power(params, gaussian):
    radii = np.geomspace(12.0, 40.0, 16)
    values = [cp_potential_delta(SpacetimePoint(r, 120.0), params, gaussian, include_force=False).delta_v
              for r in radii]
    slope = np.polyfit(np.log(radii), np.log(values), 1)[0]
    assert slope == pytest.approx(-7.0, abs=1e-6)


def test_static_force_is_repulsive(params, gaussian):
    sample = cp_potential_delta(STATIC, params, gaussian)
    assert sample.force == pytest.approx(7 * sample.delta_v / STATIC.r, rel=1e-6)
    assert sample.force > 0
    assert sample.force_error < 1e-5 * abs(sample.force)


def test_sign_flips_with_shift(gaussian):
    up = cp_potential_delta(STATIC, ModelParams(delta_omega0=0.01), gaussian)
    down = cp_potential_delta(STATIC, ModelParams(delta_omega0=-0.01), gaussian)
    assert down.delta_v == pytest.approx(-up.delta_v)
    assert down.force == pytest.approx(-up.force)


def test_force_step_limits(params):
    with pytest.raises(InvalidArgumentError):
        cp_force(STATIC, params, MollifierSpec('gaussian', 0.1), step=0.05)
    with pytest.raises(InvalidArgumentError):
        cp_force(SpacetimePoint(12.0, 60.0), params, MollifierSpec('gaussian', 1.0), step=0.2)
    with pytest.raises(InvalidArgumentError):
        cp_force(STATIC, params, MollifierSpec('gaussian', 0.1), step=0.0)


def test_magnetic_interaction(params, gaussian):
    electric = cp_potential_delta(STATIC, params, gaussian, include_force=False).delta_v
    magnetic = magnetic_interaction_delta(STATIC, params, 1.0, gaussian)
    assert magnetic / electric == pytest.approx(-133 / 13, rel=1e-10)
    assert magnetic_interaction_delta(STATIC, params, 0.0, gaussian) == 0.0
    with pytest.raises(InvalidArgumentError):
        magnetic_interaction_delta(STATIC, params, -1.0, gaussian)


def test_quiet_outside_light_cone(params, gaussian):
    sample = cp_potential_delta(SpacetimePoint(20.0, 10.0), params, gaussian)
    assert abs(sample.delta_v) < 1e-30
    assert abs(sample.force) < 1e-30


def test_near_zone_is_flagged(params, gaussian):
    sample = cp_potential_delta(SpacetimePoint(5.0, 30.0), params, gaussian, include_force=False)
    assert not sample.valid


def test_unknown_engine(params, gaussian):
    with pytest.raises(InvalidArgumentError):
        cp_potential_delta(STATIC, params, gaussian, engine='lattice')


@pytest.mark.slow
def test_quadrature_potential(params, lorentzian):
    point = SpacetimePoint(12.0, 36.0)
    sample = cp_potential_delta(point, params, lorentzian, engine='quadrature', include_force=False)
    closed = cp_potential_delta(point, params, lorentzian, include_force=False)
    assert sample.delta_v > 0
    assert sample.delta_v == pytest.approx(closed.delta_v, rel=0.03)
