import math

import numpy as np
import pytest

from polder.errors import InvalidArgumentError
from polder.models import Mode, ModelParams, ModeSet
from polder.services.dressing import coupling_epsilon, dressed_amplitudes, state_norm


def test_coupling_vanishes_for_wavevector_along_dipole(params):
    modes = ModeSet.from_wavevectors([(0.0, 0.0, 0.7)], volume=10.0)
    for mode in modes:
        assert coupling_epsilon(mode, params, modes.volume) == 0.0


def test_coupling_direct_substitution(params):
    mode = Mode((1.0, 0.0, 0.0), 1, (0.0, 0.0, 1.0))
    assert coupling_epsilon(mode, params, 2 * math.pi) == pytest.approx(-1.0, abs=1e-15)


def test_polarization_sum_matches_transverse_projector():
    rng = np.random.default_rng(3)
    for _ in range(5):
        k = rng.normal(size=3)
        d = rng.normal(size=3)
        params = ModelParams(dipole=tuple(d))
        modes = ModeSet.from_wavevectors([k], volume=7.0)
        total = sum(coupling_epsilon(m, params, modes.volume) ** 2 for m in modes)
        k_hat = k / np.linalg.norm(k)
        expected = 2 * math.pi * np.linalg.norm(k) / 7.0 * (d @ d - (k_hat @ d) ** 2)
        np.testing.assert_allclose(total, expected, rtol=1e-12)


def test_polarization_sum_invariant_under_dyad_rotation():
    params = ModelParams(dipole=(0.3, -1.2, 0.5))
    k = (0.4, 0.9, -0.2)
    reference = sum(coupling_epsilon(m, params, 3.0) ** 2 for m in ModeSet.from_wavevectors([k], 3.0))
    for angle in (0.3, 1.1, 2.9):
        rotated = ModeSet.from_wavevectors([k], 3.0, dyad_angle=angle)
        total = sum(coupling_epsilon(m, params, 3.0) ** 2 for m in rotated)
        assert abs(total - reference) <= 1e-12 * reference


def test_non_positive_volume_rejected(params):
    mode = Mode((1.0, 0.0, 0.0), 1, (0.0, 0.0, 1.0))
    with pytest.raises(InvalidArgumentError):
        coupling_epsilon(mode, params, 0.0)
    with pytest.raises(InvalidArgumentError):
        ModeSet.from_wavevectors([(1.0, 0.0, 0.0)], volume=-1.0)


def test_mode_must_be_transverse():
    with pytest.raises(InvalidArgumentError):
        Mode((1.0, 0.0, 0.0), 1, (1.0, 0.0, 0.0))


def test_mode_set_requires_both_polarizations():
    mode = Mode((1.0, 0.0, 0.0), 1, (0.0, 0.0, 1.0))
    with pytest.raises(InvalidArgumentError):
        ModeSet((mode,), 1.0)


def test_decoupled_atom(params):
    modes = ModeSet.from_wavevectors([(0.0, 0.0, k) for k in (0.2, 0.5, 1.3)], volume=5.0)
    state = dressed_amplitudes(params, modes)
    assert state.amp_ground == 1.0
    assert all(b == 0.0 for b in state.amp_one_photon.values())
    assert all(c == 0.0 for c in state.amp_two_photon.values())
    assert state_norm(state) == 1.0


@pytest.fixture
def single_mode():
    # k̂ = ẑ da ê₁ = x̂; con d = −x̂, ω_k = 1 y V = 200π resulta ε₁ = 0.1
    params = ModelParams(dipole=(-1.0, 0.0, 0.0))
    modes = ModeSet.from_wavevectors([(0.0, 0.0, 1.0)], volume=200 * math.pi)
    return params, modes


def test_single_mode_amplitudes(single_mode):
    params, modes = single_mode
    first = modes.modes[0]
    assert coupling_epsilon(first, params, modes.volume) == pytest.approx(0.1, rel=1e-14)
    state = dressed_amplitudes(params, modes)
    assert state.amp_one_photon[first] == pytest.approx(0.05, rel=1e-14)
    assert state.amp_ground == pytest.approx(0.99875, rel=1e-14)
    assert state.amp_two_photon[(first, first)] < 0


def test_single_mode_norm(single_mode):
    params, modes = single_mode
    norm = state_norm(dressed_amplitudes(params, modes))
    assert abs(norm - 1.0) <= 5e-4
    assert norm - 1.0 == pytest.approx(1.40625e-5, rel=1e-9)


def test_halving_coupling_reduces_norm_deviation_sixteenfold(single_mode):
    params, modes = single_mode
    quarter_volume = ModeSet(modes.modes, 4 * modes.volume)
    big = state_norm(dressed_amplitudes(params, modes)) - 1.0
    small = state_norm(dressed_amplitudes(params, quarter_volume)) - 1.0
    assert 12 <= big / small <= 20


def test_norm_scales_as_fourth_power_on_fifty_modes():
    params = ModelParams(dipole=(0.2, 0.5, 0.8))
    base = ModeSet.random(25, volume=1e3, seed=11)
    assert len(base) == 50
    eps_max, deviations = [], []
    for volume in (1e3, 4e3, 1.6e4):
        modes = ModeSet(base.modes, volume)
        eps_max.append(max(abs(coupling_epsilon(m, params, volume)) for m in modes))
        deviations.append(abs(state_norm(dressed_amplitudes(params, modes)) - 1.0))
    slope = np.polyfit(np.log(eps_max), np.log(deviations), 1)[0]
    assert slope == pytest.approx(4.0, abs=0.2)


def test_amplitudes_are_real(single_mode):
    params, modes = single_mode
    state = dressed_amplitudes(params, modes)
    values = [state.amp_ground, *state.amp_one_photon.values(), *state.amp_two_photon.values()]
    assert all(isinstance(v, float) for v in values)


def test_perturbative_violation_warns():
    with pytest.warns(RuntimeWarning):
        ModelParams(delta_omega0=0.5)
