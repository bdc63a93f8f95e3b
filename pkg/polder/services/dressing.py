import logging
import math

import numpy as np

from polder.errors import InvalidArgumentError
from polder.models.modes import DressedState, TRANSVERSE_TOL

logger = logging.getLogger(__name__)


def coupling_epsilon(mode, params, volume):
    """
    Acoplamiento multipolar ε = −sqrt(2π ω_k / V)·(ê·d) de un modo.

    Args:
        mode: Modo (k, j)
        params: ModelParams con el dipolo y c
        volume: Volumen de cuantización V

    Returns:
        float: ε real
    """
    if not volume > 0:
        raise InvalidArgumentError(f"El volumen debe ser positivo, recibido {volume}")
    k = np.asarray(mode.wavevector)
    e = np.asarray(mode.polarization_vector)
    if abs(np.dot(e, k)) > TRANSVERSE_TOL * np.linalg.norm(k):
        raise InvalidArgumentError("El modo no es transversal")
    omega_k = mode.omega(params.light_speed)
    return -math.sqrt(2.0 * math.pi * omega_k / volume) * float(np.dot(e, params.dipole_vector))


def dressed_amplitudes(params, modes):
    """
    Amplitudes del estado vestido a segundo orden en ε.

    Args:
        params: ModelParams
        modes: ModeSet no vacío

    Returns:
        DressedState: amplitudes del fundamental, de un fotón y de pares ordenados
    """
    if len(modes) == 0:
        raise InvalidArgumentError("El conjunto de modos está vacío")

    mode_list = list(modes)
    eps = np.array([coupling_epsilon(m, params, modes.volume) for m in mode_list])
    omegas = np.array([m.omega(params.light_speed) for m in mode_list])

    one_photon = eps / (params.omega0 + omegas)
    ground = 1.0 - 0.5 * float(np.sum(one_photon ** 2))

    # C_mn = −ε_m ε_n / ((ω₀ + ω_m)(ω_m + ω_n)), pares ordenados
    two_photon = -np.outer(one_photon, eps) / (omegas[:, None] + omegas[None, :])

    logger.debug(f"Estado vestido con {len(mode_list)} modos, ε_max = {np.max(np.abs(eps)):.3g}")

    return DressedState(
        amp_ground=ground,
        amp_one_photon={m: float(b) for m, b in zip(mode_list, one_photon)},
        amp_two_photon={
            (m, n): float(two_photon[i, j])
            for i, m in enumerate(mode_list)
            for j, n in enumerate(mode_list)
        },
    )


def state_norm(state):
    """
    Norma ⟨g|g⟩ hasta cuarto orden en las amplitudes.

    Con la convención a†a†|0⟩ el par ordenado (m, n) solapa con (m, n) y
    con (n, m), de ahí el término C_mn (C_mn + C_nm).
    """
    norm = state.amp_ground ** 2
    norm += sum(b * b for b in state.amp_one_photon.values())
    pairs = state.amp_two_photon
    for (m, n), c_mn in pairs.items():
        norm += c_mn * (c_mn + pairs.get((n, m), 0.0))
    return norm
