import logging
from dataclasses import dataclass

import numpy as np

from polder.errors import ExtrapolationError

logger = logging.getLogger(__name__)

NOISE_FRACTION = 0.5
ROUNDING_FLOOR = 1e-10


@dataclass(frozen=True)
class Extrapolation:
    value: float
    est_error: float
    order: int


def _value_of(item):
    # Acepta escalares o QuadResult
    return float(getattr(item, 'value', item))


def _limit_at_zero(etas, values):
    """Valor en η = 0 del polinomio interpolante (sistema de Vandermonde)"""
    vandermonde = np.vander(etas, increasing=True)
    return float(np.linalg.solve(vandermonde, values)[0])


def extrapolate_with_error(values):
    """
    Extrapolación polinómica en η hacia η = 0.

    Con n puntos se ajusta el polinomio de grado n−1; el error es la
    diferencia con el de grado n−2 construido con los n−1 η más pequeños.

    Args:
        values: Secuencia de pares (η, valor) con η estrictamente monótono

    Returns:
        Extrapolation

    Raises:
        ExtrapolationError: Si hay menos de 3 puntos, η no es monótono o
            la secuencia es demasiado ruidosa
    """
    pairs = [(float(eta), _value_of(v)) for eta, v in values]
    if len(pairs) < 3:
        raise ExtrapolationError(f"Se necesitan al menos 3 valores de η, recibidos {len(pairs)}")
    etas = np.array([eta for eta, _ in pairs])
    data = np.array([v for _, v in pairs])
    steps = np.diff(etas)
    if np.any(etas <= 0) or not (np.all(steps > 0) or np.all(steps < 0)):
        raise ExtrapolationError(f"Los valores de η deben ser positivos y monótonos: {etas.tolist()}")
    if not np.all(np.isfinite(data)):
        raise ExtrapolationError("La secuencia contiene valores no finitos")

    order = np.argsort(etas)
    etas, data = etas[order], data[order]
    best = _limit_at_zero(etas, data)
    lower = _limit_at_zero(etas[:-1], data[:-1])
    error = abs(best - lower)

    spread = float(np.ptp(data))
    floor = ROUNDING_FLOOR * float(np.max(np.abs(data)))
    if error > NOISE_FRACTION * spread + floor:
        raise ExtrapolationError(
            f"Extrapolación no fiable: error {error:.3g} frente a una variación de {spread:.3g}")

    logger.debug(f"Extrapolación η → 0 con {len(etas)} puntos: {best:.6g} ± {error:.2g}")
    return Extrapolation(value=best, est_error=error, order=len(etas) - 1)


def eta_extrapolate(values):
    """Valor extrapolado a η = 0 (ver extrapolate_with_error)"""
    return extrapolate_with_error(values).value
