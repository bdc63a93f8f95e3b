import math

import numpy as np
from scipy.special import eval_hermitenorm, ndtr

from polder.errors import InvalidArgumentError

THETA = 'theta'
ORDERS = (THETA, 0, 1, 2, 3, 4)

_SQRT_2PI = math.sqrt(2.0 * math.pi)


def _lorentzian(order, x, eta):
    if order == THETA:
        return 0.5 + np.arctan(x / eta) / math.pi
    # δ⁽ⁿ⁾ = ((−1)ⁿ n!/π)·Im[(x − iη)^{−(n+1)}]
    z = (x - 1j * eta) ** (-(order + 1))
    return (-1) ** order * math.factorial(order) / math.pi * z.imag


def _gaussian(order, x, eta):
    u = x / eta
    if order == THETA:
        return ndtr(u)
    # δ⁽ⁿ⁾ = (−1)ⁿ Heₙ(x/η)/ηⁿ · δ
    base = np.exp(-0.5 * u * u) / (eta * _SQRT_2PI)
    return (-1) ** order * eval_hermitenorm(order, u) / eta ** order * base


FAMILIES = {
    'lorentzian': _lorentzian,
    'gaussian': _gaussian,
}


def mollified_distribution(order, x, spec):
    """
    Versión suavizada de Θ(x) o de δ⁽ⁿ⁾(x), n = 0..4.

    Las derivadas son analíticas, nunca diferencias finitas.

    Args:
        order: 'theta' o un entero de 0 a 4
        x: Escalar o array (típicamente r − ct)
        spec: MollifierSpec con la familia y el ancho η

    Returns:
        Mismo tipo que x
    """
    if order not in ORDERS:
        raise InvalidArgumentError(f"Orden de distribución inválido: {order}")
    scalar = np.ndim(x) == 0
    result = FAMILIES[spec.family](order, np.asarray(x, dtype=float), spec.width)
    return float(result) if scalar else result


def step_complement(x, spec):
    """1 − Θ_η(x), evaluado como Θ_η(−x) para conservar precisión en la cola"""
    return mollified_distribution(THETA, -np.asarray(x, dtype=float), spec)
