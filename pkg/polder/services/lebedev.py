"""Reglas de Lebedev para promedios sobre la esfera unidad."""
from functools import lru_cache
from itertools import permutations, product
import math

import numpy as np

from polder.errors import InvalidArgumentError


def _orbit(base):
    # Todas las permutaciones y cambios de signo de un punto (grupo octaédrico)
    points = set()
    for perm in permutations(base):
        for signs in product((1.0, -1.0), repeat=3):
            points.add(tuple(round(s * v, 15) + 0.0 for s, v in zip(signs, perm)))
    return sorted(points)


def _a1():
    return _orbit((1.0, 0.0, 0.0))


def _a3():
    a = 1.0 / math.sqrt(3.0)
    return _orbit((a, a, a))


def _b(a):
    return _orbit((a, a, math.sqrt(1.0 - 2.0 * a * a)))


def _c(a):
    return _orbit((a, math.sqrt(1.0 - a * a), 0.0))


# (generador de la órbita, peso); los pesos suman 1
LEBEDEV_110 = (
    (_a1, 0.3828270494937162e-2),
    (_a3, 0.9793737512487512e-2),
    (lambda: _b(0.1851156353447362), 0.8211737283191111e-2),
    (lambda: _b(0.6904210483822922), 0.9942814891178103e-2),
    (lambda: _b(0.3956894730559419), 0.9595471336070963e-2),
    (lambda: _c(0.4783690288121502), 0.9694996361663028e-2),
)

RULES = {110: LEBEDEV_110}


@lru_cache(maxsize=None)
def lebedev_grid(order=110):
    """
    Puntos y pesos de una regla de Lebedev.

    Args:
        order: Número de puntos (solo 110, exacta hasta grado 17)

    Returns:
        tuple: (puntos (N, 3), pesos (N,)) con Σ pesos = 1
    """
    if order not in RULES:
        raise InvalidArgumentError(f"Regla de Lebedev no disponible: {order}")
    points, weights = [], []
    for generator, weight in RULES[order]:
        orbit = generator()
        points.extend(orbit)
        weights.extend([weight] * len(orbit))
    points = np.array(points)
    weights = np.array(weights)
    if len(points) != order:
        raise RuntimeError(f"La regla de Lebedev generó {len(points)} puntos en lugar de {order}")
    points.setflags(write=False)
    weights.setflags(write=False)
    return points, weights


def sphere_average(func, order=110):
    """
    Promedio (1/4π)∫dΩ f(r̂) con la regla de Lebedev.

    Args:
        func: Función de un array (N, 3) de direcciones que devuelve (N,)
        order: Número de puntos de la regla
    """
    points, weights = lebedev_grid(order)
    return float(np.dot(weights, func(points)))
