import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from polder.errors import InvalidArgumentError
from polder.models.results import KernelValue

NODES_PER_PANEL = 16


@lru_cache(maxsize=None)
def gauss_legendre(n):
    """Nodos y pesos de Gauss-Legendre en [−1, 1] (cacheados por orden)"""
    nodes, weights = np.polynomial.legendre.leggauss(n)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def panel_rule(edges, n):
    """
    Regla compuesta de Gauss-Legendre con n nodos por panel.

    Args:
        edges: Bordes de los paneles (reales, crecientes)
        n: Nodos por panel

    Returns:
        tuple: (nodos, pesos) concatenados panel a panel
    """
    edges = np.asarray(edges, dtype=float)
    x, w = gauss_legendre(n)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def far_zone_kernel(omega_k, omega_kp, t, params):
    """
    Núcleo de zona lejana F = G = (1 − e^{−i(ω_k+ω_k′)t}) / (ω₀²(ω_k+ω_k′)).

    Args:
        omega_k, omega_kp: Frecuencias de los dos modos (> 0)
        t: Tiempo tras el cambio súbito (≥ 0)
        params: ModelParams (solo se usa ω₀)

    Returns:
        KernelValue
    """
    omega_sum = omega_k + omega_kp
    if omega_sum == 0:
        raise InvalidArgumentError("omega_k + omega_kp = 0")
    if t < 0:
        raise InvalidArgumentError(f"t no puede ser negativo, recibido {t}")
    # 1 − e^{−iθ} = 2i·sin(θ/2)·e^{−iθ/2}, sin cancelación para θ pequeño
    half = 0.5 * omega_sum * t
    value = 2j * math.sin(half) * complex(math.cos(half), -math.sin(half))
    return KernelValue(value=value / (params.omega0 ** 2 * omega_sum), omega_sum=omega_sum)


# En zona lejana el núcleo magnético coincide con el eléctrico
far_zone_kernel_magnetic = far_zone_kernel


def kernel_real_part_doubled(omega_sum, t, omega0):
    """2·Re F = 4 sin²(Ωt/2) / (ω₀²Ω), vectorizado"""
    omega_sum = np.asarray(omega_sum, dtype=float)
    return 4.0 * np.sin(0.5 * omega_sum * t) ** 2 / (omega0 ** 2 * omega_sum)


@dataclass(frozen=True)
class TimeQuadrature:
    """
    Nodos t′ (posiblemente complejos) y pesos para ∫₀ᵗ dt′ a lo largo de un camino.

    Con ella (1 − e^{−iΩt})/Ω = i·Σ w·e^{−iΩt′}.
    """
    nodes: np.ndarray
    weights: np.ndarray

    def __len__(self):
        return len(self.nodes)

    @classmethod
    def concatenate(cls, parts):
        parts = list(parts)
        if not parts:
            return cls(np.empty(0, dtype=complex), np.empty(0, dtype=complex))
        return cls(np.concatenate([p.nodes for p in parts]), np.concatenate([p.weights for p in parts]))

    def integrate(self, values):
        return complex(np.sum(self.weights * values))

    def kernel(self, omega_sum, omega0=1.0):
        """Reconstruye F(Ω, t) a partir de la representación temporal"""
        if len(self.nodes) == 0:
            return 0j
        return 1j * self.integrate(np.exp(-1j * omega_sum * self.nodes)) / omega0 ** 2


LEGS = ('down', 'flat', 'up')


@dataclass(frozen=True)
class ContourSegment:
    """
    Tramo del contorno 0 → −i·depth → t − i·depth → t.

    'down' recorre t′ = −iu, 'flat' t′ = u − i·depth y 'up' t′ = t − iu,
    con u entre start y stop.
    """
    leg: str
    start: float
    stop: float
    t: float
    depth: float = 0.0

    @property
    def sigma_min(self):
        """Distancia mínima del tramo al eje real"""
        return self.depth if self.leg == 'flat' else self.start

    def split(self, parts):
        edges = np.linspace(self.start, self.stop, parts + 1)
        return [ContourSegment(self.leg, a, b, self.t, self.depth) for a, b in zip(edges[:-1], edges[1:])]

    def rule(self, n):
        """Cuadratura de Gauss-Legendre de n nodos sobre el tramo"""
        x, w = gauss_legendre(n)
        u = 0.5 * (self.start + self.stop) + 0.5 * (self.stop - self.start) * x
        wu = 0.5 * (self.stop - self.start) * w
        if self.leg == 'down':
            return TimeQuadrature(-1j * u, -1j * wu)
        if self.leg == 'flat':
            return TimeQuadrature(u - 1j * self.depth, wu.astype(complex))
        return TimeQuadrature(self.t - 1j * u, 1j * wu)


def graded_edges(depth, first):
    """Bordes 0, first, 2·first, 4·first, ... hasta depth"""
    edges = [0.0]
    step = first
    while edges[-1] + step < depth:
        edges.append(edges[-1] + step)
        step = edges[-1]
    edges.append(depth)
    return np.array(edges)


def deformed_contour(t, depth, sigma_edges, flat_edges):
    """
    Tramos del contorno en orden: bajada, tramo horizontal y subida.

    Con depth = 0 solo queda el tramo horizontal sobre el eje real.

    Args:
        t: Límite superior (≥ 0)
        depth: Profundidad de la deformación hacia Im t′ < 0
        sigma_edges: Bordes en la dirección imaginaria (de 0 a depth)
        flat_edges: Bordes del tramo horizontal (de 0 a t)

    Returns:
        list de ContourSegment
    """
    flat = [ContourSegment('flat', a, b, t, depth) for a, b in zip(flat_edges[:-1], flat_edges[1:])]
    if depth <= 0:
        return flat
    down = [ContourSegment('down', a, b, t, depth) for a, b in zip(sigma_edges[:-1], sigma_edges[1:])]
    up = [ContourSegment('up', a, b, t, depth) for a, b in zip(sigma_edges[:-1], sigma_edges[1:])]
    return down + flat + up


def kernel_time_representation(omega_sum, t, depth=0.0, nodes_per_panel=NODES_PER_PANEL):
    """
    Cuadratura de la identidad (1 − e^{−iΩt})/Ω = i∫₀ᵗ e^{−iΩt′}dt′.

    Con depth = 0 se integra sobre el eje real con paneles de medio periodo.
    Con depth > 0 el camino se deforma hacia Im t′ < 0:
    0 → −i·depth → t − i·depth → t.

    Args:
        omega_sum: Ω = ω_k + ω_k′
        t: Límite superior (≥ 0)
        depth: Profundidad de la deformación del contorno
        nodes_per_panel: Nodos de Gauss-Legendre por panel

    Returns:
        TimeQuadrature
    """
    if t < 0:
        raise InvalidArgumentError(f"t no puede ser negativo, recibido {t}")
    if t == 0:
        return TimeQuadrature.concatenate([])

    def edges(length):
        n_panels = max(1, math.ceil(abs(omega_sum) * length / math.pi))
        return np.linspace(0.0, length, n_panels + 1)

    sigma_edges = edges(depth) if depth > 0 else None
    segments = deformed_contour(t, depth, sigma_edges, edges(t))
    return TimeQuadrature.concatenate(segment.rule(nodes_per_panel) for segment in segments)
