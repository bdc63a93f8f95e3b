from dataclasses import dataclass
from types import MappingProxyType

import numpy as np

from polder.errors import InvalidArgumentError

TRANSVERSE_TOL = 1e-10


def transverse_dyad(k_hat, angle=0.0):
    """
    Construye la díada ortonormal de polarizaciones transversales a k̂.

    La semilla de Gram-Schmidt es el eje cartesiano menos alineado con k̂,
    así la construcción es determinista. `angle` gira la díada alrededor de k̂.

    Args:
        k_hat: Dirección de propagación (no necesita estar normalizada)
        angle: Rotación de la díada en el plano transversal (radianes)

    Returns:
        tuple: (ê₁, ê₂) como arrays de numpy
    """
    k_hat = np.asarray(k_hat, dtype=float)
    k_hat = k_hat / np.linalg.norm(k_hat)
    seed = np.zeros(3)
    seed[int(np.argmin(np.abs(k_hat)))] = 1.0
    e1 = seed - np.dot(seed, k_hat) * k_hat
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(k_hat, e1)
    if angle:
        c, s = np.cos(angle), np.sin(angle)
        e1, e2 = c * e1 + s * e2, -s * e1 + c * e2
    return e1, e2


@dataclass(frozen=True)
class Mode:
    wavevector: tuple
    polarization_index: int
    polarization_vector: tuple

    def __post_init__(self):
        object.__setattr__(self, 'wavevector', tuple(float(v) for v in self.wavevector))
        object.__setattr__(self, 'polarization_vector', tuple(float(v) for v in self.polarization_vector))
        if self.polarization_index not in (1, 2):
            raise InvalidArgumentError(f"Índice de polarización inválido: {self.polarization_index}")
        k = np.asarray(self.wavevector)
        e = np.asarray(self.polarization_vector)
        k_norm = np.linalg.norm(k)
        if k_norm == 0:
            raise InvalidArgumentError("El vector de onda no puede ser nulo")
        if abs(np.linalg.norm(e) - 1.0) > TRANSVERSE_TOL:
            raise InvalidArgumentError("El vector de polarización debe ser unitario")
        if abs(np.dot(e, k)) > TRANSVERSE_TOL * k_norm:
            raise InvalidArgumentError("El vector de polarización no es transversal a k")

    @property
    def k(self):
        return float(np.linalg.norm(self.wavevector))

    def omega(self, light_speed=1.0):
        """Relación de dispersión ω_k = c|k|"""
        return light_speed * self.k


@dataclass(frozen=True)
class ModeSet:
    modes: tuple
    volume: float

    def __post_init__(self):
        object.__setattr__(self, 'modes', tuple(self.modes))
        if not self.volume > 0:
            raise InvalidArgumentError(f"El volumen de cuantización debe ser positivo, recibido {self.volume}")
        self._check_complete()

    def _check_complete(self):
        # Cada k debe aparecer con sus dos polarizaciones ortonormales
        by_k = {}
        for mode in self.modes:
            by_k.setdefault(mode.wavevector, {})[mode.polarization_index] = mode
        for wavevector, pols in by_k.items():
            if set(pols) != {1, 2}:
                raise InvalidArgumentError(f"Faltan polarizaciones para k = {wavevector}")
            if abs(np.dot(pols[1].polarization_vector, pols[2].polarization_vector)) > TRANSVERSE_TOL:
                raise InvalidArgumentError(f"Polarizaciones no ortogonales para k = {wavevector}")

    def __len__(self):
        return len(self.modes)

    def __iter__(self):
        return iter(self.modes)

    @classmethod
    def from_wavevectors(cls, wavevectors, volume, dyad_angle=0.0):
        """
        Crea un conjunto completo con las dos polarizaciones de cada k.

        Args:
            wavevectors: Secuencia de vectores de onda
            volume: Volumen de cuantización V
            dyad_angle: Rotación común de las díadas transversales
        """
        modes = []
        for wavevector in wavevectors:
            e1, e2 = transverse_dyad(wavevector, dyad_angle)
            modes.append(Mode(tuple(wavevector), 1, tuple(e1)))
            modes.append(Mode(tuple(wavevector), 2, tuple(e2)))
        return cls(tuple(modes), volume)

    @classmethod
    def random(cls, n_wavevectors, volume, seed=0, k_range=(0.1, 2.0), dyad_angle=0.0):
        """Vectores de onda aleatorios reproducibles (2·n_wavevectors modos)"""
        rng = np.random.default_rng(seed)
        directions = rng.normal(size=(n_wavevectors, 3))
        directions /= np.linalg.norm(directions, axis=1)[:, None]
        magnitudes = rng.uniform(*k_range, size=n_wavevectors)
        return cls.from_wavevectors(directions * magnitudes[:, None], volume, dyad_angle)


@dataclass(frozen=True)
class DressedState:
    """
    Amplitudes del estado fundamental vestido a segundo orden.

    amp_two_photon guarda pares ordenados (m, n) con el coeficiente sin
    simetrizar; la amplitud física de un par es la suma de ambos órdenes.
    """
    amp_ground: float
    amp_one_photon: dict
    amp_two_photon: dict

    def __post_init__(self):
        object.__setattr__(self, 'amp_one_photon', MappingProxyType(dict(self.amp_one_photon)))
        object.__setattr__(self, 'amp_two_photon', MappingProxyType(dict(self.amp_two_photon)))

    def physical_pair_amplitude(self, mode_a, mode_b):
        """Amplitud del par {a, b} sumando ambos órdenes"""
        forward = self.amp_two_photon.get((mode_a, mode_b), 0.0)
        if mode_a == mode_b:
            return forward
        return forward + self.amp_two_photon.get((mode_b, mode_a), 0.0)
