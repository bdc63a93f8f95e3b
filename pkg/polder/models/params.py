import logging
import math
import warnings
from dataclasses import dataclass, field, replace, asdict

import numpy as np

from polder.config import Config
from polder.errors import InvalidArgumentError

logger = logging.getLogger(__name__)

MOLLIFIER_FAMILIES = ('lorentzian', 'gaussian')


@dataclass(frozen=True)
class ModelParams:
    """
    Parámetros del átomo fuente y del campo en unidades reducidas (ħ = 1).

    Por defecto ω₀ = c = |d| = 1, de modo que las distancias se leen como
    ρ = ω₀r/c y los tiempos como τ = ω₀t.
    """
    omega0: float = 1.0
    delta_omega0: float = 0.01
    dipole: tuple = (0.0, 0.0, 1.0)
    light_speed: float = 1.0
    alpha_test: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, 'dipole', tuple(float(v) for v in self.dipole))
        if len(self.dipole) != 3:
            raise InvalidArgumentError(f"El dipolo debe tener 3 componentes, recibido {self.dipole}")
        if not self.omega0 > 0:
            raise InvalidArgumentError(f"omega0 debe ser positivo, recibido {self.omega0}")
        if not self.light_speed > 0:
            raise InvalidArgumentError(f"light_speed debe ser positivo, recibido {self.light_speed}")
        if not self.alpha_test >= 0:
            raise InvalidArgumentError(f"alpha_test no puede ser negativo, recibido {self.alpha_test}")
        self.check_perturbative()

    @property
    def dipole_vector(self):
        return np.asarray(self.dipole, dtype=float)

    @property
    def dipole_sq(self):
        """|d|²"""
        return float(np.dot(self.dipole, self.dipole))

    @property
    def profile_scale(self):
        """Escala K = c|d|²/(24π²ω₀²) común a los perfiles de zona lejana"""
        return self.light_speed * self.dipole_sq / (24.0 * math.pi ** 2 * self.omega0 ** 2)

    @property
    def perturbative_ratio(self):
        return abs(self.delta_omega0) / self.omega0

    @property
    def source_polarizability(self):
        """Orden de magnitud α ∼ |d|²/ω₀ de la polarizabilidad estática del átomo fuente"""
        return self.dipole_sq / self.omega0

    def check_perturbative(self, limit=Config.PERTURBATIVE_LIMIT):
        """
        Avisa (sin fallar) si |Δω₀|/ω₀ no es pequeño frente a uno.

        Returns:
            bool: True si el desplazamiento es perturbativo
        """
        ratio = self.perturbative_ratio
        if ratio >= limit:
            message = f"|Δω₀|/ω₀ = {ratio:.3g} fuera del régimen perturbativo (< {limit})"
            logger.warning(message)
            warnings.warn(message, RuntimeWarning, stacklevel=3)
            return False
        return True

    def reduced(self, r, t):
        """Devuelve (ρ, τ) = (ω₀r/c, ω₀t)"""
        return self.omega0 * r / self.light_speed, self.omega0 * t

    def far_zone_radius(self, rho_min=Config.FAR_ZONE_RHO):
        return rho_min * self.light_speed / self.omega0

    def with_changes(self, **changes):
        return replace(self, **changes)

    def to_dict(self):
        data = asdict(self)
        data['dipole'] = list(self.dipole)
        return data

    @classmethod
    def from_dict(cls, data):
        return cls(**data)


@dataclass(frozen=True)
class SpacetimePoint:
    """Distancia radial r y tiempo t (unidades reducidas) tras el cambio súbito"""
    r: float
    t: float

    def __post_init__(self):
        object.__setattr__(self, 'r', float(self.r))
        object.__setattr__(self, 't', float(self.t))
        if not self.r > 0:
            raise InvalidArgumentError(f"r debe ser positivo, recibido {self.r}")
        if not self.t >= 0:
            raise InvalidArgumentError(f"t no puede ser negativo, recibido {self.t}")

    def is_far_zone(self, params, rho_min=Config.FAR_ZONE_RHO):
        """Indicador de validez: ρ = ω₀r/c ≥ rho_min"""
        rho, _ = params.reduced(self.r, self.t)
        return rho >= rho_min

    def front_offset(self, params):
        """r − ct: positivo fuera del cono de luz"""
        return self.r - params.light_speed * self.t

    def to_dict(self):
        return {'r': self.r, 't': self.t}


@dataclass(frozen=True)
class MollifierSpec:
    family: str = 'lorentzian'
    width: float = 0.1

    def __post_init__(self):
        if self.family not in MOLLIFIER_FAMILIES:
            raise InvalidArgumentError(f"Familia de mollifier desconocida: {self.family}")
        if not self.width > 0:
            raise InvalidArgumentError(f"El ancho del mollifier debe ser positivo, recibido {self.width}")
        object.__setattr__(self, 'width', float(self.width))

    def with_width(self, width):
        return replace(self, width=width)

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class RegulatorSpec:
    """
    Regulador exponencial e^{−ηk} de las integrales de modos.

    Las tolerancias son relativas: rel_tol frente al valor calculado y
    abs_tol frente a la escala estática |Δω₀|K/r⁷ del punto.
    """
    eta: float = 0.1
    k_max: float = None
    rel_tol: float = 1e-5
    abs_tol: float = 1e-7
    max_refinements: int = 3

    def __post_init__(self):
        if not self.eta > 0:
            raise InvalidArgumentError(f"eta debe ser positivo, recibido {self.eta}")
        object.__setattr__(self, 'eta', float(self.eta))
        if self.k_max is None:
            object.__setattr__(self, 'k_max', 60.0 / self.eta)
        if self.k_max * self.eta < 40:
            raise InvalidArgumentError(
                f"k_max·eta = {self.k_max * self.eta:.3g} < 40: la cola e^(−ηk) no es despreciable")
        if self.rel_tol <= 0 or self.abs_tol < 0:
            raise InvalidArgumentError("Tolerancias de cuadratura inválidas")

    def with_eta(self, eta):
        """Mismo regulador con otro η (k_max se reescala a 60/η)"""
        return replace(self, eta=eta, k_max=self.k_max * self.eta / eta)

    def to_dict(self):
        return asdict(self)
