from dataclasses import dataclass, field, replace

import numpy as np

from polder.config import Config
from polder.errors import ConfigError, InvalidArgumentError
from polder.models.params import ModelParams, MollifierSpec, RegulatorSpec

ENGINES = ('closedform', 'quadrature', 'both')
FORMATS = ('csv', 'json')
SPACINGS = ('linear', 'log')


@dataclass(frozen=True)
class SweepConfig:
    """
    Configuración completa de un barrido sobre (r, t).

    Se serializa como un único documento JSON (to_dict / from_dict); los
    nombres de las opciones de la línea de comandos coinciden con los campos.
    """
    params: ModelParams = field(default_factory=ModelParams)
    r_min: float = 12.0
    r_max: float = 40.0
    r_count: int = 16
    r_spacing: str = 'linear'
    t_values: tuple = (0.0,)
    mollifier: MollifierSpec = field(default_factory=MollifierSpec)
    regulator: RegulatorSpec = field(default_factory=RegulatorSpec)
    engine: str = 'closedform'
    output: str = None
    format: str = 'csv'
    threads: int = 1
    allow_near_zone: bool = False
    quad_force: bool = False
    si_annotation: dict = None

    def __post_init__(self):
        object.__setattr__(self, 't_values', tuple(float(t) for t in self.t_values))
        self.validate()

    def validate(self):
        if self.engine not in ENGINES:
            raise ConfigError(f"Motor desconocido '{self.engine}' (opciones: {', '.join(ENGINES)})")
        if self.format not in FORMATS:
            raise ConfigError(f"Formato desconocido '{self.format}' (opciones: {', '.join(FORMATS)})")
        if self.r_spacing not in SPACINGS:
            raise ConfigError(f"Espaciado desconocido '{self.r_spacing}'")
        if self.r_count < 2:
            raise ConfigError(f"r_count debe ser al menos 2, recibido {self.r_count}")
        if not 0 < self.r_min <= self.r_max:
            raise ConfigError(f"Rango radial inválido [{self.r_min}, {self.r_max}]")
        if not self.t_values:
            raise ConfigError("Se necesita al menos un valor de t")
        if any(t < 0 for t in self.t_values):
            raise ConfigError("Los valores de t no pueden ser negativos")
        if self.threads < 1:
            raise ConfigError(f"threads debe ser al menos 1, recibido {self.threads}")
        rho_min, _ = self.params.reduced(self.r_min, 0.0)
        if rho_min < Config.FAR_ZONE_RHO and not self.allow_near_zone:
            raise ConfigError(
                f"r_min corresponde a ρ = {rho_min:.3g} < {Config.FAR_ZONE_RHO}: "
                f"fuera de la zona lejana (use --allow-near-zone para marcar las filas)")

    def r_grid(self):
        if self.r_spacing == 'log':
            return np.geomspace(self.r_min, self.r_max, self.r_count)
        return np.linspace(self.r_min, self.r_max, self.r_count)

    def with_changes(self, **changes):
        return replace(self, **changes)

    def to_dict(self):
        return {
            'params': self.params.to_dict(),
            'r_min': self.r_min,
            'r_max': self.r_max,
            'r_count': self.r_count,
            'r_spacing': self.r_spacing,
            't_values': list(self.t_values),
            'mollifier': self.mollifier.to_dict(),
            'regulator': self.regulator.to_dict(),
            'engine': self.engine,
            'output': self.output,
            'format': self.format,
            'threads': self.threads,
            'allow_near_zone': self.allow_near_zone,
            'quad_force': self.quad_force,
            'si_annotation': self.si_annotation,
        }

    @classmethod
    def from_dict(cls, data):
        """
        Construye la configuración desde un documento JSON ya decodificado.

        Raises:
            ConfigError: Si faltan tipos válidos o hay campos desconocidos
        """
        data = dict(data)
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"Campos desconocidos en la configuración: {', '.join(sorted(unknown))}")
        try:
            if 'params' in data:
                data['params'] = ModelParams.from_dict(data['params'])
            if 'mollifier' in data:
                data['mollifier'] = MollifierSpec(**data['mollifier'])
            if 'regulator' in data:
                data['regulator'] = RegulatorSpec(**data['regulator'])
            return cls(**data)
        except InvalidArgumentError as e:
            raise ConfigError(f"Configuración inválida: {e}") from e
        except TypeError as e:
            raise ConfigError(f"Configuración mal formada: {e}") from e
