from dataclasses import dataclass, field, asdict


@dataclass(frozen=True)
class KernelValue:
    value: complex
    omega_sum: float


@dataclass(frozen=True)
class QuadResult:
    """Estimación numérica de una densidad de energía por el oráculo de cuadratura"""
    value: float
    imag_residual: float
    est_error: float
    evaluations: int
    valid: bool = True
    raw_value: float = None
    converged: bool = True

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class EnergyDensityDelta:
    """
    Cambio de las densidades de energía eléctrica y magnética en un punto.

    total es siempre electric + magnetic.
    """
    electric: float
    magnetic: float
    point: object
    engine: str
    valid: bool = True
    electric_imag: float = 0.0
    magnetic_imag: float = 0.0
    metadata: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def total(self):
        return self.electric + self.magnetic

    def to_dict(self):
        return {
            'r': self.point.r,
            't': self.point.t,
            'electric': self.electric,
            'magnetic': self.magnetic,
            'total': self.total,
            'engine': self.engine,
            'valid': self.valid,
            'electric_imag': self.electric_imag,
            'magnetic_imag': self.magnetic_imag,
            'metadata': dict(self.metadata),
        }


@dataclass(frozen=True)
class ForceEstimate:
    force: float
    est_error: float
    step: float


@dataclass(frozen=True)
class PotentialSample:
    """Cambio del potencial de Casimir-Polder respecto a t < 0 y fuerza radial"""
    r: float
    t: float
    delta_v: float
    force: float
    engine: str
    valid: bool = True
    force_error: float = None

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class ProfileRow:
    r: float
    t: float
    eta: float
    electric: float
    magnetic: float
    total: float
    delta_v: float
    force: float
    valid: bool
    engine: str
    deviation: float = None
    error: str = None

    def to_dict(self):
        return asdict(self)


@dataclass
class ProfileGrid:
    """Resultado de un barrido: filas en orden r-mayor y metadatos de la ejecución"""
    rows: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.rows)

    @property
    def engine(self):
        return self.metadata.get('config', {}).get('engine')

    def points(self):
        from polder.models.params import SpacetimePoint
        return [SpacetimePoint(row.r, row.t) for row in self.rows]

    def to_dict(self):
        return {
            'rows': [row.to_dict() for row in self.rows],
            'metadata': self.metadata,
        }


@dataclass(frozen=True)
class CertifiedPoint:
    r: float
    t: float
    region: str
    electric_closed: float
    electric_quad: float
    magnetic_closed: float
    magnetic_quad: float
    deviation: float
    deviation_refined: float = None
    passed: bool = None
    note: str = ''

    def to_dict(self):
        return asdict(self)


@dataclass
class CertificationReport:
    points: list
    eta: float
    eta_refined: float
    tolerance: float
    static_ratios: dict = None

    @property
    def checked(self):
        return [p for p in self.points if p.passed is not None]

    @property
    def passed(self):
        return all(p.passed for p in self.checked)

    def summary(self):
        counts = {}
        for point in self.points:
            counts[point.region] = counts.get(point.region, 0) + 1
        return {
            'passed': self.passed,
            'checked': len(self.checked),
            'failed': sum(1 for p in self.checked if not p.passed),
            'regions': counts,
        }

    def to_dict(self):
        return {
            'eta': self.eta,
            'eta_refined': self.eta_refined,
            'tolerance': self.tolerance,
            'static_ratios': self.static_ratios,
            'summary': self.summary(),
            'points': [p.to_dict() for p in self.points],
        }
