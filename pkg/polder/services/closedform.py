import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from polder.errors import InvalidArgumentError
from polder.models.params import MollifierSpec
from polder.models.results import EnergyDensityDelta
from polder.services.mollifiers import THETA, mollified_distribution, step_complement

logger = logging.getLogger(__name__)

RADIAL_POWERS = (7, 6, 5, 4, 3, 2)
CHANNELS = ('electric', 'magnetic', 'total')


@dataclass(frozen=True)
class ProfileCoefficients:
    """
    Coeficientes exactos del perfil de zona lejana.

    El perfil es sign·Δω₀K·[c_theta(1 − Θ)/r⁷ + c_delta·δ/r⁶ + c_d1·δ′/r⁵
    + c_d2·δ″/r⁴ + c_d3·δ‴/r³ + c_d4·δ⁽⁴⁾/r²], todas evaluadas en r − ct.
    """
    channel: str
    sign: int
    coefficients: tuple
    powers: tuple = RADIAL_POWERS

    def signed(self):
        return tuple(self.sign * c for c in self.coefficients)

    def __add__(self, other):
        # El resultado lleva el signo dentro de los coeficientes
        summed = tuple(a + b for a, b in zip(self.signed(), other.signed()))
        return ProfileCoefficients(f"{self.channel}+{other.channel}", 1, summed, self.powers)

    @property
    def static(self):
        return self.coefficients[0]

    def to_dict(self):
        return {
            'channel': self.channel,
            'sign': self.sign,
            'coefficients': [str(c) for c in self.coefficients],
            'powers': list(self.powers),
        }


ELECTRIC = ProfileCoefficients(
    'electric', -1,
    (Fraction(13, 2), Fraction(13, 2), Fraction(-5, 2), Fraction(1, 3), Fraction(0), Fraction(1, 30)),
)
MAGNETIC = ProfileCoefficients(
    'magnetic', 1,
    (Fraction(133, 2), Fraction(133, 2), Fraction(-29), Fraction(41, 6), Fraction(-5, 6), Fraction(1, 30)),
)


def total_coefficients():
    """Tabla del total eléctrico + magnético, sumada en aritmética exacta"""
    total = ELECTRIC + MAGNETIC
    return ProfileCoefficients('total', 1, total.coefficients)


def coefficient_table(channel):
    if channel == 'electric':
        return ELECTRIC
    if channel == 'magnetic':
        return MAGNETIC
    if channel == 'total':
        return total_coefficients()
    raise InvalidArgumentError(f"Canal desconocido: {channel}")


def profile(r, t, params, spec, coefficients):
    """
    Evalúa un perfil mollificado en arrays de (r, t).

    Args:
        r, t: Escalares o arrays compatibles
        params: ModelParams
        spec: MollifierSpec
        coefficients: ProfileCoefficients

    Returns:
        ndarray o float
    """
    r = np.asarray(r, dtype=float)
    t = np.asarray(t, dtype=float)
    x = r - params.light_speed * t
    terms = [step_complement(x, spec)]
    terms.extend(mollified_distribution(n, x, spec) for n in range(5))
    value = 0.0
    for c, p, term in zip(coefficients.coefficients, coefficients.powers, terms):
        if c:
            value = value + float(c) * term / r ** p
    result = coefficients.sign * params.delta_omega0 * params.profile_scale * value
    return float(result) if np.ndim(result) == 0 else result


def static_value(r, params, channel='electric'):
    """Término estático sign·Δω₀K·c_theta/r⁷ dentro del cono"""
    table = coefficient_table(channel)
    return table.sign * params.delta_omega0 * params.profile_scale * float(table.static) / r ** 7


def _flag_far_zone(point, params):
    valid = point.is_far_zone(params)
    if not valid:
        logger.warning(f"Punto r = {point.r} fuera de la zona lejana: resultado marcado como no válido")
    return valid


def closedform_electric(point, params, spec):
    """Densidad eléctrica promediada en la esfera, perfil de zona lejana"""
    return profile(point.r, point.t, params, spec, ELECTRIC)


def closedform_magnetic(point, params, spec):
    """Densidad magnética promediada en la esfera, perfil de zona lejana"""
    return profile(point.r, point.t, params, spec, MAGNETIC)


def total_energy_density(point, params, spec):
    """
    Densidades eléctrica, magnética y total en un punto.

    Returns:
        EnergyDensityDelta con engine='closedform'
    """
    valid = _flag_far_zone(point, params)
    return EnergyDensityDelta(
        electric=closedform_electric(point, params, spec),
        magnetic=closedform_magnetic(point, params, spec),
        point=point,
        engine='closedform',
        valid=valid,
        metadata={'mollifier': spec.to_dict()},
    )


def matched_mollifier(regulator):
    """Mollifier lorentziano emparejado con el regulador e^{−ηk}"""
    return MollifierSpec('lorentzian', regulator.eta)


def front_peak(r, params, spec, channel='electric', window=10.0, samples=4001):
    """
    Localiza el pico del perfil cerca del frente r = ct a r fijo.

    Recorre x = r − ct en [−window·η, window·η].

    Returns:
        tuple: (x del pico, |densidad| en el pico)
    """
    table = coefficient_table(channel)
    x = np.linspace(-window * spec.width, window * spec.width, samples)
    t = (r - x) / params.light_speed
    values = np.abs(profile(r, t, params, spec, table))
    i = int(np.argmax(values))
    return float(x[i]), float(values[i])


def track_front(times, params, spec, channel='total', window=10.0, samples=4001):
    """
    Radio del pico del perfil para cada tiempo (el frente viaja a velocidad c).

    Returns:
        ndarray: radio del pico por cada t
    """
    table = coefficient_table(channel)
    radii = []
    for t in times:
        front = params.light_speed * t
        r = front + np.linspace(-window * spec.width, window * spec.width, samples)
        r = r[r > 0]
        values = np.abs(profile(r, t, params, spec, table))
        radii.append(float(r[int(np.argmax(values))]))
    return np.array(radii)
