import logging
import math

from polder.errors import InvalidArgumentError
from polder.models.params import RegulatorSpec, SpacetimePoint
from polder.models.results import ForceEstimate, PotentialSample
from polder.services.closedform import closedform_electric, closedform_magnetic
from polder.services.quad_oracle import delta_energy_electric_quad, delta_energy_magnetic_quad

logger = logging.getLogger(__name__)

ENGINES = ('closedform', 'quadrature')
STEP_FRACTION = 20.0  # paso por defecto η/20
MAX_STEP_ETA = 0.25
MAX_STEP_R = 0.01

POTENTIAL_NOTICE = ('delta_v es el CAMBIO del potencial de Casimir-Polder respecto a t < 0; '
                    'el potencial estacionario de fondo no está incluido')


def _regulator(spec, reg):
    return reg if reg is not None else RegulatorSpec(eta=spec.width)


def _density(channel, point, params, spec, engine, reg):
    if engine == 'closedform':
        if channel == 'electric':
            return closedform_electric(point, params, spec)
        return closedform_magnetic(point, params, spec)
    if engine == 'quadrature':
        reg = _regulator(spec, reg)
        if channel == 'electric':
            return delta_energy_electric_quad(point, params, reg).value
        return delta_energy_magnetic_quad(point, params, reg).value
    raise InvalidArgumentError(f"Motor desconocido: {engine}")


def _electric_potential(point, params, spec, engine, reg):
    # V = −½α⟨E²⟩ y δℰ_E = δ⟨E²⟩/8π  ⇒  δV = −4πα·δℰ_E
    if params.alpha_test == 0:
        return 0.0
    return -4.0 * math.pi * params.alpha_test * _density('electric', point, params, spec, engine, reg)


def cp_force(point, params, spec, step=None, engine='closedform', reg=None):
    """
    Fuerza radial −∂(δV)/∂r por diferencias centradas con refinamiento de Richardson.

    D(h) = −(δV(r+h) − δV(r−h))/(2h) y F = (4·D(h/2) − D(h))/3.

    Args:
        point: SpacetimePoint
        params: ModelParams
        spec: MollifierSpec (paso por defecto min(η/20, r/200))
        step: Paso h (≪ η y ≪ r)
        engine: 'closedform' o 'quadrature'
        reg: RegulatorSpec para el motor de cuadratura

    Returns:
        ForceEstimate

    Raises:
        InvalidArgumentError: Si el paso es demasiado grande frente a η o a r
    """
    eta = _regulator(spec, reg).eta if engine == 'quadrature' else spec.width
    if step is None:
        step = min(eta / STEP_FRACTION, 0.5 * MAX_STEP_R * point.r)
    if not step > 0:
        raise InvalidArgumentError(f"El paso debe ser positivo, recibido {step}")
    if step > MAX_STEP_ETA * eta:
        raise InvalidArgumentError(f"Paso {step} demasiado grande frente a η = {eta}")
    if step > MAX_STEP_R * point.r:
        raise InvalidArgumentError(f"Paso {step} demasiado grande frente a r = {point.r}")

    def potential_at(r):
        return _electric_potential(SpacetimePoint(r, point.t), params, spec, engine, reg)

    def central(h):
        return -(potential_at(point.r + h) - potential_at(point.r - h)) / (2.0 * h)

    coarse = central(step)
    fine = central(0.5 * step)
    refined = (4.0 * fine - coarse) / 3.0
    return ForceEstimate(force=refined, est_error=abs(refined - fine), step=step)


def cp_potential_delta(point, params, spec, engine='closedform', reg=None, step=None, include_force=True):
    """
    Cambio del potencial de Casimir-Polder sobre el átomo de prueba.

    Returns:
        PotentialSample con delta_v = −4πα·δℰ_E y, si se pide, la fuerza
    """
    valid = point.is_far_zone(params)
    if not valid:
        logger.warning(f"Potencial en r = {point.r} fuera de la zona lejana")
    delta_v = _electric_potential(point, params, spec, engine, reg)
    force = force_error = None
    if include_force:
        estimate = cp_force(point, params, spec, step, engine, reg)
        force, force_error = estimate.force, estimate.est_error
    return PotentialSample(
        r=point.r, t=point.t, delta_v=delta_v, force=force,
        engine=engine, valid=valid, force_error=force_error,
    )


def magnetic_interaction_delta(point, params, beta, spec, engine='closedform', reg=None):
    """Energía de interacción magnética −4πβ·δℰ_M con la polarizabilidad magnética β"""
    if beta < 0:
        raise InvalidArgumentError(f"La polarizabilidad magnética no puede ser negativa, recibido {beta}")
    if beta == 0:
        return 0.0
    return -4.0 * math.pi * beta * _density('magnetic', point, params, spec, engine, reg)
