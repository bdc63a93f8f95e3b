import logging

from polder.errors import InvalidArgumentError
from polder.models.params import SpacetimePoint
from polder.models.results import CertificationReport, CertifiedPoint
from polder.services.closedform import closedform_electric, closedform_magnetic, static_value
from polder.services.quad_oracle import delta_energy_electric_quad, delta_energy_magnetic_quad, static_ratios

logger = logging.getLogger(__name__)

FRONT_WIDTHS = 2.0     # |r − ct| ≤ 2η: frente, excluido
CHECKED_WIDTHS = 5.0   # |r − ct| ≥ 5η: entra en el veredicto
DEFAULT_TOLERANCE = 0.05
DEVIATION_FLOOR = 1e-3  # fracción de la magnitud estática usada como escala mínima
MONOTONE_SLACK = 1e-3

REGIONS = ('front', 'near_front', 'static', 'causal')


def classify_point(point, params, spec):
    """
    Región de un punto respecto al frente r = ct.

    Returns:
        str: 'front' (|x| ≤ 2η), 'near_front' (2η < |x| < 5η),
            'causal' (x ≥ 5η) o 'static' (x ≤ −5η), con x = r − ct
    """
    x = point.front_offset(params)
    eta = spec.width
    if abs(x) <= FRONT_WIDTHS * eta:
        return 'front'
    if abs(x) < CHECKED_WIDTHS * eta:
        return 'near_front'
    return 'causal' if x > 0 else 'static'


def channel_deviation(quad, closed, static):
    """
    Desviación relativa entre motores en un canal.

    La escala es |closed|, acotada por debajo con DEVIATION_FLOOR·|static|
    para que la comparación siga definida donde el perfil casi se anula.
    """
    return abs(quad - closed) / max(abs(closed), DEVIATION_FLOOR * abs(static))


def _oracle(point, params, reg):
    return (delta_energy_electric_quad(point, params, reg).value,
            delta_energy_magnetic_quad(point, params, reg).value)


def _compare(point, params, spec, reg):
    e_closed = closedform_electric(point, params, spec)
    m_closed = closedform_magnetic(point, params, spec)
    e_quad, m_quad = _oracle(point, params, reg)
    deviation = max(channel_deviation(e_quad, e_closed, static_value(point.r, params, 'electric')),
                    channel_deviation(m_quad, m_closed, static_value(point.r, params, 'magnetic')))
    return (e_closed, e_quad, m_closed, m_quad), deviation


def certify_against_oracle(grid, params, spec, reg, tolerance=DEFAULT_TOLERANCE):
    """
    Certifica los perfiles de forma cerrada frente al oráculo de cuadratura.

    En cada punto con |r − ct| ≥ 5η se comparan ambos motores canal a canal
    con η y con η/2 (mollifier y regulador emparejados). El punto pasa si la
    desviación es ≤ tolerance y no crece al reducir η. Los puntos más cerca
    del frente se informan sin veredicto.

    Args:
        grid: ProfileGrid o secuencia de SpacetimePoint
        params: ModelParams
        spec: MollifierSpec lorentziano con ancho igual a reg.eta
        reg: RegulatorSpec
        tolerance: Desviación relativa admitida

    Returns:
        CertificationReport

    Raises:
        InvalidArgumentError: Si el mollifier no está emparejado con el regulador
        ConvergenceError: Si el oráculo no converge
    """
    if spec.family != 'lorentzian' or abs(spec.width - reg.eta) > 1e-12 * reg.eta:
        raise InvalidArgumentError("La certificación requiere un mollifier lorentziano con ancho η del regulador")

    points = grid.points() if hasattr(grid, 'points') else list(grid)
    refined_spec = spec.with_width(0.5 * spec.width)
    refined_reg = reg.with_eta(0.5 * reg.eta)

    certified = []
    for point in points:
        region = classify_point(point, params, spec)
        (e_closed, e_quad, m_closed, m_quad), deviation = _compare(point, params, spec, reg)

        refined = None
        passed = None
        if region in ('static', 'causal'):
            _, refined = _compare(point, params, refined_spec, refined_reg)
            passed = deviation <= tolerance and refined <= deviation + MONOTONE_SLACK
            note = f"desviación {deviation:.3%} (η), {refined:.3%} (η/2)"
        else:
            note = f"desviación {deviation:.3%}; excluido del veredicto (régimen distribucional)"

        if passed is False:
            logger.warning(f"Certificación fallida en r = {point.r}, t = {point.t}: {note}")
        certified.append(CertifiedPoint(
            r=point.r, t=point.t, region=region,
            electric_closed=e_closed, electric_quad=e_quad,
            magnetic_closed=m_closed, magnetic_quad=m_quad,
            deviation=deviation, deviation_refined=refined,
            passed=passed, note=note,
        ))

    report = CertificationReport(certified, reg.eta, refined_reg.eta, tolerance, static_ratios())
    logger.info(f"Certificación: {report.summary()}")
    return report


def default_certification_points(params, rhos=(12.0, 20.0, 30.0)):
    """Puntos estáticos (τ = 3ρ) y causales (r − ct = ρ/2) para cada ρ"""
    c = params.light_speed
    points = []
    for rho in rhos:
        r = rho * c / params.omega0
        points.append(SpacetimePoint(r, 3.0 * r / c))
        points.append(SpacetimePoint(r, 0.5 * r / c))
    return points
