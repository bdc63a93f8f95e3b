import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor

from polder.config import Config
from polder.custom_filters import format_datetime
from polder.errors import ConvergenceError, PolderError
from polder.models.params import SpacetimePoint
from polder.models.results import ProfileGrid, ProfileRow
from polder.services.closedform import total_energy_density
from polder.services.potential import POTENTIAL_NOTICE, cp_force, cp_potential_delta
from polder.services.quad_oracle import quadrature_energy_density

logger = logging.getLogger(__name__)


def _deviation(quad, closed):
    deviations = []
    for q, c in ((quad.electric, closed.electric), (quad.magnetic, closed.magnetic)):
        deviations.append(abs(q - c) / abs(c) if c else abs(q))
    return max(deviations)


def _closedform_row(point, config):
    density = total_energy_density(point, config.params, config.mollifier)
    potential = cp_potential_delta(point, config.params, config.mollifier)
    return density, potential.delta_v, potential.force


def _quadrature_row(point, config):
    density = quadrature_energy_density(point, config.params, config.regulator)
    delta_v = -4.0 * math.pi * config.params.alpha_test * density.electric
    force = None
    if config.quad_force:
        force = cp_force(point, config.params, config.mollifier, engine='quadrature',
                         reg=config.regulator).force
    return density, delta_v, force


def evaluate_row(point, config):
    """
    Evalúa una fila del barrido con el motor configurado.

    Los errores numéricos no detienen el barrido: la fila queda marcada
    como no válida con el mensaje en `error`.

    Returns:
        ProfileRow
    """
    engine = config.engine
    eta = config.regulator.eta if engine == 'quadrature' else config.mollifier.width
    far_zone = point.is_far_zone(config.params)
    try:
        deviation = None
        if engine == 'quadrature':
            density, delta_v, force = _quadrature_row(point, config)
        else:
            density, delta_v, force = _closedform_row(point, config)
            if engine == 'both':
                quad, _, _ = _quadrature_row(point, config.with_changes(quad_force=False))
                deviation = _deviation(quad, density)
        return ProfileRow(
            r=point.r, t=point.t, eta=eta,
            electric=density.electric, magnetic=density.magnetic,
            total=density.electric + density.magnetic,
            delta_v=delta_v, force=force,
            valid=far_zone, engine=engine, deviation=deviation,
        )
    except ConvergenceError as e:
        logger.error(f"Fila r = {point.r}, t = {point.t}: {str(e)}")
        partial = e.partial
        return ProfileRow(
            r=point.r, t=point.t, eta=eta,
            electric=None, magnetic=None, total=None, delta_v=None, force=None,
            valid=False, engine=engine,
            error=f"{str(e)} (valor parcial {partial.value:.6g})" if partial else str(e),
        )
    except PolderError as e:
        logger.error(f"Fila r = {point.r}, t = {point.t}: {str(e)}")
        return ProfileRow(
            r=point.r, t=point.t, eta=eta,
            electric=None, magnetic=None, total=None, delta_v=None, force=None,
            valid=False, engine=engine, error=str(e),
        )


def sweep_points(config):
    """Puntos del barrido en orden r-mayor y después t"""
    return [SpacetimePoint(r, t) for r in config.r_grid() for t in config.t_values]


def run_sweep(config):
    """
    Ejecuta el barrido completo.

    Las filas se evalúan en un pool de hilos acotado y se ensamblan en
    orden determinista (r-mayor, después t).

    Args:
        config: SweepConfig validada

    Returns:
        ProfileGrid
    """
    points = sweep_points(config)
    logger.info(f"Iniciando barrido: {len(points)} puntos, motor {config.engine}, {config.threads} hilo(s)")
    config.params.check_perturbative()

    started = time.perf_counter()
    if config.threads == 1:
        rows = [evaluate_row(point, config) for point in points]
    else:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            rows = list(pool.map(lambda p: evaluate_row(p, config), points))
    wall_time = time.perf_counter() - started

    failed = sum(1 for row in rows if row.error)
    flagged = sum(1 for row in rows if not row.valid)
    if failed:
        logger.warning(f"Barrido con {failed} fila(s) fallida(s)")
    logger.info(f"Barrido completado en {wall_time:.2f} s ({flagged} fila(s) marcadas)")

    return ProfileGrid(rows=rows, metadata=build_metadata(config, wall_time))


def build_metadata(config, wall_time=None):
    """Bloque de metadatos: configuración completa y datos de la ejecución"""
    params = config.params
    return {
        'config': config.to_dict(),
        'tool_version': Config.TOOL_VERSION,
        'generated_at': format_datetime(),
        'wall_time': wall_time,
        'units': 'reducidas (hbar = 1; rho = omega0 r / c, tau = omega0 t)',
        'notice': POTENTIAL_NOTICE,
        'profile_scale': params.profile_scale,
        'perturbative_ratio': params.perturbative_ratio,
        'source_polarizability': params.source_polarizability,
        'si_annotation': config.si_annotation,
    }
