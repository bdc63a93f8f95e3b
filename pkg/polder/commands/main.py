import copy
import functools
import json
import logging

import click
import numpy as np

from polder.custom_filters import format_float
from polder.errors import (
    ConfigError, ConvergenceError, ExportError, ExtrapolationError, InvalidArgumentError, PolderError,
)
from polder.models.params import ModelParams, MollifierSpec, RegulatorSpec
from polder.models.sweep import ENGINES, FORMATS, SweepConfig
from polder.services.certify import certify_against_oracle, default_certification_points
from polder.services.closedform import CHANNELS, coefficient_table, front_peak, matched_mollifier
from polder.services.exporter import export, output_path, write_report
from polder.services.quad_oracle import oracle_calibration
from polder.services.sweep import run_sweep, sweep_points

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERICAL = 2
EXIT_IO = 3

EXIT_CODES = (
    (ExportError, EXIT_IO),
    (ConvergenceError, EXIT_NUMERICAL),
    (ExtrapolationError, EXIT_NUMERICAL),
    (ConfigError, EXIT_CONFIG),
    (InvalidArgumentError, EXIT_CONFIG),
)


def _exit_code(error):
    for kind, code in EXIT_CODES:
        if isinstance(error, kind):
            return code
    return EXIT_NUMERICAL


def handle_errors(command):
    """Traduce las excepciones del paquete a códigos de salida"""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            return command(*args, **kwargs)
        except PolderError as e:
            logger.error(str(e))
            click.echo(f"Error: {e}", err=True)
            ctx.exit(_exit_code(e))

    return wrapper


def sweep_options(command):
    """Opciones comunes de sweep y certify (mismos nombres que los campos de SweepConfig)"""
    options = [
        click.option('--config', 'config_path', type=click.Path(dir_okay=False), help='Documento JSON con la configuración.'),
        click.option('--engine', type=click.Choice(ENGINES), help='Motor de evaluación.'),
        click.option('--eta', type=float, help='Ancho η del mollifier y del regulador.'),
        click.option('--mollifier', type=click.Choice(('lorentzian', 'gaussian')), help='Familia del mollifier.'),
        click.option('--r-min', type=float),
        click.option('--r-max', type=float),
        click.option('--r-count', type=int),
        click.option('--r-log', is_flag=True, default=None, help='Espaciado logarítmico en r.'),
        click.option('--t', 't_values', help='Tiempos separados por comas, p. ej. 30,36.'),
        click.option('--delta-omega0', type=float, help='Desplazamiento Δω₀ de la frecuencia.'),
        click.option('--alpha', type=float, help='Polarizabilidad estática α del átomo de prueba.'),
        click.option('--output', type=click.Path(dir_okay=False), help='Fichero de salida.'),
        click.option('--format', 'fmt', type=click.Choice(FORMATS), help='Formato de salida.'),
        click.option('--threads', type=int, help='Hilos del pool de evaluación.'),
        click.option('--allow-near-zone', is_flag=True, default=None, help='Permite ρ < 10 marcando las filas.'),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def _parse_times(text):
    try:
        return [float(value) for value in text.split(',') if value.strip()]
    except ValueError as e:
        raise ConfigError(f"Lista de tiempos inválida '{text}'") from e


def _load_document(path):
    try:
        with open(path, encoding='utf-8') as handle:
            return json.load(handle)
    except OSError as e:
        raise ConfigError(f"No se pudo leer la configuración {path}: {e.strerror or str(e)}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"La configuración {path} no es JSON válido: {e}") from e


def _merge(base, overrides):
    merged = copy.deepcopy(base)
    for key, value in overrides.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            if key == 'regulator' and 'eta' in value and 'k_max' not in value:
                merged[key]['k_max'] = None
            merged[key].update(value)
        else:
            merged[key] = value
    return merged


def build_sweep_config(app_config, config_path=None, engine=None, eta=None, mollifier=None,
                       r_min=None, r_max=None, r_count=None, r_log=None, t_values=None,
                       delta_omega0=None, alpha=None, output=None, fmt=None, threads=None,
                       allow_near_zone=None):
    """
    Combina valores por defecto, el documento JSON y las opciones de la línea de comandos.

    Returns:
        SweepConfig

    Raises:
        ConfigError: Si el resultado no es una configuración válida
    """
    defaults = SweepConfig(
        mollifier=MollifierSpec(app_config.DEFAULT_MOLLIFIER, app_config.DEFAULT_ETA),
        regulator=RegulatorSpec(eta=app_config.DEFAULT_ETA),
        threads=app_config.THREADS,
    ).to_dict()
    data = _merge(defaults, _load_document(config_path)) if config_path else defaults

    overrides = {}
    if engine is not None:
        overrides['engine'] = engine
    if eta is not None:
        overrides['mollifier'] = {'width': eta}
        overrides['regulator'] = {'eta': eta}
    if mollifier is not None:
        overrides.setdefault('mollifier', {})['family'] = mollifier
    flat = {'r_min': r_min, 'r_max': r_max, 'r_count': r_count, 'output': output,
            'format': fmt, 'threads': threads}
    overrides.update({key: value for key, value in flat.items() if value is not None})
    if r_log:
        overrides['r_spacing'] = 'log'
    if allow_near_zone:
        overrides['allow_near_zone'] = True
    if t_values is not None:
        overrides['t_values'] = _parse_times(t_values)
    params = {}
    if delta_omega0 is not None:
        params['delta_omega0'] = delta_omega0
    if alpha is not None:
        params['alpha_test'] = alpha
    if params:
        overrides['params'] = params

    return SweepConfig.from_dict(_merge(data, overrides))


@click.command('sweep', help='Barrido de perfiles, potencial y fuerza sobre (r, t).')
@sweep_options
@click.pass_context
@handle_errors
def sweep(ctx, config_path, engine, eta, mollifier, r_min, r_max, r_count, r_log, t_values,
          delta_omega0, alpha, output, fmt, threads, allow_near_zone):
    app_config = ctx.obj['config']
    config = build_sweep_config(
        app_config, config_path, engine, eta, mollifier, r_min, r_max, r_count, r_log, t_values,
        delta_omega0, alpha, output, fmt, threads, allow_near_zone)
    grid = run_sweep(config)
    path = output_path(config.output, 'sweep', config.engine, config.mollifier.family,
                       config.mollifier.width, config.format)
    export(grid, config.format, path)
    click.echo(f"{len(grid)} filas escritas en {path}")

    failed = [row for row in grid.rows if row.error]
    if failed:
        click.echo(f"{len(failed)} fila(s) con fallo numérico", err=True)
        ctx.exit(EXIT_NUMERICAL)


@click.command('certify', help='Certifica los perfiles de forma cerrada frente al oráculo de cuadratura.')
@sweep_options
@click.option('--tolerance', type=float, default=0.05, show_default=True, help='Desviación relativa admitida.')
@click.pass_context
@handle_errors
def certify(ctx, config_path, engine, eta, mollifier, r_min, r_max, r_count, r_log, t_values,
            delta_omega0, alpha, output, fmt, threads, allow_near_zone, tolerance):
    app_config = ctx.obj['config']
    config = build_sweep_config(
        app_config, config_path, engine, eta, mollifier, r_min, r_max, r_count, r_log, t_values,
        delta_omega0, alpha, output, fmt, threads, allow_near_zone)
    spec = matched_mollifier(config.regulator)
    if config_path is None and t_values is None:
        points = default_certification_points(config.params)
    else:
        points = sweep_points(config)

    report = certify_against_oracle(points, config.params, spec, config.regulator, tolerance)
    for point in report.points:
        verdict = {True: 'OK', False: 'FALLO', None: '--'}[point.passed]
        click.echo(f"r={format_float(point.r, 6):>8} t={format_float(point.t, 6):>8} "
                   f"{point.region:<10} {verdict:<5} {point.note}")
    ratios = report.static_ratios
    click.echo(f"Cociente estático magnético/eléctrico: oráculo sin calibrar {ratios['raw']:.6g}, "
               f"forma cerrada {ratios['closed_form']:.6g}")
    summary = report.summary()
    click.echo(f"Resultado: {'APROBADO' if summary['passed'] else 'SUSPENSO'} "
               f"({summary['checked']} comprobados, {summary['failed']} fallidos)")

    if output:
        write_report(report, output)
    if not report.passed:
        ctx.exit(EXIT_NUMERICAL)


@click.command('coeffs', help='Imprime la tabla exacta de coeficientes de los perfiles.')
@click.option('--raw', is_flag=True, help='Incluye la calibración del oráculo de cuadratura.')
@click.option('--format', 'fmt', type=click.Choice(('text', 'json')), default='text', show_default=True)
@handle_errors
def coeffs(raw, fmt):
    tables = {channel: coefficient_table(channel) for channel in CHANNELS}
    if fmt == 'json':
        document = {channel: table.to_dict() for channel, table in tables.items()}
        if raw:
            document['calibration'] = oracle_calibration()
        click.echo(json.dumps(document, indent=2, sort_keys=True))
        return

    click.echo('Perfil = signo·Δω₀·K·Σ cᵢ·Dᵢ(r − ct)/r^pᵢ,  K = c|d|²/(24π²ω₀²)')
    click.echo(f"{'canal':<10} {'signo':>5}  " + '  '.join(f"{name:>7}" for name in
                                                       ('1−Θ', 'δ', "δ′", 'δ″', 'δ‴', 'δ⁽⁴⁾')))
    for channel, table in tables.items():
        values = '  '.join(f"{str(c):>7}" for c in table.coefficients)
        click.echo(f"{channel:<10} {table.sign:>+5d}  {values}")
    click.echo('potencias r: ' + ', '.join(str(p) for p in tables['electric'].powers))
    if raw:
        click.echo('')
        click.echo('Calibración del oráculo (coeficiente estático en unidades de Δω₀K/r⁷):')
        for channel, row in oracle_calibration().items():
            click.echo(f"{channel:<10} bruto {row['raw']:.10g}  forma cerrada {row['closed_form']:g}  "
                       f"factor {row['factor']:.10g}")


@click.command('front', help='Pico del perfil cerca del frente r = ct y su escalado con η.')
@click.option('--r', 'radius', type=float, default=12.0, show_default=True)
@click.option('--eta', 'etas', type=float, multiple=True, help='Anchos η (repetible).')
@click.option('--channel', type=click.Choice(CHANNELS), default='total', show_default=True)
@click.option('--mollifier', type=click.Choice(('lorentzian', 'gaussian')), default='lorentzian', show_default=True)
@click.option('--delta-omega0', type=float, default=0.01, show_default=True)
@handle_errors
def front(radius, etas, channel, mollifier, delta_omega0):
    etas = etas or (0.04, 0.02, 0.01)
    if len(etas) < 2:
        raise InvalidArgumentError('Se necesitan al menos dos valores de η para el exponente')
    params = ModelParams(delta_omega0=delta_omega0)
    peaks = []
    for eta in etas:
        x_peak, magnitude = front_peak(radius, params, MollifierSpec(mollifier, eta), channel)
        peaks.append(magnitude)
        click.echo(f"η={eta:<8g} x_pico={x_peak:+.6g}  |pico|={magnitude:.10g}")
    slope = np.polyfit(np.log(etas), np.log(peaks), 1)[0]
    click.echo(f"exponente log-log ({channel}): {slope:.4f}")
