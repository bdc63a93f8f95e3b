import csv
import json
import logging
import os

from slugify import slugify

from polder.config import Config
from polder.custom_filters import format_flag, format_float
from polder.errors import ExportError
from polder.models.results import ProfileGrid, ProfileRow

logger = logging.getLogger(__name__)

CSV_HEADER = ('r', 't', 'eta', 'electric', 'magnetic', 'total', 'delta_v', 'force', 'valid', 'engine')
FLOAT_COLUMNS = ('r', 't', 'eta', 'electric', 'magnetic', 'total', 'delta_v', 'force', 'deviation')


def default_filename(command, engine, mollifier, eta, fmt):
    """Nombre de fichero legible a partir de la ejecución, p. ej. sweep-closedform-lorentzian-eta-0-1.csv"""
    return f"{slugify(f'{command} {engine} {mollifier} eta {eta:g}')}.{fmt}"


class ProfileExporter:
    """Exporta un ProfileGrid a CSV o JSON"""

    def __init__(self, grid):
        """
        Args:
            grid: ProfileGrid a exportar
        """
        self.grid = grid

    @property
    def header(self):
        # La columna de desviación solo existe cuando se comparan ambos motores
        if self.grid.engine == 'both':
            return CSV_HEADER + ('deviation',)
        return CSV_HEADER

    def _csv_row(self, row):
        values = []
        for column in self.header:
            value = getattr(row, column)
            if column == 'valid':
                values.append(format_flag(value))
            elif column in FLOAT_COLUMNS:
                values.append(format_float(value))
            else:
                values.append(value)
        return values

    def to_csv(self, path):
        with open(path, 'w', newline='', encoding='utf-8') as handle:
            writer = csv.writer(handle, lineterminator='\n')
            writer.writerow(self.header)
            for row in self.grid.rows:
                writer.writerow(self._csv_row(row))

    def to_json(self, path):
        document = self.grid.to_dict()
        with open(path, 'w', encoding='utf-8') as handle:
            json.dump(document, handle, indent=2, sort_keys=True)
            handle.write('\n')

    def export(self, path, fmt='csv'):
        """
        Escribe el grid en `path`.

        Returns:
            str: Ruta escrita

        Raises:
            ExportError: Ante cualquier fallo de E/S, con la ruta en el mensaje
        """
        writers = {'csv': self.to_csv, 'json': self.to_json}
        if fmt not in writers:
            raise ExportError(f"Formato de exportación desconocido: {fmt}", path)
        try:
            directory = os.path.dirname(os.path.abspath(path))
            os.makedirs(directory, exist_ok=True)
            writers[fmt](path)
        except OSError as e:
            raise ExportError(f"No se pudo escribir el fichero: {e.strerror or str(e)}", path) from e
        logger.info(f"Resultados exportados a {path} ({fmt}, {len(self.grid)} filas)")
        return path


def export(grid, fmt, path):
    """Exporta un ProfileGrid (atajo sobre ProfileExporter)"""
    return ProfileExporter(grid).export(path, fmt)


def _parse_float(text):
    return float(text) if text != '' else None


def read_csv(path):
    """
    Lee un CSV exportado y reconstruye las filas.

    Returns:
        ProfileGrid sin metadatos
    """
    try:
        with open(path, newline='', encoding='utf-8') as handle:
            records = list(csv.DictReader(handle))
    except OSError as e:
        raise ExportError(f"No se pudo leer el fichero: {e.strerror or str(e)}", path) from e
    rows = []
    for record in records:
        rows.append(ProfileRow(
            r=_parse_float(record['r']),
            t=_parse_float(record['t']),
            eta=_parse_float(record['eta']),
            electric=_parse_float(record['electric']),
            magnetic=_parse_float(record['magnetic']),
            total=_parse_float(record['total']),
            delta_v=_parse_float(record['delta_v']),
            force=_parse_float(record['force']),
            valid=record['valid'] == 'true',
            engine=record['engine'],
            deviation=_parse_float(record.get('deviation', '') or ''),
        ))
    return ProfileGrid(rows=rows)


def write_report(report, path):
    """Escribe un informe de certificación en JSON"""
    try:
        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
        with open(path, 'w', encoding='utf-8') as handle:
            json.dump(report.to_dict(), handle, indent=2, sort_keys=True)
            handle.write('\n')
    except OSError as e:
        raise ExportError(f"No se pudo escribir el informe: {e.strerror or str(e)}", path) from e
    logger.info(f"Informe de certificación escrito en {path}")
    return path


def output_path(path, command, engine, mollifier, eta, fmt):
    """Ruta de salida: la indicada o una por defecto dentro de Config.OUTPUT_DIR"""
    if path:
        return path
    return os.path.join(Config.OUTPUT_DIR, default_filename(command, engine, mollifier, eta, fmt))
