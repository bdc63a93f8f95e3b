from datetime import datetime, timezone
import pytz

from polder.config import Config


def format_float(value, digits=Config.CSV_DIGITS):
    """
    Formatea un número real con `digits` cifras significativas.

    Con 17 cifras el texto se vuelve a leer sin pérdida (float64).

    Args:
        value: Número a formatear (None se escribe vacío)
        digits: Cifras significativas

    Returns:
        str: Representación textual
    """
    if value is None:
        return ''
    return f"{float(value):.{digits}g}"


def format_flag(value):
    """Formatea un booleano como 'true'/'false'"""
    return 'true' if value else 'false'


def format_datetime(value=None):
    """
    Formatea una fecha y hora en UTC (ISO 8601).

    Args:
        value: Un objeto datetime (naive se interpreta como UTC) o None para ahora

    Returns:
        str: Fecha y hora en UTC
    """
    if value is None:
        value = datetime.now(timezone.utc)

    # Las fechas sin zona horaria se consideran UTC
    if value.tzinfo is None:
        value = pytz.utc.localize(value)

    return value.astimezone(pytz.utc).strftime('%Y-%m-%dT%H:%M:%SZ')
