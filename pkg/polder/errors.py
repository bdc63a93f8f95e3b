"""Jerarquía de excepciones del paquete."""


class PolderError(Exception):
    """Error base de polder."""


class InvalidArgumentError(PolderError, ValueError):
    """Precondición violada por los argumentos de una operación."""


class ConvergenceError(PolderError):
    """
    La cuadratura no alcanzó la tolerancia pedida.

    Args:
        message: Descripción del fallo
        partial: Mejor estimación disponible (QuadResult) o None
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class ExtrapolationError(PolderError):
    """La extrapolación η → 0 no es fiable."""


class ConfigError(PolderError):
    """Configuración de barrido inválida."""


class ExportError(PolderError):
    """Fallo de escritura al exportar resultados."""

    def __init__(self, message, path=None):
        super().__init__(f"{message} ({path})" if path else message)
        self.path = path
