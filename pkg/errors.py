"""
Excepciones del Sistema NatDist

Cada excepción lleva el código de salida que el CLI devuelve al capturarla.
"""


class NatDistError(Exception):
    """Error base del sistema"""
    exit_code = 1


class ConfigError(NatDistError, ValueError):
    """Parámetros inválidos (ej: pasos < n, longitudes mezcladas)"""


class IndexRangeError(NatDistError, IndexError):
    """Índice fuera del espacio de reglas"""


class EmptySampleError(NatDistError):
    """Ninguna máquina produjo una cadena de la longitud pedida"""


class UndefinedCorrelationError(NatDistError, ValueError):
    """Correlación indefinida: varianza cero o menos de 2 elementos"""


class IncomparableError(NatDistError):
    """Menos de 2 clases compartidas entre dos distribuciones"""


class MissingEstimateError(NatDistError, LookupError):
    """La cadena no fue observada; no hay estimación de K"""


class StorageError(NatDistError, OSError):
    """Archivo ilegible, no escribible o con formato inválido"""
    exit_code = 2


class CapacityError(NatDistError):
    """El espacio de reglas o m! excede la aritmética de la plataforma"""
    exit_code = 3
