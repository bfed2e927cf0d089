"""common/exceptions/domain_exceptions.py"""

from typing import Any, Dict, Optional


class PamError(Exception):
    """
    Excepción base para todas las excepciones de la aplicación.
    """
    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        """
        Inicializa una nueva excepción.

        Args:
            message: Mensaje descriptivo del error
            details: Detalles adicionales sobre el error
        """
        self.message = message
        self.details = details or {}
        super().__init__(self.message)

    def __str__(self) -> str:
        """
        Representación en string de la excepción.

        Returns:
            Mensaje descriptivo con detalles si los hay
        """
        if self.details:
            return f"{self.message} - Detalles: {self.details}"
        return self.message


class ValidationError(PamError):
    """
    Excepción para errores de validación de datos o precondiciones.
    """
    pass


class ConfigurationError(PamError):
    """
    Excepción para errores de configuración.
    """
    pass


class RepositoryError(PamError):
    """
    Excepción para errores de acceso a archivos de datos.
    """
    pass


class DomainError(PamError):
    """
    Excepción para argumentos fuera del dominio matemático de una función.
    """
    pass


class UnsupportedParameterError(PamError):
    """
    Excepción para parámetros del modelo no soportados (por ejemplo alpha < 2).
    """
    def __init__(self, name: str, value: Any, message: Optional[str] = None):
        details = {"parameter": name, "value": value}
        super().__init__(
            message or f"Parámetro no soportado: {name}={value}",
            details
        )


class OutOfWindowError(PamError):
    """
    Excepción para sitios fuera de la ventana generada.
    """
    def __init__(self, site: int, window: int):
        details = {"site": site, "window": window}
        super().__init__(f"Sitio {site} fuera de la ventana [-{window}, {window}]", details)


class InsufficientWindowError(PamError):
    """
    Excepción para ventanas menores que el radio de búsqueda requerido.
    """
    def __init__(self, window: int, required: int):
        details = {"window": window, "required": required}
        super().__init__(
            f"Ventana insuficiente: L={window} < radio requerido {required}",
            details
        )


class InconclusiveClassificationError(PamError):
    """
    Excepción para perfiles cuya tendencia eta/kappa no es monótona.
    """
    pass


class DegenerateMaximiserError(PamError):
    """
    Excepción para maximizadores degenerados (Z1 <= 0).
    """
    pass


class NumericalError(PamError):
    """
    Excepción para cuadraturas que no convergen.
    """
    pass


class StiffnessError(PamError):
    """
    Excepción para el integrador cuando el paso colapsa.
    """
    pass


class PrecisionError(PamError):
    """
    Excepción para pérdidas de precisión no tolerables.
    """
    pass


class EnumerationCapError(PamError):
    """
    Excepción para enumeraciones de caminos por encima del límite configurado.
    """
    def __init__(self, count: int, cap: int):
        details = {"count": count, "cap": cap}
        super().__init__(f"Número de caminos {count} supera el límite {cap}", details)


class SamplerError(PamError):
    """
    Excepción para muestreadores que agotan sus iteraciones.
    """
    pass


class UnderpoweredError(PamError):
    """
    Excepción para experimentos con tamaño de muestra insuficiente.
    """
    def __init__(self, what: str, got: int, required: int):
        details = {"what": what, "got": got, "required": required}
        super().__init__(
            f"Experimento sin potencia suficiente: {what}={got} < {required}",
            details
        )


class WrongSuiteError(PamError):
    """
    Excepción para suites invocadas con un régimen incompatible.
    """
    def __init__(self, suite: str, regime: str):
        details = {"suite": suite, "regime": regime}
        super().__init__(f"La suite '{suite}' no aplica al régimen '{regime}'", details)


class RegimeMismatchError(PamError):
    """
    Excepción para perfiles cuya clasificación no coincide con el régimen declarado.
    """
    def __init__(self, declared: str, classified: str):
        details = {"declared": declared, "classified": classified}
        super().__init__(
            f"Régimen declarado '{declared}' distinto del clasificado '{classified}'",
            details
        )


class InvalidBoxError(PamError):
    """
    Excepción para cajas que tocan la frontera prohibida del proceso puntual.
    """
    pass


class StrategyNotFoundError(PamError):
    """
    Excepción para estrategias o suites no registradas.
    """
    def __init__(self, kind: str, name: str, available: Optional[list] = None):
        details = {"kind": kind, "name": name, "available": available or []}
        super().__init__(f"{kind} '{name}' no registrada", details)


USAGE_ERRORS = (
    ValidationError,
    ConfigurationError,
    WrongSuiteError,
    RegimeMismatchError,
    UnderpoweredError,
    InvalidBoxError,
    StrategyNotFoundError,
)
