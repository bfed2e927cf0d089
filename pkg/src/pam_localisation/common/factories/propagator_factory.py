"""common/factories/propagator_factory.py"""

from typing import Dict, Type

from pam_localisation.common.exceptions.domain_exceptions import ConfigurationError, StrategyNotFoundError
from pam_localisation.common.utils.log import logger


class PropagatorFactory:
    """
    Fábrica de integradores del PAM siguiendo el patrón Factory Method.
    Los integradores por defecto se registran una sola vez, de forma perezosa.
    """

    DEFAULT = "bdf"

    _propagators = {}
    _initialized = False

    @classmethod
    def _initialize_default_propagators(cls):
        """
        Registra los integradores incorporados.
        """
        if cls._initialized:
            return

        # Importaciones tardías para evitar dependencias circulares
        from pam_localisation.domain.solver.strategies.log_space_propagator import BdfPropagator, RadauPropagator
        from pam_localisation.domain.solver.strategies.krylov_propagator import KrylovPropagator

        default_propagators = {
            'bdf': BdfPropagator,
            'radau': RadauPropagator,
            'krylov': KrylovPropagator,
        }

        for name, propagator_class in default_propagators.items():
            if name not in cls._propagators:
                cls._propagators[name] = propagator_class

        cls._initialized = True

        logger.debug(f"PropagatorFactory inicializado con {len(cls._propagators)} integradores")

    @classmethod
    def register(cls, name: str, propagator_class: Type):
        """
        Registra un integrador en la fábrica.

        Args:
            name: Nombre del método
            propagator_class: Clase del integrador
        """
        cls._initialize_default_propagators()

        cls._propagators[name.lower()] = propagator_class
        logger.debug(f"Integrador '{name}' registrado exitosamente")

    @classmethod
    def create_propagator(cls, name: str = DEFAULT):
        """
        Crea un integrador por nombre.

        Args:
            name: Nombre del método (bdf, radau, krylov)

        Returns:
            Instancia del integrador

        Raises:
            StrategyNotFoundError: Si el método no está registrado
            ConfigurationError: Si la instanciación falla
        """
        cls._initialize_default_propagators()

        normalized = name.lower() if name else cls.DEFAULT
        propagator_class = cls._propagators.get(normalized)
        if not propagator_class:
            logger.error(f"Método de integración no soportado: {name}")
            raise StrategyNotFoundError("integrador", name, sorted(cls._propagators))

        try:
            return propagator_class()
        except Exception as e:
            error_msg = f"Error al crear el integrador {name}: {e}"
            logger.error(error_msg)
            raise ConfigurationError(error_msg, {"original_error": str(e)})

    @classmethod
    def get_registered_propagators(cls) -> Dict[str, Type]:
        """
        Retorna todos los integradores registrados.
        """
        cls._initialize_default_propagators()
        return cls._propagators.copy()

    @classmethod
    def is_propagator_registered(cls, name: str) -> bool:
        """
        Verifica si un integrador está registrado.
        """
        cls._initialize_default_propagators()
        return name.lower() in cls._propagators

    @classmethod
    def reset_propagators(cls):
        """
        Resetea los integradores registrados. Útil para testing.
        """
        cls._propagators.clear()
        cls._initialized = False
