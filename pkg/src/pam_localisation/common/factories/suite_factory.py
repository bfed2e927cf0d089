"""common/factories/suite_factory.py"""

from typing import Dict, Type

from pam_localisation.common.exceptions.domain_exceptions import ConfigurationError, StrategyNotFoundError
from pam_localisation.common.utils.log import logger


class SuiteFactory:
    """
    Fábrica de suites de verificación.
    Las suites incorporadas se registran de forma perezosa en el primer uso.
    """

    _suites = {}
    _initialized = False

    @classmethod
    def _initialize_default_suites(cls):
        if cls._initialized:
            return

        # Importaciones tardías para evitar dependencias circulares
        from pam_localisation.application.services.suites.clt_suite import CltSuite
        from pam_localisation.application.services.suites.critical_suite import CriticalSuite
        from pam_localisation.application.services.suites.events_suite import CountingSuite, EventsSuite
        from pam_localisation.application.services.suites.heuristics_suite import HeuristicsSuite
        from pam_localisation.application.services.suites.localisation_suite import LocalisationSuite
        from pam_localisation.application.services.suites.phase_suite import PhaseSuite
        from pam_localisation.application.services.suites.point_process_suite import PointProcessSuite
        from pam_localisation.application.services.suites.variance_suite import VarianceSuite
        from pam_localisation.application.services.suites.zeta_suite import ZetaSuite

        default_suites = {
            'localisation': LocalisationSuite,
            'phase': PhaseSuite,
            'critical': CriticalSuite,
            'clt': CltSuite,
            'variance': VarianceSuite,
            'point_process': PointProcessSuite,
            'events': EventsSuite,
            'counting': CountingSuite,
            'zeta': ZetaSuite,
            'heuristics': HeuristicsSuite,
        }

        for name, suite_class in default_suites.items():
            if name not in cls._suites:
                cls._suites[name] = suite_class

        cls._initialized = True

        logger.debug(f"SuiteFactory inicializado con {len(cls._suites)} suites")

    @classmethod
    def register(cls, name: str, suite_class: Type):
        """
        Registra una suite en la fábrica.

        Args:
            name: Nombre de la suite
            suite_class: Clase de la suite
        """
        cls._initialize_default_suites()

        cls._suites[name.lower()] = suite_class
        logger.debug(f"Suite '{name}' registrada exitosamente")

    @classmethod
    def create_suite(cls, name: str):
        """
        Crea una suite por nombre.

        Args:
            name: Nombre de la suite

        Returns:
            Instancia de la suite

        Raises:
            StrategyNotFoundError: Si la suite no está registrada
            ConfigurationError: Si la instanciación falla
        """
        cls._initialize_default_suites()

        suite_class = cls._suites.get((name or "").lower())
        if not suite_class:
            logger.error(f"Suite no soportada: {name}")
            raise StrategyNotFoundError("suite", name, sorted(cls._suites))

        try:
            return suite_class()
        except Exception as e:
            error_msg = f"Error al crear la suite {name}: {e}"
            logger.error(error_msg)
            raise ConfigurationError(error_msg, {"original_error": str(e)})

    @classmethod
    def get_registered_suites(cls) -> Dict[str, Type]:
        """
        Retorna todas las suites registradas.
        """
        cls._initialize_default_suites()
        return cls._suites.copy()

    @classmethod
    def is_suite_registered(cls, name: str) -> bool:
        cls._initialize_default_suites()
        return name.lower() in cls._suites

    @classmethod
    def reset_suites(cls):
        """
        Resetea las suites registradas. Útil para testing.
        """
        cls._suites.clear()
        cls._initialized = False
