"""application/services/config_service.py"""

from typing import Any, Dict, Optional

import pydantic

from pam_localisation.common.exceptions.domain_exceptions import ConfigurationError
from pam_localisation.common.utils.jmespath import suite_section
from pam_localisation.common.utils.json_utils import deep_merge, drop_none
from pam_localisation.common.utils.log import logger
from pam_localisation.interfaces.models.config_models import ExperimentConfig


class ConfigService:
    """
    Servicio para obtener la configuración efectiva de un experimento.

    Orden de precedencia: valores por defecto < archivo < sección
    suites.<nombre> del archivo < argumentos de la CLI.
    """

    def __init__(self, config_adapter):
        """
        Inicializa el servicio con un adaptador de configuración.

        Args:
            config_adapter: Adaptador para obtener la configuración
        """
        self.config_adapter = config_adapter
        self._config_cache = None

    def get_config(self, force_refresh: bool = False) -> Dict[str, Any]:
        """
        Obtiene el documento de configuración.

        Raises:
            ConfigurationError: Si no se puede obtener la configuración
        """
        if force_refresh or self._config_cache is None:
            self._config_cache = self.config_adapter.get_config(force_refresh=force_refresh)
        return self._config_cache

    def get_experiment_config(self, overrides: Optional[Dict[str, Any]] = None,
                              suite: Optional[str] = None) -> ExperimentConfig:
        """
        Construye la configuración efectiva validada.

        Args:
            overrides: Valores de la CLI (los None se ignoran)
            suite: Suite cuya sección se superpone a la configuración base

        Returns:
            ExperimentConfig validada

        Raises:
            ConfigurationError: Si la configuración resultante no es válida
        """
        document = dict(self.get_config())
        sections = document.pop("suites", None)
        merged = document
        if suite:
            merged = deep_merge(merged, suite_section({"suites": sections or {}}, suite))
        merged = deep_merge(merged, drop_none(overrides or {}))

        try:
            config = ExperimentConfig.model_validate(merged)
        except pydantic.ValidationError as e:
            error_msg = f"Configuración inválida: {e.error_count()} errores"
            logger.error(error_msg)
            raise ConfigurationError(error_msg, {
                "errors": [f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors()]
            })
        logger.debug(f"Configuración efectiva: alpha={config.alpha} regime={config.regime.value} "
                     f"t_grid={config.t_grid}")
        return config
