"""infrastructure/adapters/file_config_adapter.py"""

import json
import os
from typing import Any, Dict, Optional

from pam_localisation.common.exceptions.domain_exceptions import ConfigurationError
from pam_localisation.common.utils.log import logger


class FileConfigAdapter:
    """
    Adaptador para leer la configuración de experimentos desde un archivo JSON.

    Sin ruta explícita usa la variable de entorno PAM_CONFIG; sin ninguna de
    las dos la configuración es un documento vacío (valores por defecto).
    """

    def __init__(self, path: Optional[str] = None):
        """
        Inicializa el adaptador.

        Args:
            path: Ruta del archivo (por defecto, usa variable de entorno)
        """
        self.path = path or os.environ.get('PAM_CONFIG')
        self._config_cache = None

    def get_config(self, force_refresh: bool = False) -> Dict[str, Any]:
        """
        Obtiene la configuración del archivo.

        Args:
            force_refresh: Si es True, fuerza una relectura del archivo

        Returns:
            Configuración como diccionario

        Raises:
            ConfigurationError: Si el archivo no existe o no es JSON válido
        """
        if self._config_cache is not None and not force_refresh:
            return self._config_cache

        if not self.path:
            self._config_cache = {}
            return self._config_cache

        try:
            with open(self.path, encoding='utf-8') as fh:
                config = json.load(fh)
        except OSError as e:
            error_msg = f"Error al leer el archivo de configuración: {e}"
            logger.error(error_msg)
            raise ConfigurationError(error_msg, {"path": self.path})
        except json.JSONDecodeError as e:
            error_msg = f"Error al decodificar configuración JSON: {e}"
            logger.error(error_msg)
            raise ConfigurationError(error_msg, {"path": self.path})

        if not isinstance(config, dict):
            logger.error(f"La configuración de {self.path} no es un objeto JSON")
            raise ConfigurationError("La configuración debe ser un objeto JSON", {"path": self.path})

        self._config_cache = config
        logger.debug(f"Configuración cargada desde {self.path}")
        return config
