"""interfaces/cli/handlers/generate_handler.py"""

from pam_localisation.common.utils.log import logger
from pam_localisation.infrastructure.repositories.field_repository import FieldRepository
from pam_localisation.interfaces.cli.handlers.common import load_config, obtain_field, open_output
from pam_localisation.interfaces.models.config_models import CliConfig


FIELD_FILE = "field.jsonl"


def handle(cli: CliConfig) -> int:
    """
    Genera un campo con la semilla base y lo vuelca en <out>/field.jsonl.

    Returns:
        Código de salida
    """
    config = load_config(cli)
    repository = open_output(cli, config)
    field = obtain_field(cli, config)
    path = FieldRepository().save(field, repository.path(FIELD_FILE))
    logger.info(f"Campo generado: seed={config.base_seed}, L={field.L}")
    print(path)
    return 0
