"""interfaces/cli/handlers/common.py"""

from typing import Optional

from pam_localisation.application.services.config_service import ConfigService
from pam_localisation.domain.entities.potential_field import PotentialField
from pam_localisation.domain.localisation.scales import make_scales
from pam_localisation.domain.model.potential import build_potential
from pam_localisation.infrastructure.adapters.file_config_adapter import FileConfigAdapter
from pam_localisation.infrastructure.repositories.field_repository import FieldRepository
from pam_localisation.infrastructure.repositories.result_repository import ResultRepository
from pam_localisation.interfaces.models.config_models import CliConfig, ExperimentConfig


def load_config(cli: CliConfig) -> ExperimentConfig:
    """Configuración efectiva: archivo, sección de la suite y argumentos de la CLI."""
    service = ConfigService(FileConfigAdapter(cli.config_path))
    return service.get_experiment_config(cli.overrides, suite=cli.suite)


def open_output(cli: CliConfig, config: ExperimentConfig) -> ResultRepository:
    """Repositorio del directorio de salida con effective_config.json ya escrito."""
    repository = ResultRepository(config.out)
    repository.save_effective_config(config.model_dump(mode="json"),
                                     {"subcommand": cli.subcommand, "suite": cli.suite})
    return repository


def field_window(config: ExperimentConfig) -> int:
    """Semiancho del campo: --window si se indica, si no el de la política en el mayor t."""
    policy = config.window
    if policy.L is not None:
        return policy.L
    if policy.radius is not None:
        return policy.radius
    return policy.field_window(policy.search_radius(make_scales(max(config.t_grid), config.alpha)))


def obtain_field(cli: CliConfig, config: ExperimentConfig, window: Optional[int] = None) -> PotentialField:
    """Lee el campo de --field o lo genera con la semilla base."""
    if cli.field_path:
        return FieldRepository().find(cli.field_path)
    L = field_window(config) if window is None else window
    return build_potential(config.build_profile(), L, config.base_seed)
