"""interfaces/cli/handlers/localise_handler.py"""

from pam_localisation.application.services.localisation_service import LocalisationService
from pam_localisation.common.utils.json_utils import to_json
from pam_localisation.domain.localisation.scales import make_scales
from pam_localisation.interfaces.cli.handlers.common import load_config, obtain_field, open_output
from pam_localisation.interfaces.models.config_models import CliConfig


def handle(cli: CliConfig) -> int:
    """
    Emite un LocalisationReport por tiempo de la malla.

    Los informes se escriben en <out>/localisation.jsonl y en stdout.
    """
    config = load_config(cli)
    repository = open_output(cli, config)
    policy = config.window
    all_scales = [make_scales(t, config.alpha) for t in config.t_grid]
    radii = [policy.search_radius(s) for s in all_scales]
    field = obtain_field(cli, config, policy.field_window(max(radii)))

    service = LocalisationService(config.build_profile(), config.regime)
    reports = []
    for scales, radius in zip(all_scales, radii):
        snapshot = service.localise(field, scales.t, radius=min(radius, field.L), scales=scales)
        report = service.report(field, snapshot)
        reports.append(report)
        print(to_json(report.to_record()))
    repository.save_reports(reports)
    return 0
