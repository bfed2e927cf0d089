"""interfaces/cli/handlers/verify_handler.py"""

from pam_localisation.application.services.verify_service import VerifyService, verdict_table
from pam_localisation.interfaces.cli.handlers.common import load_config, open_output
from pam_localisation.interfaces.models.config_models import CliConfig


def handle(cli: CliConfig) -> int:
    """
    Ejecuta la batería de verificación e imprime la tabla de resultados.

    Returns:
        0 si todas las comprobaciones pasan, 1 en otro caso
    """
    config = load_config(cli)
    repository = open_output(cli, config)
    verdicts = VerifyService(full=cli.full, seed=config.base_seed, threads=min(config.workers, 4)).run()
    repository.save_verdicts(verdicts)

    rows = verdict_table(verdicts)
    width = max(len(r["check"]) for r in rows)
    for row in rows:
        line = f"{row['check']:<{width}}  {row['outcome']}"
        print(f"{line}  {row['notes']}" if row["notes"] else line)
    return 0 if all(v.passed for v in verdicts) else 1
