"""interfaces/cli/handlers/experiment_handler.py"""

from pam_localisation.application.services.batch_runner import BatchRunner
from pam_localisation.application.services.summary_service import plot_tables, summarise
from pam_localisation.common.factories.suite_factory import SuiteFactory
from pam_localisation.common.utils.json_utils import to_json
from pam_localisation.common.utils.log import logger
from pam_localisation.interfaces.cli.handlers.common import load_config, open_output
from pam_localisation.interfaces.models.config_models import CliConfig


def handle(cli: CliConfig) -> int:
    """
    Ejecuta una suite y escribe replicates.jsonl, summary.csv y verdicts.json.

    Las precondiciones se comprueban antes de lanzar el lote.

    Returns:
        0 si PASS, 1 si FAIL
    """
    suite = SuiteFactory.create_suite(cli.suite)
    config = load_config(cli)
    suite.validate(config)
    repository = open_output(cli, config)

    results = None
    if suite.needs_replicates:
        results = BatchRunner(config).run()
        repository.save(results)
        summary = summarise(results, config.t_grid, config.significance.confidence)
        repository.save_summary(summary)
        if config.emit_plotdata:
            repository.save_plotdata(plot_tables(summary))
        failed = sum(1 for r in results if not r.ok)
        if failed:
            logger.warning(f"{failed} de {len(results)} réplicas fallidas")

    verdict = suite.run(config, results)
    repository.save_verdicts([verdict])
    print(to_json(verdict.to_record(), indent=2))
    return 0 if verdict.passed else 1
