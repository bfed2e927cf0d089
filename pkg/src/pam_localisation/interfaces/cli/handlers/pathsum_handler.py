"""interfaces/cli/handlers/pathsum_handler.py"""

import math

from pam_localisation.common.utils.json_utils import to_json
from pam_localisation.common.utils.log import logger
from pam_localisation.domain.pathsum.paths import enumerate_paths, path_contribution, truncated_path_sum
from pam_localisation.domain.solver.dense_oracle import MAX_ORACLE_WINDOW, dense_oracle
from pam_localisation.interfaces.cli.handlers.common import load_config, obtain_field, open_output
from pam_localisation.interfaces.models.config_models import CliConfig


DEFAULT_WINDOW = 3
DEFAULT_EXTRA_STEPS = 8
# Por encima de este número de caminos no se escribe el CSV por camino
PATH_CSV_LIMIT = 100_000


def handle(cli: CliConfig) -> int:
    """
    Suma truncada de caminos en un retículo pequeño frente al oráculo denso.

    Por cada t imprime log u inferior, la cota de la cola y el log u exacto;
    los caminos del primer t se escriben en <out>/paths.csv.
    """
    config = load_config(cli)
    repository = open_output(cli, config)
    window = config.window.radius or DEFAULT_WINDOW
    field = obtain_field(cli, config, window)
    max_len = cli.max_len if cli.max_len is not None else abs(cli.target) + DEFAULT_EXTRA_STEPS

    for i, t in enumerate(config.t_grid):
        result = truncated_path_sum(field, t, cli.target, max_len, threads=config.workers)
        record = {
            "t": t,
            "target": cli.target,
            "max_len": max_len,
            "n_paths": result.n_paths,
            "log_u_lower": result.log_u_lower,
            "log_tail_bound": result.log_tail_bound,
        }
        if field.L <= MAX_ORACLE_WINDOW:
            exact = dense_oracle(field, t, field.L)
            record["log_u_exact"] = exact.log_mass + exact.log_v_at(cli.target)
            record["within_bound"] = (math.exp(record["log_u_exact"]) - math.exp(result.log_u_lower)
                                      <= result.tail_bound * (1 + 1e-9))
        print(to_json(record))

        if i == 0 and result.n_paths <= PATH_CSV_LIMIT:
            contributions = [path_contribution(field, t, p)
                             for p in enumerate_paths(cli.target, max_len, field.L)]
            repository.save_paths(contributions)
        elif i == 0:
            logger.warning(f"{result.n_paths} caminos: se omite paths.csv")
    return 0
