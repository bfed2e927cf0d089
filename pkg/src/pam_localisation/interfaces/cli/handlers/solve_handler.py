"""interfaces/cli/handlers/solve_handler.py"""

from pam_localisation.application.services.solver_service import SolverService
from pam_localisation.common.utils.json_utils import to_json
from pam_localisation.infrastructure.repositories.state_repository import StateRepository
from pam_localisation.interfaces.cli.handlers.common import load_config, obtain_field, open_output
from pam_localisation.interfaces.models.config_models import CliConfig


STATES_FILE = "states.csv"


def handle(cli: CliConfig) -> int:
    """
    Integra el PAM sobre un campo y vuelca los estados en <out>/states.csv.

    Imprime en stdout una línea JSON por tiempo con log U, fuga y diagnósticos.
    """
    config = load_config(cli)
    repository = open_output(cli, config)
    field = obtain_field(cli, config)
    L_solve = min(config.window.L_solve or field.L, field.L)
    solver = SolverService(config.solver.method, config.solver.tolerance, config.solver.leak_threshold)
    states = solver.solve(field, config.t_grid, L_solve)
    StateRepository().save(states, repository.path(STATES_FILE), config.top_k)
    for state in states:
        print(to_json({
            "t": state.t,
            "log_mass": state.log_mass,
            "leak_rate": state.leak_rate,
            "growth_rate": state.growth_rate,
            "top": state.top_k(3),
            "diagnostics": state.diagnostics.as_dict(),
        }))
    return 0
