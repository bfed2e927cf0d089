"""interfaces/cli/main.py"""

import argparse
import sys
from typing import Any, Dict, List, Optional

from pam_localisation import __version__
from pam_localisation.common.exceptions.domain_exceptions import USAGE_ERRORS, PamError
from pam_localisation.common.factories.suite_factory import SuiteFactory
from pam_localisation.common.utils.log import logger, set_log_level
from pam_localisation.interfaces.models.config_models import CliConfig


EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_RUNTIME = 3

SUBCOMMANDS = ("generate", "solve", "localise", "pathsum", "experiment", "verify")


def _t_grid(value: str) -> List[float]:
    try:
        return [float(v) for v in value.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"malla temporal inválida: {value}")


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", dest="config_path", help="archivo JSON de configuración (o PAM_CONFIG)")
    parser.add_argument("--log-level", default="INFO", choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"])
    parser.add_argument("--alpha", type=float)
    parser.add_argument("--regime", choices=["subcritical", "critical", "supercritical", "custom"])
    parser.add_argument("--beta", type=float)
    parser.add_argument("--profile-exponent", type=float)
    parser.add_argument("--t-grid", type=_t_grid, help="tiempos separados por comas")
    parser.add_argument("--replicates", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--window", type=int, help="radio de búsqueda / semiancho del campo")
    parser.add_argument("--out")
    parser.add_argument("--threads", type=int)
    parser.add_argument("--tolerance", type=float)
    parser.add_argument("--method", choices=["bdf", "radau", "krylov"])
    parser.add_argument("--top-k", type=int)
    parser.add_argument("--emit-plotdata", action="store_true", default=None)


def build_parser() -> argparse.ArgumentParser:
    """Analizador con un subcomando por operación."""
    parser = argparse.ArgumentParser(prog="pam-localisation",
                                     description="PAM con potencial de Pareto parcialmente duplicado")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="subcommand", required=True)

    for name in ("generate", "solve", "localise"):
        sub = subparsers.add_parser(name)
        _add_common(sub)
        if name != "generate":
            sub.add_argument("--field", dest="field_path", help="campo volcado con generate")

    sub = subparsers.add_parser("pathsum")
    _add_common(sub)
    sub.add_argument("--field", dest="field_path")
    sub.add_argument("--max-len", type=int, default=None)
    sub.add_argument("--target", type=int, default=0)

    sub = subparsers.add_parser("experiment")
    sub.add_argument("suite", choices=sorted(SuiteFactory.get_registered_suites()))
    _add_common(sub)

    sub = subparsers.add_parser("verify")
    _add_common(sub)
    sub.add_argument("--full", action="store_true")
    return parser


def _overrides(args: argparse.Namespace) -> Dict[str, Any]:
    """Traduce los argumentos a la estructura anidada de ExperimentConfig."""
    return {
        "alpha": args.alpha,
        "profile": {"kind": args.regime, "beta": args.beta, "exponent": args.profile_exponent},
        "t_grid": args.t_grid,
        "replicates": args.replicates,
        "base_seed": args.seed,
        "window": {"radius": args.window},
        "out": args.out,
        "threads": args.threads,
        "solver": {"tolerance": args.tolerance, "method": args.method},
        "top_k": args.top_k,
        "emit_plotdata": args.emit_plotdata,
    }


def parse_cli(argv: Optional[List[str]] = None) -> CliConfig:
    """
    Analiza la línea de comandos.

    Raises:
        SystemExit: Con código 2 ante argumentos desconocidos (uso en stderr)
    """
    args = build_parser().parse_args(argv)
    return CliConfig(
        subcommand=args.subcommand,
        config_path=args.config_path,
        suite=getattr(args, "suite", None),
        log_level=args.log_level,
        overrides=_overrides(args),
        field_path=getattr(args, "field_path", None),
        max_len=getattr(args, "max_len", None),
        target=getattr(args, "target", 0),
        full=getattr(args, "full", False),
    )


def dispatch(cli: CliConfig) -> int:
    # Importaciones tardías: solo se carga el manejador del subcomando
    if cli.subcommand == "generate":
        from pam_localisation.interfaces.cli.handlers.generate_handler import handle
    elif cli.subcommand == "solve":
        from pam_localisation.interfaces.cli.handlers.solve_handler import handle
    elif cli.subcommand == "localise":
        from pam_localisation.interfaces.cli.handlers.localise_handler import handle
    elif cli.subcommand == "pathsum":
        from pam_localisation.interfaces.cli.handlers.pathsum_handler import handle
    elif cli.subcommand == "experiment":
        from pam_localisation.interfaces.cli.handlers.experiment_handler import handle
    else:
        from pam_localisation.interfaces.cli.handlers.verify_handler import handle
    return handle(cli)


def main(argv: Optional[List[str]] = None) -> int:
    """
    Punto de entrada de la CLI.

    Returns:
        0 éxito o PASS, 1 FAIL de una suite, 2 error de uso, 3 error de ejecución
    """
    try:
        cli = parse_cli(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_USAGE

    set_log_level(cli.log_level)
    try:
        return dispatch(cli)
    except USAGE_ERRORS as e:
        logger.error(f"Error de uso: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except PamError as e:
        logger.error(f"Error de ejecución: {e}")
        return EXIT_RUNTIME
    except Exception as e:
        logger.exception(f"Error inesperado: {e}")
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
