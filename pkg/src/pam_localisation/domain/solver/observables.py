"""domain/solver/observables.py"""

import math
from dataclasses import asdict, dataclass
from typing import Any, Dict, Union

from pam_localisation.common.utils.log import logger
from pam_localisation.common.value_objects.localisation import LocalisationSites
from pam_localisation.domain.solver.state import SolutionState


@dataclass(frozen=True)
class Observables:
    """Cantidades de localización medidas sobre un estado."""
    log_ratio: float
    two_site_mass: float
    top_site_mass: float
    infinite_ratio: bool = False

    def as_dict(self) -> Dict[str, Any]:
        return asdict(self)


def observables(state: SolutionState, sites: Union[LocalisationSites, int]) -> Observables:
    """
    log u(t,Z1)/u(t,-Z1), v(Z1) + v(-Z1) y max(v(Z1), v(-Z1)).

    Con Z1 = 0 el cociente es 0 y la masa de los dos sitios es v(0). Si
    v(-Z1) es nula el cociente es infinito y queda marcado.

    Raises:
        OutOfWindowError: Si ±Z1 no está en la ventana del estado
    """
    z1 = int(sites.z1 if isinstance(sites, LocalisationSites) else sites)
    if z1 == 0:
        v0 = state.v_at(0)
        return Observables(log_ratio=0.0, two_site_mass=v0, top_site_mass=v0)

    log_plus = state.log_v_at(z1)
    log_minus = state.log_v_at(-z1)
    v_plus, v_minus = math.exp(log_plus), math.exp(log_minus)
    infinite = not math.isfinite(log_minus) or not math.isfinite(log_plus)
    if infinite:
        logger.warning(f"Masa nula en ±Z1={z1} a t={state.t}: cociente infinito")
        if math.isfinite(log_plus):
            log_ratio = math.inf
        elif math.isfinite(log_minus):
            log_ratio = -math.inf
        else:
            log_ratio = math.nan
    else:
        log_ratio = log_plus - log_minus
    return Observables(
        log_ratio=log_ratio,
        two_site_mass=v_plus + v_minus,
        top_site_mass=max(v_plus, v_minus),
        infinite_ratio=infinite,
    )
