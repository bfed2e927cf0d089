"""domain/solver/dense_oracle.py"""

import math

import numpy as np
from scipy import linalg
from scipy.special import logsumexp

from pam_localisation.common.exceptions.domain_exceptions import NumericalError, OutOfWindowError, ValidationError
from pam_localisation.common.utils.log import logger
from pam_localisation.domain.entities.potential_field import PotentialField
from pam_localisation.domain.solver.state import SolutionState, SolverDiagnostics


MAX_ORACLE_WINDOW = 12
_BASE_NORM = 0.5


def dense_log_propagator_column(xi: np.ndarray, t: float) -> np.ndarray:
    """
    log de la columna central de exp(t A), A = tridiag(1, xi - 2, 1), borde absorbente.

    Escalado y cuadrado con A desplazada por max(xi): exp(tA/2^s) por Padé
    y s cuadrados renormalizados por su máximo, acumulando el logaritmo de
    la escala aparte.
    """
    n = xi.size
    shift = float(xi.max())
    generator = np.diag(xi - 2.0 - shift) + np.diag(np.ones(n - 1), 1) + np.diag(np.ones(n - 1), -1)
    norm = float(np.abs(generator).sum(axis=1).max()) * t
    squarings = max(0, int(math.ceil(math.log2(norm / _BASE_NORM)))) if norm > _BASE_NORM else 0

    power = linalg.expm(generator * (t / 2.0 ** squarings))
    log_scale = 0.0
    for _ in range(squarings):
        power = power @ power
        peak = float(power.max())
        if not peak > 0 or not math.isfinite(peak):
            raise NumericalError("Escala no representable en el oráculo denso", {"t": t})
        power /= peak
        log_scale = 2.0 * log_scale + math.log(peak)

    column = np.maximum(power[:, n // 2], 0.0)
    with np.errstate(divide="ignore"):
        return np.log(column) + log_scale + shift * t


def dense_oracle(field: PotentialField, t: float, L_small: int) -> SolutionState:
    """
    Solución exacta por exponencial de matriz en la ventana [-L_small, L_small].

    Args:
        field: Campo de potencial
        t: Tiempo (> 0)
        L_small: Semiancho (<= 12)

    Returns:
        Estado normalizado

    Raises:
        ValidationError: Si la ventana excede el máximo o t <= 0
        OutOfWindowError: Si L_small supera la ventana del campo
        NumericalError: Si la escala no es representable
    """
    if not 0 <= L_small <= MAX_ORACLE_WINDOW:
        raise ValidationError(f"El oráculo denso admite ventanas hasta {MAX_ORACLE_WINDOW}", {"L_small": L_small})
    if L_small > field.L:
        raise OutOfWindowError(L_small, field.L)
    if not t > 0:
        raise ValidationError("dense_oracle requiere t > 0", {"t": t})

    xi = field.restrict(L_small).xi
    log_u = dense_log_propagator_column(xi, t)
    log_mass = float(logsumexp(log_u))
    if not math.isfinite(log_mass):
        raise NumericalError("Masa total no representable", {"t": t, "log_mass": log_mass})
    log_v = log_u - log_mass
    v = np.exp(log_v)
    leak = float(v[0] + v[-1]) if L_small > 0 else float(2.0 * v[0])
    logger.debug(f"Oráculo denso: L={L_small}, t={t}, log U={log_mass:.6f}")
    return SolutionState(
        t=float(t),
        log_mass=log_mass,
        log_v=log_v,
        window=int(L_small),
        leak_rate=leak,
        growth_rate=float(np.dot(xi, v)) - leak,
        diagnostics=SolverDiagnostics(method="dense"),
    )
