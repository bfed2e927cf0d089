"""domain/localisation/scales.py"""

import math
from typing import Optional, Union

import numpy as np

from pam_localisation.common.exceptions.domain_exceptions import DomainError, OutOfWindowError
from pam_localisation.common.utils.log import logger
from pam_localisation.common.value_objects.scales import Scales
from pam_localisation.domain.entities.potential_field import PotentialField
from pam_localisation.domain.model.pareto import check_alpha


# f_t < 1 < g_t solo para t > e^e
FG_THRESHOLD = math.exp(math.e)


def make_scales(t: float, alpha: float, f_t: Optional[float] = None, g_t: Optional[float] = None) -> Scales:
    """
    Calcula las escalas r_t, a_t, lambda(t), f_t, g_t.

    Por defecto f_t = (log log t)^{-1/2} y g_t = (log log t)^{1/2}.

    Args:
        t: Tiempo (> e^2)
        alpha: Índice de cola
        f_t: Sustituto opcional de f_t
        g_t: Sustituto opcional de g_t

    Returns:
        Escalas (R_t sin fijar)

    Raises:
        DomainError: Si t <= e^2
    """
    alpha = check_alpha(alpha)
    if not t > math.exp(2.0):
        raise DomainError("make_scales requiere t > e^2", {"t": t})
    log_t = math.log(t)
    base = t / log_t
    a_t = base ** (1.0 / (alpha - 1.0))
    r_t = base ** (alpha / (alpha - 1.0))
    loglog = math.log(log_t)
    if t <= FG_THRESHOLD:
        logger.warning(f"t={t} <= e^e: f_t y g_t no separan 1 (log log t={loglog:.3f})")
    return Scales(
        t=float(t),
        alpha=alpha,
        r_t=r_t,
        a_t=a_t,
        lambda_t=1.0 if alpha > 2 else log_t,
        f_t=f_t if f_t is not None else loglog ** -0.5,
        g_t=g_t if g_t is not None else loglog ** 0.5,
    )


def psi(t: float, z: int, xi_z: float) -> float:
    """Psi_t(z) = xi(z) - (|z|/t) log xi(z)."""
    return xi_z - (abs(z) / t) * math.log(xi_z)


def psi_values(t: float, n: Union[np.ndarray, int], xi: np.ndarray) -> np.ndarray:
    """Versión vectorizada de psi para distancias |z| = n."""
    return xi - (np.abs(n) / t) * np.log(xi)


def psi_profile(field: PotentialField, t: float, radius: int) -> np.ndarray:
    """
    Psi_t sobre [-radius, radius], indexado como z + radius.

    Raises:
        OutOfWindowError: Si radius supera la ventana
    """
    if radius > field.L:
        raise OutOfWindowError(radius, field.L)
    z = np.arange(-radius, radius + 1)
    return psi_values(t, z, field.xi_at(z))
