"""domain/model/pareto.py"""

from typing import Union

import numpy as np

from pam_localisation.common.exceptions.domain_exceptions import DomainError, UnsupportedParameterError


def check_alpha(alpha: float) -> float:
    """Valida el índice de cola (alpha >= 2)."""
    if not np.isfinite(alpha) or alpha < 2:
        raise UnsupportedParameterError("alpha", alpha, f"alpha={alpha} no soportado (se requiere alpha >= 2)")
    return float(alpha)


def pareto_quantile(u: Union[float, np.ndarray], alpha: float) -> Union[float, np.ndarray]:
    """
    Cuantil de la ley de Pareto F(x) = 1 - x^{-alpha} en x >= 1.

    Args:
        u: Uniforme o arreglo de uniformes en [0, 1)
        alpha: Índice de cola

    Returns:
        (1 - u)^{-1/alpha}

    Raises:
        DomainError: Si algún u está fuera de [0, 1)
        UnsupportedParameterError: Si alpha < 2
    """
    alpha = check_alpha(alpha)
    arr = np.asarray(u, dtype=float)
    if np.any(arr < 0) or np.any(arr >= 1) or np.any(np.isnan(arr)):
        raise DomainError("u debe estar en [0, 1)", {"min": float(np.min(arr)), "max": float(np.max(arr))})
    result = np.power(1.0 - arr, -1.0 / alpha)
    return float(result) if np.ndim(u) == 0 else result


def pareto_cdf(x: Union[float, np.ndarray], alpha: float) -> Union[float, np.ndarray]:
    """CDF de Pareto, nula por debajo de 1."""
    arr = np.asarray(x, dtype=float)
    result = np.where(arr >= 1.0, 1.0 - np.power(np.maximum(arr, 1.0), -alpha), 0.0)
    return float(result) if np.ndim(x) == 0 else result


def pareto_mean(alpha: float) -> float:
    """gamma = E xi(0) = alpha / (alpha - 1)."""
    return alpha / (alpha - 1.0)


def sigma_squared(alpha: float) -> float:
    """
    alpha / ((alpha-2)(alpha-1)^2) si alpha > 2 y 1 si alpha = 2.

    Para alpha > 2 coincide con la varianza de la ley de Pareto.
    """
    alpha = check_alpha(alpha)
    if alpha == 2:
        return 1.0
    return alpha / ((alpha - 2.0) * (alpha - 1.0) ** 2)
