"""domain/pathsum/simplex.py"""

import math
from typing import Sequence

import numpy as np
from scipy.special import gammaln

from pam_localisation.common.exceptions.domain_exceptions import PrecisionError, ValidationError
from pam_localisation.common.utils.log import logger


# Rango t * semiancho de nodos hasta el que basta la serie escalar
TAYLOR_SPREAD = 1.0
# Norma objetivo de la matriz escalada antes de elevar al cuadrado
_BASE_NORM = 0.5
_TAYLOR_TERMS = 48
_EXTRA_TERMS = 24


def _check(t: float, c: Sequence[float]) -> np.ndarray:
    if not t > 0:
        raise ValidationError("simplex_integral requiere t > 0", {"t": t})
    nodes = np.asarray(c, dtype=float)
    if nodes.ndim != 1 or nodes.size == 0:
        raise ValidationError("Se requiere al menos un nodo", {"shape": nodes.shape})
    if not np.all(np.isfinite(nodes)):
        raise ValidationError("Los nodos deben ser finitos")
    return nodes


def _complete_homogeneous(x: np.ndarray, terms: int) -> np.ndarray:
    """h_k(x_0..x_n) para k = 0..terms-1 por la recurrencia h_k += x_j h_{k-1}."""
    h = np.zeros(terms)
    h[0] = 1.0
    for xj in x:
        for k in range(1, terms):
            h[k] += xj * h[k - 1]
    return h


def _taylor_log(t: float, nodes: np.ndarray) -> float:
    # e^{ts}[c_0..c_n] = e^{tm} t^n/n! sum_k h_k(t delta) n!/(n+k)!
    n = nodes.size - 1
    mid = 0.5 * (nodes.max() + nodes.min())
    h = _complete_homogeneous(t * (nodes - mid), _TAYLOR_TERMS)
    k = np.arange(_TAYLOR_TERMS)
    weights = np.exp(gammaln(n + 1) - gammaln(n + k + 1))
    series = float(np.dot(h, weights))
    if not series > 0:
        raise PrecisionError("Serie de Taylor no positiva", {"n": n, "t": t})
    return t * mid + n * math.log(t) - math.lgamma(n + 1) + math.log(series)


def _squaring_log(t: float, nodes: np.ndarray) -> float:
    """
    Escalado y cuadrado de exp(t J) con J bidiagonal (nodos en la diagonal).

    La entrada (0, n) de exp(t J) es la diferencia dividida de e^{ts}. Con
    los nodos desplazados por su mínimo y la superdiagonal balanceada por
    omega, todas las entradas son no negativas y el producto no cancela.
    """
    n = nodes.size - 1
    cmin = float(nodes.min())
    spread = float(nodes.max()) - cmin
    omega = max(1.0, n / math.e) / t + spread
    squarings = max(0, int(math.ceil(math.log2(t * (spread + omega) / _BASE_NORM))))
    step = t / 2.0 ** squarings

    generator = np.diag(step * (nodes - cmin)) + np.diag(np.full(n, step * omega), 1)
    # Serie de Taylor de términos no negativos; cubre desplazamientos hasta n
    base = np.eye(n + 1)
    term = np.eye(n + 1)
    for k in range(1, n + _EXTRA_TERMS):
        term = term @ generator / k
        base = base + term

    log_scale = 0.0
    power = base
    for _ in range(squarings):
        power = power @ power
        peak = float(power.max())
        power /= peak
        log_scale = 2.0 * log_scale + math.log(peak)

    corner = float(power[0, n])
    if not corner > 0 or not math.isfinite(corner):
        logger.error(f"Subdesbordamiento en la integral del símplex: n={n}, t={t}, ancho={spread:.3g}")
        raise PrecisionError("La entrada de la esquina se anuló en el escalado y cuadrado",
                             {"n": n, "t": t, "spread": spread,
                              "hint": "reduzca n o use aritmética racional exacta"})
    return math.log(corner) + log_scale - n * math.log(omega) + t * cmin


def simplex_integral(t: float, c: Sequence[float]) -> float:
    """
    log I_n(t; c_0..c_n), con I_n = e^{t c_n} ∫_{S_t^n} exp(sum x_i (c_i - c_n)) dx.

    I_n es la diferencia dividida de s -> e^{ts} en los nodos c_0..c_n
    (nodos repetidos incluidos). Con nodos agrupados se usa la serie de
    Taylor centrada; en otro caso escalado y cuadrado de la matriz
    bidiagonal asociada.

    Args:
        t: Tiempo (> 0)
        c: Nodos c_0..c_n

    Returns:
        Logaritmo de I_n

    Raises:
        ValidationError: Si t <= 0 o no hay nodos
        PrecisionError: Si el resultado no es representable
    """
    nodes = _check(t, c)
    if nodes.size == 1:
        return float(t * nodes[0])
    half_spread = 0.5 * float(nodes.max() - nodes.min())
    if t * half_spread <= TAYLOR_SPREAD:
        return _taylor_log(t, nodes)
    return _squaring_log(t, nodes)


def distinct_node_integral(t: float, c: Sequence[float]) -> float:
    """
    I_n por fracciones parciales: sum_i e^{t c_i} / prod_{j != i} (c_i - c_j).

    Solo para verificación: cancela catastróficamente con nodos cercanos.

    Raises:
        ValidationError: Si hay nodos repetidos
    """
    nodes = _check(t, c)
    if np.unique(nodes).size != nodes.size:
        raise ValidationError("La identidad de fracciones parciales requiere nodos distintos")
    total = 0.0
    for i, ci in enumerate(nodes):
        others = np.delete(nodes, i)
        total += math.exp(t * ci) / float(np.prod(ci - others))
    return total


def direct_path_log_weights(t: float, xi_ray: Sequence[float]) -> np.ndarray:
    """
    log de la contribución del camino recto 0 -> n para n = 0..N, a tiempo pequeño.

    Usa la serie centrada en la media del camino hasta segundo orden:
    -2t + t m_n + n log t - log n! + log1p(t^2 h_2/((n+1)(n+2))),
    con h_2 = sum(delta^2)/2. Es exacta a orden t^3 relativo.

    Args:
        t: Tiempo pequeño (> 0)
        xi_ray: Potencial a lo largo del rayo xi(0), xi(±1), ...

    Returns:
        Arreglo de longitud N+1
    """
    if not t > 0:
        raise ValidationError("direct_path_log_weights requiere t > 0", {"t": t})
    xi = np.asarray(xi_ray, dtype=float)
    n = np.arange(xi.size)
    count = n + 1.0
    mean = np.cumsum(xi) / count
    centred_sq = np.maximum(np.cumsum(xi * xi) - count * mean ** 2, 0.0)
    correction = np.log1p(t * t * 0.5 * centred_sq / (count * (count + 1.0)))
    return -2.0 * t + t * mean + n * math.log(t) - gammaln(count) + correction
