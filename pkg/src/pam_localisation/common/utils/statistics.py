"""common/utils/statistics.py"""

from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy import stats

from pam_localisation.common.exceptions.domain_exceptions import ValidationError


@dataclass(frozen=True)
class StatOutcome:
    """Resultado de una prueba estadística."""
    statistic: float
    pvalue: float
    dof: Optional[int] = None


@dataclass(frozen=True)
class TrendOutcome:
    """Resultado de la prueba de tendencia de Mann-Kendall."""
    s: float
    variance: float
    z: float
    pvalue: float
    direction: str


def ks_one_sample(sample: Sequence[float], cdf: Callable) -> StatOutcome:
    """
    Distancia de Kolmogorov-Smirnov entre una muestra y una CDF teórica.

    Args:
        sample: Valores observados
        cdf: Función de distribución acumulada vectorizada

    Returns:
        Estadístico D y p-valor
    """
    result = stats.kstest(np.asarray(sample, dtype=float), cdf)
    return StatOutcome(float(result.statistic), float(result.pvalue))


def ks_two_sample(a: Sequence[float], b: Sequence[float]) -> StatOutcome:
    """
    Distancia de Kolmogorov-Smirnov entre dos muestras.

    Args:
        a: Primera muestra
        b: Segunda muestra

    Returns:
        Estadístico D y p-valor
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.size == 0 or b.size == 0:
        raise ValidationError("KS de dos muestras requiere muestras no vacías",
                              {"size_a": int(a.size), "size_b": int(b.size)})
    result = stats.ks_2samp(a, b)
    return StatOutcome(float(result.statistic), float(result.pvalue))


def chi_square(observed: Sequence[float], expected: Sequence[float], ddof: int = 0) -> StatOutcome:
    """
    Prueba chi-cuadrado de bondad de ajuste con conteos esperados dados.

    Los esperados se reescalan para que sumen lo mismo que los observados.

    Args:
        observed: Conteos observados
        expected: Conteos esperados
        ddof: Grados de libertad descontados

    Returns:
        Estadístico, p-valor y grados de libertad
    """
    observed = np.asarray(observed, dtype=float)
    expected = np.asarray(expected, dtype=float)
    expected = expected * observed.sum() / expected.sum()
    result = stats.chisquare(observed, expected, ddof=ddof)
    return StatOutcome(float(result.statistic), float(result.pvalue), int(observed.size - 1 - ddof))


def chi_square_uniform(values: Sequence[float], bins: int = 100) -> StatOutcome:
    """
    Prueba de uniformidad en [0, 1) con bins de igual ancho.

    Args:
        values: Valores en [0, 1)
        bins: Número de bins

    Returns:
        Resultado chi-cuadrado
    """
    counts, _ = np.histogram(np.asarray(values, dtype=float), bins=bins, range=(0.0, 1.0))
    return chi_square(counts, np.full(bins, counts.sum() / bins))


def chi_square_poisson(counts: Sequence[int], mean: float, min_expected: float = 5.0) -> StatOutcome:
    """
    Prueba si una muestra de conteos sigue una ley de Poisson de media dada.

    Las categorías k = 0, 1, ... se fusionan hasta que cada una espera al
    menos min_expected observaciones; la última categoría acumula la cola.

    Args:
        counts: Conteos observados (uno por réplica)
        mean: Media de Poisson teórica
        min_expected: Esperado mínimo por categoría

    Returns:
        Resultado chi-cuadrado
    """
    counts = np.asarray(counts, dtype=int)
    n = counts.size
    if n == 0:
        raise ValidationError("Se requieren conteos para la prueba de Poisson")

    categories = []
    lo, k, acc = 0, 0, 0.0
    while True:
        acc += n * stats.poisson.pmf(k, mean)
        tail = n * stats.poisson.sf(k, mean)
        if acc >= min_expected and tail >= min_expected:
            categories.append((lo, k))
            lo, acc = k + 1, 0.0
        if tail < min_expected:
            break
        k += 1

    observed = [np.count_nonzero((counts >= a) & (counts <= b)) for a, b in categories]
    expected = [n * (stats.poisson.cdf(b, mean) - stats.poisson.cdf(a - 1, mean)) for a, b in categories]
    observed.append(np.count_nonzero(counts >= lo))
    expected.append(n * stats.poisson.sf(lo - 1, mean))
    if len(observed) < 2:
        return StatOutcome(0.0, 1.0, 0)
    return chi_square(observed, expected)


def _tie_sums(values: np.ndarray) -> Tuple[float, float, float]:
    _, tie_counts = np.unique(values, return_counts=True)
    t = tie_counts[tie_counts > 1].astype(float)
    return (
        float(np.sum(t * (t - 1) * (2 * t + 5))),
        float(np.sum(t * (t - 1) * (t - 2))),
        float(np.sum(t * (t - 1))),
    )


def mann_kendall(values: Sequence[float], covariate: Optional[Sequence[float]] = None) -> TrendOutcome:
    """
    Prueba de tendencia de Mann-Kendall con corrección por empates.

    Con covariable (por ejemplo el tiempo t de cada observación agrupada),
    S = sum_{i<j} sign(t_j - t_i) sign(y_j - y_i); sin ella se usa el orden
    de la serie.

    Args:
        values: Observaciones y
        covariate: Covariable opcional; por defecto 0..n-1

    Returns:
        Estadístico S, varianza, z con corrección de continuidad,
        p-valor bilateral y dirección ("increasing", "decreasing" o "none")
    """
    y = np.asarray(values, dtype=float)
    n = y.size
    x = np.arange(n, dtype=float) if covariate is None else np.asarray(covariate, dtype=float)
    if n < 3 or x.size != n:
        raise ValidationError("Mann-Kendall requiere al menos 3 observaciones alineadas",
                              {"n": int(n), "covariate": int(x.size)})

    dx = np.sign(x[None, :] - x[:, None])
    dy = np.sign(y[None, :] - y[:, None])
    s = float(np.triu(dx * dy, k=1).sum())

    ty1, ty2, ty3 = _tie_sums(y)
    tx1, tx2, tx3 = _tie_sums(x)
    variance = (n * (n - 1) * (2 * n + 5) - ty1 - tx1) / 18.0
    variance += ty2 * tx2 / (9.0 * n * (n - 1) * (n - 2))
    variance += ty3 * tx3 / (2.0 * n * (n - 1))

    if variance <= 0:
        return TrendOutcome(s, 0.0, 0.0, 1.0, "none")
    z = (s - np.sign(s)) / np.sqrt(variance)
    pvalue = float(2.0 * stats.norm.sf(abs(z)))
    direction = "increasing" if s > 0 else "decreasing" if s < 0 else "none"
    return TrendOutcome(s, float(variance), float(z), pvalue, direction)


def median_confidence_interval(values: Sequence[float], level: float = 0.95) -> Tuple[float, float]:
    """
    Intervalo de confianza sin supuestos para la mediana por estadísticos de orden.

    Args:
        values: Muestra
        level: Nivel de confianza

    Returns:
        Límites inferior y superior
    """
    x = np.sort(np.asarray(values, dtype=float))
    n = x.size
    if n == 0:
        return (float("nan"), float("nan"))
    j = int(stats.binom.ppf((1.0 - level) / 2.0, n, 0.5))
    if j < 1:
        return (float(x[0]), float(x[-1]))
    return (float(x[j - 1]), float(x[n - j]))


def is_non_decreasing(values: Sequence[float], tol: float = 0.0) -> bool:
    """Verdadero si cada valor es mayor o igual que el anterior menos tol."""
    v = np.asarray(values, dtype=float)
    return bool(np.all(np.diff(v) >= -tol))


def is_strictly_monotone(values: Sequence[float], increasing: bool) -> bool:
    """Verdadero si la secuencia es estrictamente creciente o decreciente."""
    d = np.diff(np.asarray(values, dtype=float))
    return bool(np.all(d > 0)) if increasing else bool(np.all(d < 0))


def chi_square_pooled(observed: Sequence[float], expected: Sequence[float],
                      min_expected: float = 5.0) -> StatOutcome:
    """
    Chi-cuadrado con las celdas de esperado pequeño fusionadas en una sola.

    Las celdas con esperado < min_expected se acumulan en una celda final;
    si esta sigue por debajo del mínimo se suma a la celda de menor esperado
    restante.

    Args:
        observed: Conteos observados
        expected: Conteos esperados (mismo orden)
        min_expected: Esperado mínimo por celda

    Returns:
        Resultado chi-cuadrado
    """
    observed = np.ravel(np.asarray(observed, dtype=float))
    expected = np.ravel(np.asarray(expected, dtype=float))
    if observed.size != expected.size:
        raise ValidationError("observed y expected deben tener el mismo tamaño",
                              {"observed": int(observed.size), "expected": int(expected.size)})
    small = expected < min_expected
    obs = list(observed[~small])
    exp = list(expected[~small])
    if np.any(small):
        rest_obs, rest_exp = float(observed[small].sum()), float(expected[small].sum())
        if rest_exp >= min_expected or not exp:
            obs.append(rest_obs)
            exp.append(rest_exp)
        else:
            j = int(np.argmin(exp))
            obs[j] += rest_obs
            exp[j] += rest_exp
    if len(obs) < 2:
        return StatOutcome(0.0, 1.0, 0)
    return chi_square(obs, exp)
