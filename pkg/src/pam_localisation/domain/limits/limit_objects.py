"""domain/limits/limit_objects.py"""

import math
from dataclasses import dataclass
from typing import Iterator, Tuple, Union

import numpy as np
from scipy import integrate
from scipy.optimize import brentq

from pam_localisation.common.exceptions.domain_exceptions import NumericalError, SamplerError, ValidationError
from pam_localisation.common.utils.log import logger
from pam_localisation.domain.model.pareto import check_alpha, sigma_squared


MAX_HALVINGS = 60
_INITIAL_EPS = 1.0


def rho(alpha: float) -> float:
    """Pendiente del borde del soporte y = rho x, rho = 1/(alpha-1)."""
    return 1.0 / (alpha - 1.0)


@dataclass(frozen=True)
class LimitSample:
    """Punto (X1, Y1) maximizador de y - rho x en el proceso de Poisson y B = X1^{1/alpha}/Y1."""
    b: float
    x1: float
    y1: float


@dataclass(frozen=True, eq=False)
class LimitSamples:
    """Lote vectorizado de LimitSample."""
    alpha: float
    x1: np.ndarray
    y1: np.ndarray

    @property
    def b(self) -> np.ndarray:
        return np.power(self.x1, 1.0 / self.alpha) / self.y1

    def __len__(self) -> int:
        return int(self.x1.size)

    def __iter__(self) -> Iterator[LimitSample]:
        for x, y, b in zip(self.x1, self.y1, self.b):
            yield LimitSample(b=float(b), x1=float(x), y1=float(y))


def _frechet_factor(w: float, alpha: float) -> float:
    """exp(-w^{1-alpha}), nulo sin desbordar cuando w es diminuto."""
    if w <= 0 or (1.0 - alpha) * math.log(w) > math.log(745.0):
        return 0.0
    return math.exp(-w ** (1.0 - alpha))


def limit_density(x: Union[float, np.ndarray], y: Union[float, np.ndarray], alpha: float) -> np.ndarray:
    """p(x, y) = alpha y^{-alpha-1} exp(-(y - rho x)^{1-alpha}) en y > rho x, x > 0."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    gap = y - rho(alpha) * x
    inside = (x > 0) & (gap > 0)
    safe_gap = np.where(inside, gap, 1.0)
    safe_y = np.where(inside, y, 1.0)
    value = alpha * safe_y ** (-alpha - 1.0) * np.exp(-safe_gap ** (1.0 - alpha))
    return np.where(inside, value, 0.0)


def density_normalisation(alpha: float) -> Tuple[float, float]:
    """
    ∬ p(x, y) dx dy por cuadratura en las coordenadas (x, w = y - rho x).

    Returns:
        (integral, error estimado)

    Raises:
        NumericalError: Si el error estimado supera 1e-7
    """
    alpha = check_alpha(alpha)
    r = rho(alpha)

    def integrand(x: float, w: float) -> float:
        survival = _frechet_factor(w, alpha)
        return alpha * (w + r * x) ** (-alpha - 1.0) * survival if survival > 0 else 0.0

    value, error = integrate.dblquad(integrand, 0.0, np.inf, 0.0, np.inf, epsabs=1e-11, epsrel=1e-10)
    if error > 1e-7:
        raise NumericalError("Cuadratura de la normalización imprecisa", {"value": value, "error": error})
    return float(value), float(error)


def _gap_max_in_wedge(count: np.ndarray, eps: np.ndarray, u: np.ndarray, alpha: float) -> np.ndarray:
    # Máximo de k gaps i.i.d. con cola (w/eps)^{1-alpha} en (eps, inf)
    return eps * np.power(-np.expm1(np.log(u) / np.maximum(count, 1)), -1.0 / (alpha - 1.0))


def _gap_max_in_annulus(count: np.ndarray, lo: np.ndarray, u: np.ndarray, alpha: float) -> np.ndarray:
    # Máximo de k gaps i.i.d. en (lo, 2 lo] con intensidad (alpha-1) w^{-alpha}
    mass = lo ** (1.0 - alpha) - (2.0 * lo) ** (1.0 - alpha)
    inner = lo ** (1.0 - alpha) - np.power(u, 1.0 / np.maximum(count, 1)) * mass
    return np.power(inner, 1.0 / (1.0 - alpha))


def _x_given_gap(w: np.ndarray, u: np.ndarray, alpha: float) -> np.ndarray:
    # Inversa de F(x | w) = 1 - (1 + rho x / w)^{-alpha}
    return w / rho(alpha) * np.expm1(-np.log1p(-u) / alpha)


def sample_wedge(alpha: float, eps: float, rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
    """
    Todos los puntos del proceso de Poisson en la cuña G_eps = {y > rho x + eps}.

    mu(G_eps) = eps^{1-alpha}; los gaps w = y - rho x tienen cola (w/eps)^{1-alpha}
    y x | w sigue F(x | w) = 1 - (1 + rho x/w)^{-alpha}.
    """
    alpha = check_alpha(alpha)
    if not eps > 0:
        raise ValidationError("eps debe ser positivo", {"eps": eps})
    count = rng.poisson(eps ** (1.0 - alpha))
    w = eps * np.power(1.0 - rng.random(count), -1.0 / (alpha - 1.0))
    x = _x_given_gap(w, rng.random(count), alpha)
    return x, w + rho(alpha) * x


def sample_limit_B(alpha: float, n_samples: int, seed: int) -> LimitSamples:
    """
    Muestrea exactamente (X1, Y1) simulando el proceso en cuñas anidadas.

    Se empieza en G_1; mientras una muestra no tenga puntos en la cuña actual
    se añade el anillo G_{eps/2} \\ G_eps. El primer punto hallado maximiza
    y - rho x, porque ningún punto exterior puede superar su gap.

    Args:
        alpha: Índice de cola (>= 2)
        n_samples: Número de muestras
        seed: Semilla

    Returns:
        Lote de muestras

    Raises:
        SamplerError: Si alguna muestra no encuentra puntos tras 60 mitades
    """
    alpha = check_alpha(alpha)
    if n_samples < 1:
        raise ValidationError("n_samples debe ser positivo", {"n_samples": n_samples})
    rng = np.random.default_rng([int(seed), 0])

    gap = np.full(n_samples, np.nan)
    eps = np.full(n_samples, _INITIAL_EPS)
    count = rng.poisson(_INITIAL_EPS ** (1.0 - alpha), n_samples)
    found = count > 0
    gap[found] = _gap_max_in_wedge(count[found], eps[found], rng.random(int(found.sum())), alpha)

    halvings = 0
    while not np.all(found):
        if halvings >= MAX_HALVINGS:
            logger.error(f"{int((~found).sum())} muestras sin puntos tras {MAX_HALVINGS} mitades")
            raise SamplerError("Tope de mitades alcanzado", {"pending": int((~found).sum())})
        halvings += 1
        pending = ~found
        eps[pending] *= 0.5
        lo = eps[pending]
        mass = lo ** (1.0 - alpha) - (2.0 * lo) ** (1.0 - alpha)
        k = rng.poisson(mass)
        hit = k > 0
        idx = np.flatnonzero(pending)[hit]
        gap[idx] = _gap_max_in_annulus(k[hit], lo[hit], rng.random(int(hit.sum())), alpha)
        found[idx] = True

    x1 = _x_given_gap(gap, rng.random(n_samples), alpha)
    return LimitSamples(alpha=alpha, x1=x1, y1=gap + rho(alpha) * x1)


def critical_reference(alpha: float, beta: float, n: int, seed: int) -> np.ndarray:
    """Muestra de referencia sqrt(2 beta) sigma B N del cociente logarítmico crítico."""
    samples = sample_limit_B(alpha, n, seed)
    normals = np.random.default_rng([int(seed), 1]).standard_normal(n)
    return math.sqrt(2.0 * beta * sigma_squared(alpha)) * samples.b * normals


def variance_reference(alpha: float, beta: float, n: int, seed: int) -> np.ndarray:
    """Muestra de referencia 2 beta sigma^2 B^2 de la varianza condicional crítica."""
    samples = sample_limit_B(alpha, n, seed)
    return 2.0 * beta * sigma_squared(alpha) * samples.b ** 2


def _gap_density(w: float, alpha: float) -> float:
    """Densidad de W = Y1 - rho X1: Fréchet de forma alpha - 1."""
    survival = _frechet_factor(w, alpha)
    return (alpha - 1.0) * w ** (-alpha) * survival if survival > 0 else 0.0


def _x_cdf_given_gap(x: float, w: float, alpha: float) -> float:
    if math.isinf(x) or w <= 0:
        return 1.0
    return -math.expm1(-alpha * math.log1p(rho(alpha) * x / w))


def gap_quantiles(alpha: float, bins: int) -> np.ndarray:
    """Bordes de W en los cuantiles k/bins de la ley de Fréchet (último borde infinito)."""
    p = np.arange(1, bins) / bins
    inner = np.power(-np.log(p), 1.0 / (1.0 - alpha))
    return np.concatenate([[0.0], inner, [np.inf]])


def x_marginal_cdf(x: float, alpha: float) -> float:
    """P(X1 <= x) integrando F(x | w) contra la densidad de W."""
    if x <= 0:
        return 0.0
    value, _ = integrate.quad(lambda w: _gap_density(w, alpha) * _x_cdf_given_gap(x, w, alpha),
                              0.0, np.inf, epsabs=1e-12, epsrel=1e-10, limit=200)
    return float(value)


def x_quantiles(alpha: float, bins: int) -> np.ndarray:
    """Bordes de X1 en los cuantiles k/bins de su marginal (brentq sobre x_marginal_cdf)."""
    edges = [0.0]
    for p in np.arange(1, bins) / bins:
        hi = 1.0
        while x_marginal_cdf(hi, alpha) < p:
            hi *= 2.0
        edges.append(float(brentq(lambda x: x_marginal_cdf(x, alpha) - p, 0.0, hi, xtol=1e-12)))
    edges.append(np.inf)
    return np.asarray(edges)


def cell_probabilities(alpha: float, x_edges: np.ndarray, w_edges: np.ndarray) -> np.ndarray:
    """
    Probabilidad de cada celda [x_i, x_{i+1}) x [w_j, w_{j+1}) bajo p, en coordenadas (x, w).

    La integral en x es cerrada y la de w se hace por cuadratura.
    """
    probs = np.empty((len(x_edges) - 1, len(w_edges) - 1))
    for i in range(len(x_edges) - 1):
        xa, xb = float(x_edges[i]), float(x_edges[i + 1])
        for j in range(len(w_edges) - 1):
            wa, wb = float(w_edges[j]), float(w_edges[j + 1])
            value, _ = integrate.quad(
                lambda w: _gap_density(w, alpha) * (_x_cdf_given_gap(xb, w, alpha) - _x_cdf_given_gap(xa, w, alpha)),
                wa, wb, epsabs=1e-13, epsrel=1e-10, limit=200)
            probs[i, j] = value
    return probs
