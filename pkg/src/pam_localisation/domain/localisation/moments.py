"""domain/localisation/moments.py"""

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
from scipy import integrate

from pam_localisation.common.exceptions.domain_exceptions import DomainError, NumericalError, ValidationError
from pam_localisation.common.utils.log import logger
from pam_localisation.common.utils.statistics import StatOutcome, ks_one_sample
from pam_localisation.common.value_objects.localisation import LocalisationSites, MomentStats, SiteSetK
from pam_localisation.common.value_objects.scales import Scales
from pam_localisation.domain.entities.potential_field import PotentialField
from pam_localisation.domain.model.pareto import pareto_cdf, pareto_mean, sigma_squared
from pam_localisation.domain.model.potential import count_nondup


def q_values(xi: np.ndarray, xi_z1: float) -> np.ndarray:
    """Q_t(z) = -log(1 - xi(z)/xi(Z1)) si xi(z) < xi(Z1), 0 en otro caso."""
    xi = np.asarray(xi, dtype=float)
    below = xi < xi_z1
    out = np.zeros_like(xi)
    out[below] = -np.log1p(-xi[below] / xi_z1)
    return out


def m_bar(n_z1: int, xi_z1: float, gamma: float) -> float:
    """M̄_t = N(Z1)/xi(Z1) (1 + gamma/xi(Z1))."""
    return n_z1 / xi_z1 * (1.0 + gamma / xi_z1)


def s_bar_inv(n_z1: int, xi_z1: float, gamma: float) -> float:
    """1/S̄_t = xi(Z1)/N(Z1)^{1/2} (1 - gamma/xi(Z1)); infinito si N(Z1) = 0."""
    if n_z1 == 0:
        return math.inf
    return xi_z1 / math.sqrt(n_z1) * (1.0 - gamma / xi_z1)


def _side(values: np.ndarray, xi_z1: float) -> Tuple[float, float, float, int]:
    below = values < xi_z1
    gaps = xi_z1 - values[below]
    m = float(np.sum(1.0 / gaps))
    sig = float(math.sqrt(np.sum(1.0 / gaps ** 2)))
    q = float(np.sum(q_values(values, xi_z1)))
    return m, sig, q, int(np.count_nonzero(~below))


def moment_stats(field: PotentialField, sites: LocalisationSites, kset: SiteSetK, scales: Scales) -> MomentStats:
    """
    Momentos M_t±, Sigma_t±, sus aproximaciones M̄_t, 1/S̄_t y Q_t±.

    Los sitios de K con xi(z) >= xi(Z1) aportan 0 a Q y se excluyen de M y
    Sigma; el número de excluidos queda registrado.
    """
    xi_z1 = field.xi_at(sites.z1)
    gamma = pareto_mean(field.alpha)
    m_p, sig_p, q_p, ex_p = _side(field.xi_at(kset.k_plus), xi_z1)
    m_m, sig_m, q_m, ex_m = _side(field.xi_at(kset.k_minus), xi_z1)
    excluded = ex_p + ex_m
    if excluded:
        logger.warning(f"{excluded} sitios de K con xi >= xi(Z1) excluidos de M y Sigma (t={scales.t})")
    n_z1 = count_nondup(field, sites.z1)
    return MomentStats(
        m_plus=m_p, m_minus=m_m, sig_plus=sig_p, sig_minus=sig_m,
        m_bar=m_bar(n_z1, xi_z1, gamma), s_bar_inv=s_bar_inv(n_z1, xi_z1, gamma),
        gamma=gamma, q_plus=q_p, q_minus=q_m, q_t=q_p - q_m,
        n_z1=n_z1, excluded=excluded, empty=kset.size == 0,
    )


@dataclass(frozen=True)
class QMoment:
    """Momento condicional exacto (cuadratura) frente a su forma asintótica."""
    exact: float
    asymptotic: float

    @property
    def relative_gap(self) -> float:
        return abs(self.exact - self.asymptotic) / abs(self.asymptotic)


def _integrand(w: float, alpha: float, n: int) -> float:
    return w ** n * alpha * (-math.expm1(-w)) ** (-alpha - 1.0) * math.exp(-w)


def _quad(func, lo: float, hi: float) -> float:
    result = integrate.quad(func, lo, hi, epsabs=0.0, epsrel=1e-11, limit=400, full_output=1)
    if len(result) > 3:
        logger.error(f"Cuadratura sin convergencia en [{lo}, {hi}]: {result[3]}")
        raise NumericalError("La cuadratura no convergió", {"lo": lo, "hi": hi, "message": str(result[3])})
    return float(result[0])


def _q_moment_exact(ratio: float, alpha: float, n: int) -> float:
    # Cambio w = -log(1-y); en [w_s, 1] se integra en log w
    w_s = -math.log1p(-ratio)
    total = 0.0
    if w_s < 1.0:
        total += _quad(lambda v: _integrand(math.exp(v), alpha, n) * math.exp(v), math.log(w_s), 0.0)
    total += _quad(lambda w: _integrand(w, alpha, n), max(w_s, 1.0), math.inf)
    return ratio ** alpha * total


def analytic_q_moments(theta_t: float, xi_z1: float, alpha: float, n: int) -> QMoment:
    """
    E[Q_t(z)^n | F_t] para z en K, con xi(z) ~ Pareto(alpha) truncada a (theta_t, inf).

    exacto = (theta/xi)^alpha ∫_{theta/xi}^1 [-log(1-y)]^n alpha y^{-alpha-1} dy;
    asintótico alpha/(alpha-n) (theta/xi)^n, o 2 (theta/xi)^2 log(xi/theta) si
    alpha = 2 y n = 2.

    Raises:
        ValidationError: Si n no es 1 ni 2
        DomainError: Si theta/xi >= 1/2
        NumericalError: Si la cuadratura no converge
    """
    if n not in (1, 2):
        raise ValidationError("n debe ser 1 o 2", {"n": n})
    ratio = theta_t / xi_z1
    if not 0.0 < ratio < 0.5:
        raise DomainError("Se requiere 0 < theta/xi < 1/2", {"theta_over_xi": ratio})
    exact = _q_moment_exact(ratio, alpha, n)
    if alpha == 2 and n == 2:
        asymptotic = 2.0 * ratio ** 2 * math.log(1.0 / ratio)
    else:
        asymptotic = alpha / (alpha - n) * ratio ** n
    return QMoment(exact=exact, asymptotic=asymptotic)


def conditional_variance(theta_t: float, xi_z1: float, alpha: float) -> QMoment:
    """
    Var[Q_t(z) | F_t] exacta frente a sigma^2 (theta/xi)^2 (alpha > 2) o
    2 (theta/xi)^2 log(xi/theta) (alpha = 2).
    """
    m1 = analytic_q_moments(theta_t, xi_z1, alpha, 1)
    m2 = analytic_q_moments(theta_t, xi_z1, alpha, 2)
    ratio = theta_t / xi_z1
    if alpha > 2:
        asymptotic = sigma_squared(alpha) * ratio ** 2
    else:
        asymptotic = m2.asymptotic
    return QMoment(exact=m2.exact - m1.exact ** 2, asymptotic=asymptotic)


def conditional_law_check(values: Sequence[float], theta_t: float, alpha: float) -> StatOutcome:
    """
    KS de los valores xi(z), z en K, reescalados por theta_t frente a Pareto(alpha).

    Condicionalmente a (D, Z1, K_t) esos valores son i.i.d. Pareto truncada
    a (theta_t, inf), de modo que xi/theta_t es Pareto(alpha).
    """
    scaled = np.asarray(values, dtype=float) / float(theta_t)
    if scaled.size == 0:
        raise ValidationError("No hay valores de K para contrastar")
    return ks_one_sample(scaled, lambda x: pareto_cdf(x, alpha))
