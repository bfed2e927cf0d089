"""domain/model/potential.py"""

import numpy as np

from pam_localisation.common.exceptions.domain_exceptions import OutOfWindowError, ValidationError
from pam_localisation.common.utils.log import logger
from pam_localisation.domain.entities.potential_field import PotentialField
from pam_localisation.domain.entities.regime_profile import RegimeProfile
from pam_localisation.domain.model.pareto import check_alpha, pareto_quantile
from pam_localisation.domain.model.rng import Stream, site_uniforms


def build_potential(profile: RegimeProfile, L: int, seed: int) -> PotentialField:
    """
    Genera el potencial de Pareto parcialmente duplicado en [-L, L].

    xi(n) sale del flujo Base, xi(-n) del flujo Mirror salvo que n pertenezca
    a D, es decir site_uniform(seed, n, Dup) < p(n); en D se copia xi(n).

    Args:
        profile: Perfil de duplicación
        L: Semiancho de la ventana (>= 1)
        seed: Semilla de 64 bits

    Returns:
        Campo inmutable
    """
    check_alpha(profile.alpha)
    if int(L) < 1:
        raise ValidationError("La ventana debe ser L >= 1", {"L": L})
    L = int(L)

    xi_pos = pareto_quantile(site_uniforms(seed, Stream.BASE, 0, L + 1), profile.alpha)
    xi_mirror = pareto_quantile(site_uniforms(seed, Stream.MIRROR, 1, L + 1), profile.alpha)
    u_dup = site_uniforms(seed, Stream.DUP, 1, L + 1)

    n = np.arange(1, L + 1)
    dup = np.empty(L + 1, dtype=bool)
    dup[0] = True
    dup[1:] = u_dup < profile.p(n)

    xi_neg = np.where(dup[1:], xi_pos[1:], xi_mirror)
    xi = np.concatenate([xi_neg[::-1], xi_pos])

    logger.debug(f"Campo generado: L={L}, seed={seed}, |E|={int((~dup).sum())}, perfil={profile.describe()}")
    return PotentialField(alpha=profile.alpha, window=L, seed=int(seed), profile=profile, xi=xi, dup=dup)


def count_nondup(field: PotentialField, n: int) -> int:
    """
    N(n) = |E ∩ [1, n]|.

    Raises:
        OutOfWindowError: Si n supera la ventana
        ValidationError: Si n es negativo
    """
    n = int(n)
    if n < 0:
        raise ValidationError("n debe ser no negativo", {"n": n})
    if n > field.L:
        raise OutOfWindowError(n, field.L)
    return int(field.nondup_cumcount[n])
