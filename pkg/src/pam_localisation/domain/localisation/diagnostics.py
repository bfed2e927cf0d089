"""domain/localisation/diagnostics.py"""

import math
from dataclasses import dataclass

import numpy as np

from pam_localisation.common.utils.log import logger
from pam_localisation.common.value_objects.localisation import LocalisationSites, SiteSetK
from pam_localisation.common.value_objects.scales import Scales
from pam_localisation.domain.entities.potential_field import PotentialField


@dataclass(frozen=True)
class ZetaValue:
    """zeta reescalado, zeta_t sin reescalar y bandera de E vacío bajo Z1."""
    value: float
    raw: float
    empty: bool


def zeta_statistic(field: PotentialField, sites: LocalisationSites, scales: Scales) -> ZetaValue:
    """
    lambda(t)^{1/2} zeta_t / a_t^{2/alpha}, zeta_t = max{xi(z): |z| en E, |z| < Z1}.

    Si no hay sitios de E bajo Z1 se devuelve el centinela 0 con bandera.
    """
    z1 = abs(int(sites.z1))
    mask = field.nondup[1:z1]
    if not np.any(mask):
        logger.debug(f"E vacío bajo Z1={z1}: zeta centinela 0")
        return ZetaValue(value=0.0, raw=0.0, empty=True)
    raw = float(max(field.xi_positive[1:z1][mask].max(), field.xi_negative[1:z1][mask].max()))
    value = math.sqrt(scales.lambda_t) * raw / scales.a_t ** (2.0 / scales.alpha)
    return ZetaValue(value=value, raw=raw, empty=False)


def taylor_proxy(field: PotentialField, kset: SiteSetK, xi_z1: float) -> float:
    """Aproximación de primer orden de Q_t: (sum_{K+} xi(z) - sum_{K-} xi(z)) / xi(Z1)."""
    if kset.size == 0:
        return 0.0
    plus = math.fsum(np.atleast_1d(field.xi_at(kset.k_plus)))
    minus = math.fsum(np.atleast_1d(field.xi_at(kset.k_minus)))
    return (plus - minus) / xi_z1
