"""domain/localisation/ksets.py"""

import math

import numpy as np

from pam_localisation.common.exceptions.domain_exceptions import DegenerateMaximiserError, OutOfWindowError
from pam_localisation.common.value_objects.localisation import LocalisationSites, SiteSetK
from pam_localisation.common.value_objects.scales import Scales
from pam_localisation.domain.entities.potential_field import PotentialField
from pam_localisation.domain.entities.regime_profile import RegimeKind, RegimeProfile
from pam_localisation.domain.model.counting import eta


def theta(scales: Scales, profile: RegimeProfile, regime: RegimeKind) -> float:
    """
    Umbral theta_t de los sitios que portan las fluctuaciones.

    1 en los regímenes subcrítico y crítico; en el supercrítico
    f_t [eta(r_t)/r_t^{2/alpha}]^{1/(alpha-2)} (alpha > 2) o
    a_t exp(-r_t/(eta(r_t) f_t)) (alpha = 2). Siempre >= 1.
    """
    regime = RegimeKind(regime)
    if regime != RegimeKind.SUPERCRITICAL:
        return 1.0
    alpha = scales.alpha
    eta_r = eta(profile, scales.r_t)
    if alpha > 2:
        value = scales.f_t * (eta_r / scales.r_t ** (2.0 / alpha)) ** (1.0 / (alpha - 2.0))
    elif eta_r > 0:
        value = scales.a_t * math.exp(-scales.r_t / (eta_r * scales.f_t))
    else:
        value = 0.0
    return max(1.0, value)


def build_K(field: PotentialField, sites: LocalisationSites, theta_t: float) -> SiteSetK:
    """
    K+ = {z en (0, Z1): z en E, xi(z) > theta_t} y K- su reflejo en (-Z1, 0).

    Raises:
        DegenerateMaximiserError: Si Z1 <= 0
        OutOfWindowError: Si Z1 excede la ventana
    """
    z1 = int(sites.z1)
    if z1 <= 0:
        raise DegenerateMaximiserError("build_K requiere Z1 > 0", {"z1": z1})
    if z1 > field.L:
        raise OutOfWindowError(z1, field.L)
    n = np.arange(1, z1)
    in_e = field.nondup[1:z1]
    k_plus = n[in_e & (field.xi_positive[1:z1] > theta_t)]
    k_minus = -n[in_e & (field.xi_negative[1:z1] > theta_t)]
    return SiteSetK(theta_t=float(theta_t), k_plus=k_plus, k_minus=k_minus)
