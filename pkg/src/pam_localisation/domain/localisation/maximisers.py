"""domain/localisation/maximisers.py"""

from dataclasses import replace
from typing import Optional, Tuple

import numpy as np

from pam_localisation.common.exceptions.domain_exceptions import InsufficientWindowError
from pam_localisation.common.utils.log import logger
from pam_localisation.common.value_objects.localisation import LocalisationSites
from pam_localisation.common.value_objects.scales import Scales
from pam_localisation.domain.entities.potential_field import PotentialField
from pam_localisation.domain.localisation.scales import psi_values


def _argmax(values: np.ndarray) -> Tuple[Optional[int], float]:
    """Primer índice del máximo (desempate por |z| menor), o None si todo es -inf."""
    index = int(np.argmax(values))
    best = float(values[index])
    if not np.isfinite(best):
        return None, -np.inf
    return index, best


def _search(field: PotentialField, t: float, radius: int) -> LocalisationSites:
    n = np.arange(radius + 1)
    psi_pos = psi_values(t, n, field.xi_positive[:radius + 1])
    psi_neg = psi_values(t, n, field.xi_negative[:radius + 1])
    dup = field.dup[:radius + 1]

    # Sobre D basta el representante positivo del par
    psi_d = np.where(dup, psi_pos, -np.inf)
    z1, psi_z1 = _argmax(psi_d)
    psi_d[z1] = -np.inf
    z2, psi_z2 = _argmax(psi_d)

    # Sobre -E ∪ E: orden por |z| y luego signo positivo
    pairs = np.stack([np.where(dup, -np.inf, psi_pos), np.where(dup, -np.inf, psi_neg)], axis=1)
    flat, psi_ze = _argmax(pairs.ravel())
    ze = None
    if flat is not None:
        n_e, side = divmod(flat, 2)
        ze = n_e if side == 0 else -n_e

    z1_star, psi_z1_star = _argmax(psi_pos)
    rest = psi_pos.copy()
    rest[z1_star] = -np.inf
    z2_star, psi_z2_star = _argmax(rest)

    return LocalisationSites(
        z1=z1, z2=z2, ze=ze, z1_star=z1_star, z2_star=z2_star,
        psi_z1=psi_z1, psi_z2=psi_z2, psi_ze=psi_ze,
        psi_z1_star=psi_z1_star, psi_z2_star=psi_z2_star,
        radius=radius,
    )


def find_maximisers(field: PotentialField, t: float, scales: Scales,
                    radius: Optional[int] = None) -> LocalisationSites:
    """
    Maximizadores exactos de Psi_t sobre D, D \\ {Z1}, ±E y N0 dentro del radio.

    El radio por defecto es rho_0 = ceil(4 g_t r_t). Si la ventana alcanza
    2 rho_0 se repite la búsqueda con el radio doble y se marca la
    estabilidad; en otro caso la bandera queda en None.

    Args:
        field: Campo de potencial
        t: Tiempo
        scales: Escalas de t
        radius: Radio explícito (opcional)

    Returns:
        Sitios de localización

    Raises:
        InsufficientWindowError: Si la ventana es menor que el radio
    """
    rho = int(radius) if radius is not None else scales.search_radius
    if field.L < rho:
        logger.error(f"Ventana L={field.L} menor que el radio de búsqueda {rho}")
        raise InsufficientWindowError(field.L, rho)

    sites = _search(field, t, rho)
    stable: Optional[bool] = None
    if field.L >= 2 * rho:
        doubled = _search(field, t, 2 * rho)
        stable = doubled.z1 == sites.z1 and doubled.z2 == sites.z2
        if not stable:
            changed = [f"{name}={old} -> {new}" for name, old, new in
                       (("z1", sites.z1, doubled.z1), ("z2", sites.z2, doubled.z2)) if old != new]
            logger.warning(f"Maximizador inestable al duplicar el radio: {', '.join(changed)}")
    else:
        logger.debug(f"Sin verificación de estabilidad: L={field.L} < 2*rho={2 * rho}")

    return replace(sites, stable=stable)
