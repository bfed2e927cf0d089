"""domain/localisation/events.py"""

import math
from typing import Dict, Optional, Tuple

import numpy as np

from pam_localisation.common.utils.log import logger
from pam_localisation.common.value_objects.localisation import EventFlags, LocalisationSites, MomentStats, SiteSetK
from pam_localisation.common.value_objects.scales import Scales, lam
from pam_localisation.domain.entities.potential_field import PotentialField
from pam_localisation.domain.entities.regime_profile import RegimeKind, RegimeProfile
from pam_localisation.domain.model.counting import eta, resolve_regime


def _inside(value: float, lower: float, upper: float) -> bool:
    return bool(lower < value < upper)


def _gap_scan(field: PotentialField, z1: int, xi_z1: float, scales: Scales) -> Tuple[bool, bool]:
    """(xi(Z1) - xi(z))/a_t > f_t para |z| <= R_t salvo ±Z1; devuelve (cláusula, truncado)."""
    r_t = scales.R_t if scales.R_t is not None else abs(z1) * (1.0 + scales.f_t)
    reach = int(math.floor(r_t))
    truncated = reach > field.L
    if truncated:
        logger.warning(f"Barrido de brecha truncado a la ventana: R_t={r_t:.1f} > L={field.L}")
        reach = field.L
    z = np.arange(-reach, reach + 1)
    z = z[np.abs(z) != abs(z1)]
    if z.size == 0:
        return True, truncated
    gaps = (xi_z1 - field.xi_at(z)) / scales.a_t
    return bool(np.all(gaps > scales.f_t)), truncated


def _e1(field: PotentialField, sites: LocalisationSites, scales: Scales) -> Tuple[Dict[str, bool], bool]:
    z1 = sites.z1
    xi_z1 = field.xi_at(z1)
    psi_z2 = sites.psi_z2 if sites.z2 is not None else -math.inf
    potential_gap, truncated = _gap_scan(field, z1, xi_z1, scales)
    clauses = {
        "z1_scale": _inside(z1 / scales.r_t, scales.f_t, scales.g_t),
        "xi_scale": _inside(xi_z1 / scales.a_t, scales.f_t, scales.g_t),
        "psi_gap": bool((sites.psi_z1 - psi_z2) / scales.a_t > scales.f_t),
        "e_below_d2": sites.ze is None or bool(sites.psi_ze < psi_z2),
        "potential_gap": potential_gap,
    }
    return clauses, truncated


def _e2(field: PotentialField, sites: LocalisationSites, kset: SiteSetK,
        scales: Scales, profile: RegimeProfile) -> Dict[str, bool]:
    z1 = sites.z1
    alpha = field.alpha
    xi_z1 = field.xi_at(z1)

    eta_r = eta(profile, scales.r_t)
    k_size = eta_r > 0 and _inside(kset.theta_t ** alpha * kset.size / eta_r, scales.f_t, scales.g_t)

    # [Z1 - alpha, Z1 + alpha] ∩ N dentro de D
    lo = max(0, int(math.ceil(z1 - alpha)))
    hi = int(math.floor(z1 + alpha))
    if hi > field.L:
        logger.warning(f"Vecindario de Z1={z1} fuera de la ventana L={field.L}")
        dup_neighbourhood = False
    else:
        dup_neighbourhood = bool(np.all(field.dup[lo:hi + 1]))

    offsets = np.arange(-int(math.floor(alpha)), int(math.floor(alpha)) + 1)
    near = z1 + offsets[offsets != 0]
    near = near[np.abs(near) <= field.L]
    local_peak = bool(np.all(2.0 * field.xi_at(near) < xi_z1))

    return {"k_size": bool(k_size), "dup_neighbourhood": dup_neighbourhood, "local_peak": local_peak}


def _inverse(value: float) -> float:
    return 1.0 / value if value > 0 else math.inf


def _ecr(stats: MomentStats, scales: Scales) -> Dict[str, bool]:
    a_t, f_t, g_t = scales.a_t, scales.f_t, scales.g_t
    lam_r = lam(scales.alpha, scales.r_t)
    s_inv = stats.s_bar_inv
    return {
        "m_bar_small": bool(lam_r / a_t * stats.m_bar < g_t),
        "m_plus": bool(a_t * abs(stats.m_plus - stats.m_bar) < g_t),
        "m_minus": bool(a_t * abs(stats.m_minus - stats.m_bar) < g_t),
        "s_bar": _inside(s_inv / math.sqrt(lam_r), f_t, g_t),
        "sig_plus": bool(a_t ** 2 * abs(_inverse(stats.sig_plus) - s_inv) < g_t),
        "sig_minus": bool(a_t ** 2 * abs(_inverse(stats.sig_minus) - s_inv) < g_t),
    }


def check_events(field: PotentialField, sites: LocalisationSites, kset: SiteSetK, stats: MomentStats,
                 scales: Scales, profile: RegimeProfile, regime: Optional[RegimeKind] = None) -> EventFlags:
    """
    Evalúa literalmente las cláusulas de los eventos E1, E2 y Ecr.

    E1: f < Z1/r < g, f < xi(Z1)/a < g, (Psi(Z1) - Psi(Z2))/a > f,
    Psi(Ze) < Psi(Z2) y la brecha de potencial en |z| <= R_t sin ±Z1.
    E2: f < theta^alpha |K|/eta(r) < g, [Z1-alpha, Z1+alpha] ∩ N ⊆ D y
    2 xi(z) < xi(Z1) para 0 < |z - Z1| <= alpha.
    Ecr solo aplica en el régimen crítico; fuera de él queda vacío (verdadero)
    y marcado como no aplicable.

    Args:
        field: Campo de potencial
        sites: Maximizadores de Psi_t
        kset: Conjunto K_t
        stats: Momentos condicionales
        scales: Escalas de t (R_t opcional)
        profile: Perfil de duplicación
        regime: Régimen declarado (por defecto el del perfil)

    Returns:
        Banderas con sus cláusulas
    """
    regime = resolve_regime(profile, regime)
    e1_clauses, truncated = _e1(field, sites, scales)
    e2_clauses = _e2(field, sites, kset, scales, profile)
    applicable = regime == RegimeKind.CRITICAL
    ecr_clauses = _ecr(stats, scales) if applicable else {}
    flags = EventFlags(
        e1_clauses=e1_clauses,
        e2_clauses=e2_clauses,
        ecr_clauses=ecr_clauses,
        ecr_applicable=applicable,
        gap_scan_truncated=truncated,
    )
    logger.debug(f"Eventos t={scales.t}: e1={flags.e1} e2={flags.e2} ecr={flags.ecr}")
    return flags
