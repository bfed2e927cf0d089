"""application/services/localisation_service.py"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from pam_localisation.application.builders.report_builder import ReportBuilder
from pam_localisation.common.utils.log import logger
from pam_localisation.common.value_objects.localisation import EventFlags, LocalisationSites, MomentStats, SiteSetK
from pam_localisation.common.value_objects.scales import Scales
from pam_localisation.domain.entities.potential_field import PotentialField
from pam_localisation.domain.entities.regime_profile import RegimeKind, RegimeProfile
from pam_localisation.domain.localisation.events import check_events
from pam_localisation.domain.localisation.ksets import build_K, theta
from pam_localisation.domain.localisation.maximisers import find_maximisers
from pam_localisation.domain.localisation.moments import moment_stats
from pam_localisation.domain.localisation.scales import make_scales
from pam_localisation.domain.model.counting import resolve_regime
from pam_localisation.interfaces.models.result_models import LocalisationReport


@dataclass(frozen=True)
class LocalisationSnapshot:
    """Resultado completo de la localización de un campo en un tiempo t."""
    scales: Scales
    sites: LocalisationSites
    kset: SiteSetK
    stats: MomentStats
    flags: EventFlags
    regime: RegimeKind


class LocalisationService:
    """
    Servicio que encadena maximizadores, umbral, conjuntos K, momentos y eventos.
    """

    def __init__(self, profile: RegimeProfile, regime: Optional[RegimeKind] = None):
        """
        Inicializa el servicio.

        Args:
            profile: Perfil de duplicación
            regime: Régimen declarado (por defecto el del perfil o su clasificación)
        """
        self.profile = profile
        self.regime = resolve_regime(profile, regime)

    def localise(self, field: PotentialField, t: float, radius: Optional[int] = None,
                 scales: Optional[Scales] = None) -> LocalisationSnapshot:
        """
        Localiza Z1, Z2, Ze y calcula K_t, momentos y eventos.

        Con Z1 = 0 el conjunto K queda vacío.

        Args:
            field: Campo de potencial
            t: Tiempo
            radius: Radio de búsqueda explícito
            scales: Escalas ya calculadas (opcional)

        Returns:
            Instantánea de la localización

        Raises:
            InsufficientWindowError: Si la ventana es menor que el radio
        """
        scales = scales or make_scales(t, field.alpha)
        sites = find_maximisers(field, t, scales, radius)
        scales = scales.with_radius(sites.z1)
        theta_t = theta(scales, self.profile, self.regime)
        if sites.z1 > 0:
            kset = build_K(field, sites, theta_t)
        else:
            logger.warning(f"Z1=0 en t={t}: K vacío")
            kset = SiteSetK(theta_t=theta_t, k_plus=np.empty(0, dtype=int), k_minus=np.empty(0, dtype=int))
        stats = moment_stats(field, sites, kset, scales)
        flags = check_events(field, sites, kset, stats, scales, self.profile, self.regime)
        return LocalisationSnapshot(scales=scales, sites=sites, kset=kset, stats=stats, flags=flags,
                                    regime=self.regime)

    def report(self, field: PotentialField, snapshot: LocalisationSnapshot) -> LocalisationReport:
        """Ensambla el LocalisationReport de una instantánea."""
        return (ReportBuilder()
                .with_field(field, snapshot.regime)
                .with_scales(snapshot.scales)
                .with_sites(snapshot.sites)
                .with_k_set(snapshot.kset)
                .with_moments(snapshot.stats)
                .with_events(snapshot.flags)
                .build())
