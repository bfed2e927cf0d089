"""application/builders/report_builder.py"""

from dataclasses import asdict
from typing import Optional

from pam_localisation.common.value_objects.localisation import EventFlags, LocalisationSites, MomentStats, SiteSetK
from pam_localisation.common.value_objects.scales import Scales
from pam_localisation.domain.entities.potential_field import PotentialField
from pam_localisation.interfaces.models.result_models import LocalisationReport


class ReportBuilder:
    """
    Constructor de LocalisationReport siguiendo el patrón Builder.
    """

    def __init__(self):
        """Inicializa un nuevo constructor de informes."""
        self.reset()

    def reset(self):
        """Reinicia el constructor al estado inicial."""
        self.report = {
            't': None,
            'seed': None,
            'alpha': None,
            'regime': None,
            'scales': {},
            'sites': {},
            'xi': {},
            'k_set': {},
            'moments': {},
            'events': {},
            'q_t': 0.0,
        }
        self._field: Optional[PotentialField] = None
        return self

    def with_field(self, field: PotentialField, regime: str):
        """
        Establece el campo del que se leen los valores de xi.

        Args:
            field: Campo de potencial
            regime: Régimen efectivo

        Returns:
            El constructor para encadenamiento de métodos
        """
        self._field = field
        self.report['seed'] = field.seed
        self.report['alpha'] = field.alpha
        self.report['regime'] = str(getattr(regime, 'value', regime))
        return self

    def with_scales(self, scales: Scales):
        """Establece t y las escalas asintóticas."""
        self.report['t'] = scales.t
        self.report['scales'] = asdict(scales)
        return self

    def with_sites(self, sites: LocalisationSites):
        """
        Establece los maximizadores y el potencial en cada uno.

        Raises:
            ValueError: Si no se ha establecido el campo previamente
        """
        if self._field is None:
            raise ValueError("Debe establecer el campo primero con with_field()")
        self.report['sites'] = asdict(sites)
        self.report['xi'] = {
            name: (self._field.xi_at(site) if site is not None else None)
            for name, site in (('z1', sites.z1), ('z2', sites.z2), ('ze', sites.ze),
                               ('z1_star', sites.z1_star), ('z2_star', sites.z2_star))
        }
        return self

    def with_k_set(self, kset: SiteSetK):
        """Establece K+ y K- con sus tamaños."""
        self.report['k_set'] = {
            'theta_t': kset.theta_t,
            'k_plus': kset.k_plus.tolist(),
            'k_minus': kset.k_minus.tolist(),
            'size_plus': kset.size_plus,
            'size_minus': kset.size_minus,
        }
        return self

    def with_moments(self, stats: MomentStats):
        """Establece los momentos condicionales y Q_t."""
        self.report['moments'] = asdict(stats)
        self.report['q_t'] = stats.q_t
        return self

    def with_events(self, flags: EventFlags):
        """Establece las banderas de eventos y sus cláusulas."""
        self.report['events'] = flags.as_dict()
        return self

    def build(self) -> LocalisationReport:
        """
        Construye el informe.

        Raises:
            ValueError: Si faltan el campo o las escalas
        """
        if self._field is None or self.report['t'] is None:
            raise ValueError("El informe requiere campo y escalas")
        return LocalisationReport(**self.report)
