"""interfaces/models/result_models.py"""

from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, field_validator

from pam_localisation.common.utils.json_utils import restore_float, sanitize


class _SentinelModel(BaseModel):
    """Base que acepta los centinelas "inf", "-inf" y "nan" al leer registros."""

    @field_validator("*", mode="before")
    @classmethod
    def _restore(cls, value: Any) -> Any:
        return restore_float(value)

    def to_record(self) -> Dict[str, Any]:
        """Diccionario serializable con centinelas para los flotantes no finitos."""
        return sanitize(self.model_dump(mode="python"))


class TimePointRecord(_SentinelModel):
    """Observables y estadísticos de una réplica en un tiempo t."""
    t: float
    log_ratio: float
    infinite_ratio: bool = False
    two_site_mass: float
    top_site_mass: float
    log_mass: float
    leak_rate: float
    z1: int
    z2: Optional[int] = None
    z1_star: int
    stable: Optional[bool] = None
    xi_z1: float
    n_z1: int
    eta_z1: float
    theta_t: float
    k_plus: int
    k_minus: int
    m_plus: float
    m_minus: float
    sig_plus: float
    sig_minus: float
    m_bar: float
    s_bar_inv: float
    q_plus: float
    q_minus: float
    q_t: float
    conditional_variance: Optional[float] = None
    taylor_proxy: float = 0.0
    zeta: float = 0.0
    zeta_raw: float = 0.0
    zeta_empty: bool = True
    events: Dict[str, Any] = Field(default_factory=dict)


class PointFailure(_SentinelModel):
    """Error de una réplica en un tiempo concreto de la malla."""
    t: float
    error: str
    error_type: str


class ReplicateResult(_SentinelModel):
    """
    Registro de una réplica.

    Los tiempos que fallan quedan en `failures` sin descartar los demás;
    status es 'failed' solo si no hay ningún punto válido.
    """
    index: int
    seed: int
    status: str = "ok"
    error: Optional[str] = None
    error_type: Optional[str] = None
    points: List[TimePointRecord] = Field(default_factory=list)
    failures: List[PointFailure] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def point(self, t: float) -> Optional[TimePointRecord]:
        return next((p for p in self.points if p.t == t), None)


class Outcome(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"


class Verdict(_SentinelModel):
    """Veredicto de una suite con sus estadísticos."""
    suite: str
    outcome: Outcome
    statistics: Dict[str, Any] = Field(default_factory=dict)
    per_t: List[Dict[str, Any]] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.outcome == Outcome.PASS


class LocalisationReport(_SentinelModel):
    """Maximizadores, conjuntos K, momentos, eventos y Q_t de un campo en un tiempo t."""
    t: float
    seed: Optional[int] = None
    alpha: float
    regime: str
    scales: Dict[str, Any] = Field(default_factory=dict)
    sites: Dict[str, Any] = Field(default_factory=dict)
    xi: Dict[str, Any] = Field(default_factory=dict)
    k_set: Dict[str, Any] = Field(default_factory=dict)
    moments: Dict[str, Any] = Field(default_factory=dict)
    events: Dict[str, Any] = Field(default_factory=dict)
    q_t: float = 0.0
