"""common/value_objects/localisation.py"""

from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np


@dataclass(frozen=True)
class LocalisationSites:
    """Maximizadores de Psi_t y sus valores."""
    z1: int
    z2: Optional[int]
    ze: Optional[int]
    z1_star: int
    z2_star: Optional[int]
    psi_z1: float
    psi_z2: float
    psi_ze: float
    psi_z1_star: float
    psi_z2_star: float
    radius: int
    stable: Optional[bool] = None


@dataclass(frozen=True, eq=False)
class SiteSetK:
    """Sitios no duplicados entre -Z1 y Z1 con potencial sobre el umbral."""
    theta_t: float
    k_plus: np.ndarray
    k_minus: np.ndarray

    @property
    def size_plus(self) -> int:
        return int(self.k_plus.size)

    @property
    def size_minus(self) -> int:
        return int(self.k_minus.size)

    @property
    def size(self) -> int:
        return self.size_plus + self.size_minus


@dataclass(frozen=True)
class MomentStats:
    """Momentos condicionales M, Sigma, sus aproximaciones y Q_t."""
    m_plus: float
    m_minus: float
    sig_plus: float
    sig_minus: float
    m_bar: float
    s_bar_inv: float
    gamma: float
    q_plus: float
    q_minus: float
    q_t: float
    n_z1: int
    excluded: int = 0
    empty: bool = False


@dataclass(frozen=True)
class EventFlags:
    """Eventos E1, E2 y Ecr con sus cláusulas individuales."""
    e1_clauses: Dict[str, bool] = field(default_factory=dict)
    e2_clauses: Dict[str, bool] = field(default_factory=dict)
    ecr_clauses: Dict[str, bool] = field(default_factory=dict)
    ecr_applicable: bool = True
    gap_scan_truncated: bool = False

    @property
    def e1(self) -> bool:
        return all(self.e1_clauses.values())

    @property
    def e2(self) -> bool:
        return all(self.e2_clauses.values())

    @property
    def ecr(self) -> bool:
        return all(self.ecr_clauses.values())

    def as_dict(self) -> Dict[str, object]:
        return {
            "e1": self.e1,
            "e2": self.e2,
            "ecr": self.ecr,
            "ecr_applicable": self.ecr_applicable,
            "gap_scan_truncated": self.gap_scan_truncated,
            "e1_clauses": dict(self.e1_clauses),
            "e2_clauses": dict(self.e2_clauses),
            "ecr_clauses": dict(self.ecr_clauses),
        }
