"""domain/solver/state.py"""

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from pam_localisation.common.exceptions.domain_exceptions import OutOfWindowError


@dataclass(frozen=True)
class SolverDiagnostics:
    """Contadores del integrador para un tramo de la malla temporal."""
    method: str
    steps: int = 0
    min_step: Optional[float] = None
    max_step: Optional[float] = None
    nfev: int = 0
    njev: int = 0
    nlu: int = 0
    tolerance: float = 1e-8
    folded: bool = False

    def as_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True, eq=False)
class SolutionState:
    """
    Estado normalizado del PAM a tiempo t en la ventana [-window, window].

    Se guarda log v(z) = log u(t, z) - log U(t); v se deriva de él, de modo
    que los sitios lejanos conservan su orden de magnitud aunque v sea 0
    en coma flotante.
    """
    t: float
    log_mass: float
    log_v: np.ndarray
    window: int
    leak_rate: float = 0.0
    growth_rate: Optional[float] = None
    diagnostics: SolverDiagnostics = field(default_factory=lambda: SolverDiagnostics(method="unknown"))

    @property
    def v(self) -> np.ndarray:
        return np.exp(self.log_v)

    @property
    def sites(self) -> np.ndarray:
        return np.arange(-self.window, self.window + 1)

    def _index(self, z: int) -> int:
        if abs(int(z)) > self.window:
            raise OutOfWindowError(int(z), self.window)
        return int(z) + self.window

    def log_v_at(self, z: int) -> float:
        return float(self.log_v[self._index(z)])

    def v_at(self, z: int) -> float:
        return float(np.exp(self.log_v[self._index(z)]))

    def top_k(self, k: int) -> List[Tuple[int, float]]:
        """Los k sitios de mayor masa, en orden decreciente."""
        order = np.argsort(-self.log_v, kind="stable")[:k]
        return [(int(i - self.window), float(np.exp(self.log_v[i]))) for i in order]
