"""infrastructure/repositories/state_repository.py"""

from pathlib import Path
from typing import Dict, List, Sequence

import numpy as np

from pam_localisation.common.utils.log import logger
from pam_localisation.domain.solver.state import SolutionState
from pam_localisation.infrastructure.repositories.base_repository import BaseRepository, PathLike


COLUMNS = ["t", "z", "v", "log_v", "log_mass"]


class StateRepository(BaseRepository):
    """Estados del solver en CSV con columnas t, z, v, log_v y log_mass."""

    def save(self, states: Sequence[SolutionState], path: PathLike, top_k: int = 0) -> Path:
        """
        Escribe los estados; con top_k > 0 solo los k sitios de mayor masa por t.

        Args:
            states: Estados en orden de t
            path: Archivo CSV
            top_k: Sitios por tiempo (0 escribe la ventana completa)
        """
        rows = []
        for state in states:
            if top_k > 0:
                order = np.argsort(-state.log_v, kind="stable")[:top_k]
            else:
                order = np.arange(state.log_v.size)
            for i in order:
                log_v = float(state.log_v[i])
                rows.append({"t": state.t, "z": int(i) - state.window, "v": float(np.exp(log_v)),
                             "log_v": log_v, "log_mass": state.log_mass})
        written = self._write_csv(path, rows, COLUMNS)
        logger.info(f"{len(rows)} filas de estado escritas en {written}")
        return written

    def find(self, path: PathLike) -> List[Dict[str, float]]:
        """Filas del CSV con valores numéricos."""
        return [{"t": float(r["t"]), "z": int(r["z"]), "v": float(r["v"]),
                 "log_v": float(r["log_v"]), "log_mass": float(r["log_mass"])}
                for r in self._read_csv(path)]


def dump_states(states: Sequence[SolutionState], path: PathLike, top_k: int = 0) -> Path:
    """Atajo funcional de StateRepository.save."""
    return StateRepository().save(states, path, top_k)
