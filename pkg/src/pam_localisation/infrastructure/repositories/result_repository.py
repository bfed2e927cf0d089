"""infrastructure/repositories/result_repository.py"""

from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence

from pam_localisation.common.utils.json_utils import flatten_json_obj, from_json, to_json
from pam_localisation.common.utils.log import logger
from pam_localisation.common.utils.version import version_string
from pam_localisation.domain.entities.geometric_path import PathContribution
from pam_localisation.infrastructure.repositories.base_repository import BaseRepository, PathLike
from pam_localisation.interfaces.models.result_models import LocalisationReport, ReplicateResult, Verdict


REPLICATES_FILE = "replicates.jsonl"
SUMMARY_FILE = "summary.csv"
VERDICTS_FILE = "verdicts.json"
EFFECTIVE_CONFIG_FILE = "effective_config.json"
REPORTS_FILE = "localisation.jsonl"
PLOTDATA_DIR = "plotdata"


class ResultRepository(BaseRepository):
    """
    Salidas de una ejecución dentro de un directorio.

    Todos los archivos se escriben sin marcas de tiempo, de modo que la misma
    configuración produce los mismos bytes.
    """

    def __init__(self, out_dir: PathLike):
        self.out_dir = Path(out_dir)

    def path(self, name: str) -> Path:
        return self.out_dir / name

    def save(self, results: Sequence[ReplicateResult]) -> Path:
        """Escribe replicates.jsonl ordenado por índice de réplica."""
        ordered = sorted(results, key=lambda r: r.index)
        written = self._write_jsonl(self.path(REPLICATES_FILE), (r.to_record() for r in ordered))
        logger.info(f"{len(ordered)} réplicas escritas en {written}")
        return written

    def find(self) -> List[ReplicateResult]:
        """Lee replicates.jsonl."""
        return [ReplicateResult.model_validate(r) for r in self._read_jsonl(self.path(REPLICATES_FILE))]

    def save_summary(self, rows: Sequence[Dict[str, Any]]) -> Path:
        """Escribe summary.csv con las filas anidadas aplanadas (claves separadas por '.')."""
        flat = [flatten_json_obj(row) for row in rows]
        return self._write_csv(self.path(SUMMARY_FILE), flat, ["t"])

    def save_verdicts(self, verdicts: Sequence[Verdict]) -> Path:
        """Escribe verdicts.json: nombre de suite -> veredicto."""
        document = {v.suite: v.to_record() for v in verdicts}
        return self._write_text(self.path(VERDICTS_FILE), to_json(document, indent=2))

    def find_verdicts(self) -> Dict[str, Verdict]:
        path = self.path(VERDICTS_FILE)
        try:
            document = from_json(path.read_text(encoding="utf-8"))
        except (OSError, ValueError) as e:
            self._handle_error("find_verdicts", e, path=str(path))
        return {name: Verdict.model_validate(record) for name, record in document.items()}

    def save_effective_config(self, config: Mapping[str, Any], extra: Optional[Dict[str, Any]] = None) -> Path:
        """
        Escribe effective_config.json con la configuración validada y la versión.

        Args:
            config: Configuración efectiva (dict)
            extra: Datos adicionales de la invocación (subcomando, suite)
        """
        document = {"version": version_string(), "config": dict(config)}
        if extra:
            document["invocation"] = extra
        return self._write_text(self.path(EFFECTIVE_CONFIG_FILE), to_json(document, indent=2))

    def save_reports(self, reports: Sequence[LocalisationReport]) -> Path:
        return self._write_jsonl(self.path(REPORTS_FILE), (r.to_record() for r in reports))

    def save_paths(self, contributions: Sequence[PathContribution], name: str = "paths.csv") -> Path:
        """CSV por camino: longitud, pasos, destino, log U y log de la integral del símplex."""
        rows = [{
            "length": c.path.length,
            "end": c.path.end,
            "steps": c.path.steps,
            "t": c.t,
            "log_value": c.log_value,
            "log_simplex": c.log_simplex,
        } for c in contributions]
        return self._write_csv(self.path(name), rows, ["length", "end", "steps", "t", "log_value", "log_simplex"])

    def save_plotdata(self, tables: Mapping[str, Sequence[Dict[str, Any]]]) -> List[Path]:
        """Un CSV por figura en plotdata/."""
        return [self._write_csv(self.path(PLOTDATA_DIR) / f"{name}.csv", rows, ["t"])
                for name, rows in tables.items()]

    def _write_text(self, path: Path, text: str) -> Path:
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text + "\n", encoding="utf-8")
        except OSError as e:
            self._handle_error("write_text", e, path=str(path))
        return path
