"""infrastructure/repositories/base_repository.py"""

import csv
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence, Union

from pam_localisation.common.exceptions.domain_exceptions import RepositoryError
from pam_localisation.common.utils.json_utils import from_json, to_json
from pam_localisation.common.utils.log import logger


PathLike = Union[str, Path]


class BaseRepository(ABC):
    """
    Clase base abstracta para los repositorios de archivos.

    Define la interfaz find/save y utilidades de escritura determinista
    (JSONL y CSV con centinelas para los flotantes no finitos).
    """

    @abstractmethod
    def find(self, *args, **kwargs) -> Any:
        """
        Lee y reconstruye datos del almacenamiento.

        Raises:
            RepositoryError: Si ocurre un error en la operación
        """
        pass

    @abstractmethod
    def save(self, *args, **kwargs) -> Path:
        """
        Guarda datos en el almacenamiento.

        Returns:
            Ruta del archivo escrito

        Raises:
            RepositoryError: Si ocurre un error en la operación
        """
        pass

    def _write_jsonl(self, path: PathLike, records: Iterable[Dict[str, Any]]) -> Path:
        path = Path(path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            with path.open("w", encoding="utf-8", newline="\n") as fh:
                for record in records:
                    fh.write(to_json(record))
                    fh.write("\n")
        except (OSError, ValueError) as e:
            self._handle_error("write_jsonl", e, path=str(path))
        return path

    def _read_jsonl(self, path: PathLike) -> List[Dict[str, Any]]:
        path = Path(path)
        try:
            with path.open(encoding="utf-8") as fh:
                return [from_json(line) for line in fh if line.strip()]
        except (OSError, ValueError) as e:
            self._handle_error("read_jsonl", e, path=str(path))

    def _write_csv(self, path: PathLike, rows: Sequence[Dict[str, Any]],
                   columns: Sequence[str] = ()) -> Path:
        path = Path(path)
        header = list(columns)
        for row in rows:
            header += [k for k in row if k not in header]
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            with path.open("w", encoding="utf-8", newline="") as fh:
                writer = csv.DictWriter(fh, fieldnames=header, restval="", lineterminator="\n")
                writer.writeheader()
                writer.writerows(rows)
        except (OSError, ValueError) as e:
            self._handle_error("write_csv", e, path=str(path))
        return path

    def _read_csv(self, path: PathLike) -> List[Dict[str, str]]:
        path = Path(path)
        try:
            with path.open(encoding="utf-8", newline="") as fh:
                return list(csv.DictReader(fh))
        except OSError as e:
            self._handle_error("read_csv", e, path=str(path))

    def _handle_error(self, operation: str, error: Exception, **context) -> None:
        """
        Maneja errores de repositorio de manera consistente.

        Args:
            operation: Nombre de la operación que falló
            error: Excepción original
            **context: Contexto adicional de la operación

        Raises:
            RepositoryError: Excepción enriquecida con contexto
        """
        error_msg = f"Error en operación de repositorio '{operation}': {error}"
        logger.error(error_msg)

        details = {
            "original_error": str(error),
            "error_type": error.__class__.__name__
        }
        details.update(context)

        raise RepositoryError(error_msg, details)
