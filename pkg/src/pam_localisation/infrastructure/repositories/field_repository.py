"""infrastructure/repositories/field_repository.py"""

from pathlib import Path
from typing import Any, Dict, Iterator

import numpy as np

from pam_localisation.common.exceptions.domain_exceptions import RepositoryError, ValidationError
from pam_localisation.common.utils.log import logger
from pam_localisation.domain.entities.potential_field import PotentialField
from pam_localisation.domain.entities.regime_profile import RegimeProfile
from pam_localisation.infrastructure.repositories.base_repository import BaseRepository, PathLike


FORMAT = "pam-field/1"


class FieldRepository(BaseRepository):
    """
    Volcado de campos en JSONL.

    La primera línea es una cabecera {"format", "alpha", "window", "seed",
    "profile"}; siguen 2L+1 registros {"z", "xi", "dup"} en orden creciente
    de z, con dup referido a |z|.
    """

    def _records(self, field: PotentialField) -> Iterator[Dict[str, Any]]:
        yield {
            "format": FORMAT,
            "alpha": field.alpha,
            "window": field.L,
            "seed": field.seed,
            "profile": field.profile.model_dump(mode="json") if field.profile is not None else None,
        }
        for z, value in zip(range(-field.L, field.L + 1), field.xi):
            yield {"z": z, "xi": float(value), "dup": bool(field.dup[abs(z)])}

    def save(self, field: PotentialField, path: PathLike) -> Path:
        """
        Escribe el campo en `path`.

        Returns:
            Ruta escrita
        """
        written = self._write_jsonl(path, self._records(field))
        logger.info(f"Campo con L={field.L} escrito en {written}")
        return written

    def find(self, path: PathLike) -> PotentialField:
        """
        Reconstruye un campo volcado con save.

        Raises:
            RepositoryError: Si el archivo no existe o no tiene el formato esperado
        """
        records = self._read_jsonl(path)
        if not records or records[0].get("format") != FORMAT:
            logger.error(f"{path} no es un volcado de campo")
            raise RepositoryError("Formato de campo desconocido", {"path": str(path)})
        header, sites = records[0], records[1:]
        L = int(header["window"])
        if [r["z"] for r in sites] != list(range(-L, L + 1)):
            logger.error(f"Registros de sitios incompletos en {path}")
            raise RepositoryError("Sitios incompletos en el volcado", {"path": str(path), "window": L})

        xi = np.array([r["xi"] for r in sites], dtype=float)
        dup = np.array([r["dup"] for r in sites[L:]], dtype=bool)
        profile = RegimeProfile.model_validate(header["profile"]) if header.get("profile") else None
        try:
            return PotentialField(alpha=float(header["alpha"]), window=L, seed=header.get("seed"),
                                  profile=profile, xi=xi, dup=dup)
        except ValidationError as e:
            self._handle_error("find", e, path=str(path))
