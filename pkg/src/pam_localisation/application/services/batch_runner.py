"""application/services/batch_runner.py"""

from concurrent.futures import ProcessPoolExecutor
from typing import Any, Dict, List, Optional, Tuple

from pam_localisation.application.services.replicate_service import replicate_seed, run_replicate
from pam_localisation.common.utils.log import logger
from pam_localisation.interfaces.models.config_models import ExperimentConfig
from pam_localisation.interfaces.models.result_models import ReplicateResult


def _replicate_task(payload: Tuple[Dict[str, Any], int, int]) -> ReplicateResult:
    """Tarea de proceso: reconstruye la configuración y ejecuta una réplica."""
    config_data, seed, index = payload
    return run_replicate(ExperimentConfig.model_validate(config_data), seed, index)


class BatchRunner:
    """
    Ejecuta las réplicas de un experimento en un pool de procesos.

    Las semillas se derivan de (base_seed, índice); los resultados se
    ordenan por índice, de modo que la salida no depende del número de
    procesos.
    """

    def __init__(self, config: ExperimentConfig, threads: Optional[int] = None):
        """
        Inicializa el ejecutor.

        Args:
            config: Configuración del experimento
            threads: Procesos del pool (por defecto config.threads o núcleos lógicos)
        """
        self.config = config
        self.threads = int(threads or config.workers)

    def seeds(self, replicates: Optional[int] = None) -> List[Tuple[int, int]]:
        """Pares (índice, semilla) del lote."""
        n = self.config.replicates if replicates is None else int(replicates)
        return [(i, replicate_seed(self.config.base_seed, i)) for i in range(n)]

    def run(self, replicates: Optional[int] = None) -> List[ReplicateResult]:
        """
        Ejecuta el lote.

        Args:
            replicates: Número de réplicas (por defecto config.replicates)

        Returns:
            Resultados ordenados por índice, fallidos incluidos
        """
        pairs = self.seeds(replicates)
        logger.info(f"Ejecutando {len(pairs)} réplicas con {self.threads} procesos")

        if self.threads == 1:
            results = [run_replicate(self.config, seed, index) for index, seed in pairs]
        else:
            config_data = self.config.model_dump(mode="json")
            payloads = [(config_data, seed, index) for index, seed in pairs]
            with ProcessPoolExecutor(max_workers=self.threads) as executor:
                results = list(executor.map(_replicate_task, payloads, chunksize=1))

        results.sort(key=lambda r: r.index)
        failed = sum(1 for r in results if not r.ok)
        if failed:
            logger.warning(f"{failed} de {len(results)} réplicas fallidas")
        partial = sum(1 for r in results if r.ok and r.failures)
        if partial:
            logger.warning(f"{partial} réplicas con algún tiempo fallido")
        logger.info("Lote completado")
        return results
