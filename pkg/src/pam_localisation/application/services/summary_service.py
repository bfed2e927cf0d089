"""application/services/summary_service.py"""

from typing import Any, Dict, List, Sequence

import numpy as np

from pam_localisation.application.services.suites.base_suite import PointTable, median_row


# Métricas con mediana e intervalo por t; también son las figuras de --emit-plotdata
SUMMARY_METRICS = ["abs_log_ratio", "two_site_mass", "top_site_mass", "q_t", "conditional_variance", "zeta"]


def summarise(results: Sequence, t_grid: Sequence[float], level: float = 0.95) -> List[Dict[str, Any]]:
    """
    Agregados por t de un lote de réplicas.

    Cada fila es un documento anidado (se aplana al escribir summary.csv):
    conteos de réplicas (y de errores en ese t), mediana con intervalo de cada métrica y
    frecuencias de los eventos.

    Args:
        results: Réplicas del lote
        t_grid: Malla temporal
        level: Confianza de los intervalos de la mediana

    Returns:
        Una fila por tiempo
    """
    table = PointTable(results)
    rows = []
    for t in t_grid:
        row: Dict[str, Any] = {
            "t": float(t),
            "replicates": {"ok": table.ok_count, "failed": table.failed_count, "failed_at_t": table.failures(t)},
        }
        for metric in SUMMARY_METRICS:
            if metric == "abs_log_ratio":
                values = np.abs(table.values(t, "log_ratio"))
            else:
                values = table.values(t, metric)
            stats = median_row(t, values, level)
            stats.pop("t")
            row[metric] = stats
        flags = table.rows(t, ["events.e1", "events.e2", "events.ecr", "stable"])
        row["events"] = {
            name: float(np.nanmean(flags[:, j])) if flags.size else float("nan")
            for j, name in enumerate(["e1", "e2", "ecr", "stable"])
        }
        rows.append(row)
    return rows


def plot_tables(summary: Sequence[Dict[str, Any]]) -> Dict[str, List[Dict[str, Any]]]:
    """Tablas t contra mediana e intervalo, una por métrica."""
    return {metric: [{"t": row["t"], **row[metric]} for row in summary] for metric in SUMMARY_METRICS}
