"""application/services/verify_service.py"""

import math
from typing import Any, Callable, Dict, List

import numpy as np
from scipy import integrate
from scipy.special import gammaln

from pam_localisation.application.services.batch_runner import BatchRunner
from pam_localisation.application.services.replicate_service import replicate_seed
from pam_localisation.application.services.solver_service import solve_pam
from pam_localisation.application.services.suites.base_suite import make_verdict
from pam_localisation.application.services.suites.clt_suite import clt_suite, default_theta_over_xi
from pam_localisation.application.services.suites.point_process_suite import point_process_suite
from pam_localisation.common.exceptions.domain_exceptions import PamError
from pam_localisation.common.utils.json_utils import to_json
from pam_localisation.common.utils.log import logger
from pam_localisation.common.utils.statistics import ks_one_sample
from pam_localisation.domain.entities.regime_profile import ProfileFamily, RegimeKind, RegimeProfile
from pam_localisation.domain.model.pareto import pareto_cdf, pareto_mean, pareto_quantile, sigma_squared
from pam_localisation.domain.model.potential import build_potential
from pam_localisation.domain.pathsum.paths import truncated_path_sum
from pam_localisation.domain.pathsum.simplex import simplex_integral
from pam_localisation.domain.solver.dense_oracle import dense_oracle
from pam_localisation.interfaces.models.config_models import ExperimentConfig, ProfileConfig, WindowPolicy
from pam_localisation.interfaces.models.result_models import Outcome, Verdict


REDUCED_SIZES = {
    "oracle_fields": 10,
    "pathsum_fields": 6,
    "simplex_sets": 20,
    "pareto_draws": 1_000_000,
    "symmetry_seeds": 10,
    "symmetry_radius": 500,
    "pp_s": 1e3,
    "pp_fields": 200,
    "density_samples": 20_000,
    "density_bins": 10,
    "clt_k": 10_000,
    "determinism_replicates": 4,
}

FULL_SIZES = {
    "oracle_fields": 50,
    "pathsum_fields": 50,
    "simplex_sets": 100,
    "pareto_draws": 1_000_000,
    "symmetry_seeds": 50,
    "symmetry_radius": None,
    "pp_s": 1e4,
    "pp_fields": 500,
    "density_samples": 100_000,
    "density_bins": 20,
    "clt_k": 10_000,
    "determinism_replicates": 8,
}

ORACLE_TIMES = (0.25, 1.0, 4.0)
SITE_REL_TOL = 1e-6
LOG_MASS_TOL = 1e-8
PATHSUM_MAX_LEN = 10
SIMPLEX_EXACT_TOL = 1e-12
SIMPLEX_QUAD_TOL = 1e-10
SYMMETRY_TOL = 1e-9
PARETO_MEAN_TOL = 0.01
PARETO_LOG_TOL = 0.002
PARETO_KS_TOL = 0.005


def _relative(a: float, b: float) -> float:
    return abs(a - b) / abs(b) if b != 0 else abs(a)


class VerifyService:
    """
    Batería de autoverificación: oráculos exactos, integrales del símplex,
    momentos de Pareto, simetría, TCL condicional, proceso puntual y
    determinismo.

    Sin `full` se usan tamaños reducidos deterministas; con `full` los
    tamaños de aceptación.
    """

    def __init__(self, full: bool = False, seed: int = 0, threads: int = 2):
        self.full = full
        self.seed = int(seed)
        self.threads = int(threads)
        self.sizes = FULL_SIZES if full else REDUCED_SIZES
        self.profile = RegimeProfile.builtin(RegimeKind.CRITICAL, 3.0, 1.0)

    def checks(self) -> Dict[str, Callable[[], Verdict]]:
        return {
            "oracle": self.check_oracle,
            "pathsum": self.check_pathsum,
            "simplex": self.check_simplex,
            "pareto": self.check_pareto,
            "symmetry": self.check_symmetry,
            "clt": self.check_clt,
            "point_process": self.check_point_process,
            "determinism": self.check_determinism,
        }

    def run(self) -> List[Verdict]:
        """
        Ejecuta todas las comprobaciones.

        Un error dentro de una comprobación la marca como FAIL sin
        interrumpir el resto.
        """
        verdicts = []
        for name, check in self.checks().items():
            logger.info(f"Verificación {name}...")
            try:
                verdicts.append(check())
            except (PamError, ArithmeticError, ValueError) as e:
                logger.error(f"Verificación {name} con error: {e}")
                verdicts.append(Verdict(suite=name, outcome=Outcome.FAIL,
                                        notes=[f"{e.__class__.__name__}: {e}"]))
        return verdicts

    def check_oracle(self) -> Verdict:
        """solve_pam frente a dense_oracle en campos aleatorios con L <= 5."""
        worst_site, worst_mass = 0.0, 0.0
        n = self.sizes["oracle_fields"]
        for i in range(n):
            L = 1 + i % 5
            field = build_potential(self.profile, L, replicate_seed(self.seed, i))
            states = solve_pam(field, ORACLE_TIMES, L_solve=L)
            for state in states:
                exact = dense_oracle(field, state.t, L)
                site_err = float(np.max(np.abs(state.v - exact.v) / exact.v))
                worst_site = max(worst_site, site_err)
                worst_mass = max(worst_mass, abs(state.log_mass - exact.log_mass))
        passed = worst_site <= SITE_REL_TOL and worst_mass <= LOG_MASS_TOL
        return make_verdict("oracle", passed, statistics={
            "fields": n, "max_site_rel_error": worst_site, "max_log_mass_error": worst_mass,
        })

    def check_pathsum(self) -> Verdict:
        """La suma truncada de caminos acota por debajo a dense_oracle dentro de su cota de cola."""
        violations = 0
        n = self.sizes["pathsum_fields"]
        for i in range(n):
            L = 1 + i % 3
            field = build_potential(self.profile, L, replicate_seed(self.seed + 1, i))
            for t in ORACLE_TIMES:
                exact = dense_oracle(field, t, L)
                for target in (0, L):
                    result = truncated_path_sum(field, t, target, PATHSUM_MAX_LEN)
                    u_exact = math.exp(exact.log_mass + exact.log_v_at(target))
                    u_lower = math.exp(result.log_u_lower)
                    slack = 1e-9 * u_exact
                    if u_lower > u_exact + slack or u_exact - u_lower > result.tail_bound + slack:
                        violations += 1
                        logger.warning(f"Suma de caminos fuera de cota: L={L}, t={t}, z={target}")
        return make_verdict("pathsum", violations == 0, statistics={"fields": n, "violations": violations})

    def check_simplex(self) -> Verdict:
        """I_0 y el caso confluente exactos; I_1 e I_2 frente a cuadratura adaptativa."""
        rng = np.random.default_rng(self.seed)
        worst_exact, worst_quad = 0.0, 0.0
        for _ in range(self.sizes["simplex_sets"]):
            t = float(rng.uniform(0.1, 3.0))
            c = rng.uniform(1.0, 10.0, size=3)
            worst_exact = max(worst_exact, abs(simplex_integral(t, c[:1]) - t * c[0]))
            n = int(rng.integers(1, 9))
            confluent = t * c[0] + n * math.log(t) - float(gammaln(n + 1))
            worst_exact = max(worst_exact, abs(simplex_integral(t, [c[0]] * (n + 1)) - confluent))

            i1, _ = integrate.quad(lambda s: math.exp(c[0] * s + c[1] * (t - s)), 0.0, t,
                                   epsabs=0.0, epsrel=1e-13)
            i2, _ = integrate.dblquad(
                lambda x1, x0: math.exp(c[0] * x0 + c[1] * x1 + c[2] * (t - x0 - x1)),
                0.0, t, 0.0, lambda x0: t - x0, epsabs=0.0, epsrel=1e-13)
            worst_quad = max(worst_quad,
                             _relative(math.exp(simplex_integral(t, c[:2])), i1),
                             _relative(math.exp(simplex_integral(t, c)), i2))
        passed = worst_exact <= SIMPLEX_EXACT_TOL and worst_quad <= SIMPLEX_QUAD_TOL
        return make_verdict("simplex", passed, statistics={
            "sets": self.sizes["simplex_sets"], "max_exact_log_error": worst_exact, "max_quad_rel_error": worst_quad,
        })

    def check_pareto(self) -> Verdict:
        """
        Pareto(3): media 1.5 +- 0.01, media de log xi 1/3 +- 0.002 y distancia KS
        a la función de distribución exacta <= 0.005.
        """
        rng = np.random.default_rng(self.seed)
        draws = pareto_quantile(rng.random(self.sizes["pareto_draws"]), 3.0)
        mean = float(draws.mean())
        log_mean = float(np.log(draws).mean())
        ks = ks_one_sample(draws, lambda x: pareto_cdf(x, 3.0)).statistic
        passed = (abs(mean - pareto_mean(3.0)) <= PARETO_MEAN_TOL and abs(log_mean - 1.0 / 3.0) <= PARETO_LOG_TOL
                  and ks <= PARETO_KS_TOL and sigma_squared(3.0) == 0.75)
        return make_verdict("pareto", passed, statistics={
            "draws": int(draws.size), "mean": mean, "log_mean": log_mean, "ks": ks,
            "sigma": math.sqrt(sigma_squared(3.0)),
        })

    def check_symmetry(self) -> Verdict:
        """Perfil totalmente duplicado: |log_ratio| <= 1e-9 en t = 1e3 para todas las réplicas."""
        window = WindowPolicy(radius=self.sizes["symmetry_radius"])
        config = ExperimentConfig(
            alpha=3.0,
            profile=ProfileConfig(kind=RegimeKind.CUSTOM, family=ProfileFamily.CONSTANT, constant=0.0),
            t_grid=[1e3],
            replicates=self.sizes["symmetry_seeds"],
            base_seed=self.seed,
            window=window,
            threads=self.threads,
        )
        results = BatchRunner(config).run()
        ratios = [abs(p.log_ratio) for r in results if r.ok for p in r.points]
        failed = sum(1 for r in results if not r.ok)
        worst = max(ratios) if ratios else math.inf
        return make_verdict("symmetry", failed == 0 and worst <= SYMMETRY_TOL,
                            statistics={"replicates": len(results), "failed": failed, "max_abs_log_ratio": worst})

    def check_clt(self) -> Verdict:
        """TCL condicional con k = 1e4 para alpha en {2, 3} y el theta/xi de trabajo de cada alpha."""
        parts = [clt_suite(alpha, default_theta_over_xi(alpha), self.sizes["clt_k"], self.seed) for alpha in (2.0, 3.0)]
        return make_verdict("clt", all(v.passed for v in parts), statistics={
            f"alpha_{int(v.statistics['alpha'])}": v.statistics for v in parts
        })

    def check_point_process(self) -> Verdict:
        """Conteos en cajas contra Poisson y densidad de (X1, Y1)."""
        return point_process_suite(3.0, self.profile, self.sizes["pp_s"], self.sizes["pp_fields"],
                                      seed=self.seed, density_samples=self.sizes["density_samples"],
                                      grid_bins=self.sizes["density_bins"])

    def check_determinism(self) -> Verdict:
        """Un lote repetido, en serie y en paralelo, produce los mismos registros."""
        config = ExperimentConfig(
            alpha=3.0,
            t_grid=[20.0, 50.0],
            replicates=self.sizes["determinism_replicates"],
            base_seed=self.seed,
            window=WindowPolicy(radius=40),
        )

        def dump(threads: int) -> List[str]:
            return [to_json(r.to_record()) for r in BatchRunner(config, threads=threads).run()]

        serial = dump(1)
        repeated = dump(1)
        parallel = dump(max(2, self.threads))
        return make_verdict("determinism", serial == repeated == parallel, statistics={
            "replicates": len(serial), "repeat_identical": serial == repeated, "parallel_identical": serial == parallel,
        })


def verify(full: bool = False, seed: int = 0, threads: int = 2) -> List[Verdict]:
    """Atajo funcional de VerifyService.run."""
    return VerifyService(full=full, seed=seed, threads=threads).run()


def verdict_table(verdicts: List[Verdict]) -> List[Dict[str, Any]]:
    """Filas nombre/resultado para imprimir la tabla de verificación."""
    return [{"check": v.suite, "outcome": v.outcome.value, "notes": "; ".join(v.notes)} for v in verdicts]
