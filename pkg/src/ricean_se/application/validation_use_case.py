#ricean_se/src/ricean_se/application/validation_use_case.py

# ============================================================
# ✅ Suítes de validação: identidades, oráculo, momentos, assíntotas
# ============================================================

import math
from dataclasses import dataclass, replace
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from loguru import logger
from scipy.stats import norm

from src.ricean_se.application.drop_runner import realize_drop
from src.ricean_se.application.monte_carlo import McSettings, estimate_moment, estimate_sinr_empirical
from src.ricean_se.application.random_streams import VALIDATION, split_stream
from src.ricean_se.domain.analytics import (
    sinr_closed,
    sinr_closed_all,
    sinr_limit_large_K,
    sinr_limit_large_M,
    sinr_rayleigh,
    spectral_efficiency,
    sum_se,
)
from src.ricean_se.domain.entities import EstimatorKind, LargeScaleRealization, SystemConfig
from src.ricean_se.domain.errors import ScenarioError
from src.ricean_se.domain.moments import MomentTerm, sinr_from_moments
from src.ricean_se.infrastructure.scenario_loader import Scenario

SUITES = ("identities", "oracle", "moments", "asymptotes")
KINDS = (EstimatorKind.LS, EstimatorKind.MMSE)

# Amostras de pequena escala para os casos pequenos feitos à mão
ORACLE_SAMPLES = 100_000
MOMENT_SAMPLES = 100_000
MATRIX_SAMPLES = 10_000


@dataclass(frozen=True)
class CheckResult:
    name: str
    measured: float
    bound: float
    passed: bool

    def line(self) -> str:
        return f"{self.name},{self.measured:.6g},{self.bound:.6g},{'PASS' if self.passed else 'FAIL'}"


def _at_most(name: str, measured: float, bound: float) -> CheckResult:
    return CheckResult(name, float(measured), float(bound), bool(measured <= bound))


def _at_least(name: str, measured: float, bound: float) -> CheckResult:
    return CheckResult(name, float(measured), float(bound), bool(measured >= bound))


def _rel(a: float, b: float) -> float:
    return abs(a - b) / abs(b)


def sigma_bound(n_checks: int, base: float = 3.0) -> float:
    """Limiar em σ com correção de Bonferroni; n_checks = 1 devolve o próprio base."""
    alvo = 2.0 * norm.sf(base) / max(n_checks, 1)
    return float(norm.ppf(1.0 - alvo / 2.0))


# ============================================================
# 🧪 Casos sintéticos
# ============================================================
def make_case(
    beta,
    ricean_k,
    aoa,
    M: int,
    pilot_powers=None,
    rho_u: float = 1.0,
    tau: Optional[int] = None,
    T: int = 196,
) -> Tuple[SystemConfig, LargeScaleRealization]:
    beta = np.asarray(beta, dtype=float)
    L, N = beta.shape[1], beta.shape[2]
    rho = np.ones((L, N)) if pilot_powers is None else np.broadcast_to(np.asarray(pilot_powers, dtype=float), (L, N))
    cfg = SystemConfig(L=L, N=N, M=int(M), tau=tau or N, T=T, rho_u=rho_u, pilot_powers=rho)
    ls = LargeScaleRealization(
        beta=beta,
        ricean_k=np.broadcast_to(np.asarray(ricean_k, dtype=float), (L, N)),
        aoa=np.broadcast_to(np.asarray(aoa, dtype=float), (L, N)),
    )
    return cfg, ls


def e1_case(M: int = 4):
    """L=2, N=1, β≡1, ρ≡1, K=0, ρ_u=1: SINR = 4/13 em M=4."""
    return make_case(np.ones((2, 2, 1)), 0.0, 0.0, M)


def e2_case(M: int = 64):
    """L=2, N=1, K=1, β_own=1, β_cross=0.25, ρ≡1: limites LS=16 e MMSE=49."""
    beta = np.array([[[1.0], [0.25]], [[0.25], [1.0]]])
    return make_case(beta, 1.0, 0.0, M)


def moment_cases():
    beta2 = np.array([
        [[1.0, 0.7], [0.3, 0.2]],
        [[0.25, 0.35], [0.9, 1.1]],
    ])
    beta3 = np.array([
        [[0.8, 1.2], [0.15, 0.3], [0.2, 0.1]],
        [[0.3, 0.2], [1.0, 0.9], [0.1, 0.25]],
        [[0.2, 0.1], [0.3, 0.2], [0.7, 1.0]],
    ])
    return {
        "E1": e1_case(),
        "L2N2": make_case(beta2, [[1.0, 3.0], [0.5, 2.0]], [[0.3, 1.9], [2.5, 4.0]], 8,
                          pilot_powers=[[1.0, 2.0], [1.5, 1.0]], rho_u=2.0),
        "L3N2": make_case(beta3, [[0.0, 4.0], [1.0, 0.0], [2.0, 0.5]], [[5.0, 0.7], [1.1, 3.3], [0.2, 6.0]], 16,
                          pilot_powers=[[2.0, 1.0], [1.0, 0.5], [1.5, 1.0]], rho_u=0.5),
    }


def random_large_scale(
    rng: np.random.Generator,
    L: int,
    N: int,
    k=None,
    own=(0.8, 1.0),
    cross=(0.3, 0.6),
    k_range=(0.0, 2.0),
) -> LargeScaleRealization:
    """β_jjn em `own`, β_jln (l≠j) em `cross`; K compartilhado se `k` é dado."""
    beta = rng.uniform(*cross, size=(L, L, N))
    idx = np.arange(L)
    beta[idx, idx] = rng.uniform(*own, size=(L, N))
    ricean_k = np.full((L, N), float(k)) if k is not None else rng.uniform(*k_range, size=(L, N))
    aoa = rng.uniform(0.0, 2.0 * np.pi, size=(L, N)) % (2.0 * np.pi)
    return LargeScaleRealization(beta=beta, ricean_k=ricean_k, aoa=aoa)


def separated_aoa(L: int, N: int) -> np.ndarray:
    """sin θ_t = 0.25·t: com M múltiplo de 8, φ_nt = 0 para t ≠ n."""
    if N > 4:
        raise ValueError("separated_aoa suporta até 4 usuários")
    return np.broadcast_to(np.arcsin(0.25 * np.arange(N)), (L, N)).copy()


def _cfg(L: int, N: int, M: int, rho_u: float = 1.0) -> SystemConfig:
    return SystemConfig(L=L, N=N, M=M, tau=N, T=196, rho_u=rho_u, pilot_powers=np.ones((L, N)))


# ============================================================
# 1️⃣ Identidades
# ============================================================
def suite_identities(scenario: Scenario, n_configs: int = 100) -> List[CheckResult]:
    rng = split_stream(scenario.settings.seed, VALIDATION, 0)
    pior_rayleigh, pior_momentos, pior_dominancia = 0.0, 0.0, math.inf
    violacoes_monotonia = 0

    for _ in range(n_configs):
        L, N, M = int(rng.integers(1, 4)), int(rng.integers(1, 4)), int(rng.integers(4, 129))
        cfg = _cfg(L, N, M, rho_u=float(rng.uniform(0.5, 10.0)))
        ls = random_large_scale(rng, L, N, own=(0.5, 1.5), cross=(0.05, 0.8))
        ls0 = ls.with_k(0.0)

        for n in range(N):
            ref = sinr_rayleigh(cfg, ls0, 0, n)
            for kind in KINDS:
                pior_rayleigh = max(pior_rayleigh, _rel(sinr_closed(cfg, ls0, 0, n, kind), ref))
                pior_momentos = max(
                    pior_momentos, _rel(sinr_from_moments(cfg, ls, 0, n, kind), sinr_closed(cfg, ls, 0, n, kind))
                )

        # dominância MMSE ≥ LS: garantida com um usuário por célula (ς ≤ 0)
        cfg1 = _cfg(L, 1, M, cfg.rho_u)
        ls1 = random_large_scale(rng, L, 1, own=(0.5, 1.5), cross=(0.05, 0.8), k_range=(0.01, 10.0))
        ls_ = sinr_closed(cfg1, ls1, 0, 0, EstimatorKind.LS)
        mmse = sinr_closed(cfg1, ls1, 0, 0, EstimatorKind.MMSE)
        pior_dominancia = min(pior_dominancia, (mmse - ls_) / ls_)

        # monotonia em M para K = 0
        for kind in KINDS:
            valores = [sinr_closed(cfg.with_antennas(m), ls0, 0, 0, kind) for m in (M, 2 * M, 4 * M)]
            if not valores[0] < valores[1] < valores[2]:
                violacoes_monotonia += 1

    # dominância fora do caso provado: só registra
    contraexemplos = 0
    for _ in range(n_configs):
        cfg = _cfg(2, 3, 32)
        ls = random_large_scale(rng, 2, 3, own=(0.5, 1.5), cross=(0.05, 0.8), k_range=(0.01, 10.0))
        for n in range(3):
            if sinr_closed(cfg, ls, 0, n, EstimatorKind.MMSE) < sinr_closed(cfg, ls, 0, n, EstimatorKind.LS):
                contraexemplos += 1
    if contraexemplos:
        logger.warning(f"⚠️ MMSE < LS em {contraexemplos} usuários com AoAs arbitrários (ς > 0)")

    resultados = [
        _at_most("identities.rayleigh_reduction", pior_rayleigh, 1e-12),
        _at_most("identities.moment_assembly", pior_momentos, 1e-10),
        _at_least("identities.mmse_dominance_single_user", pior_dominancia, -1e-12),
        _at_most("identities.monotone_in_M", violacoes_monotonia, 0),
    ]

    ls_cenario = realize_drop(scenario.cfg, scenario.geometry, scenario.settings.seed, 0).with_k(0.0)
    pior = 0.0
    for n in range(scenario.cfg.N):
        ref = sinr_rayleigh(scenario.cfg, ls_cenario, scenario.settings.target_cell, n)
        for kind in KINDS:
            pior = max(pior, _rel(sinr_closed(scenario.cfg, ls_cenario, scenario.settings.target_cell, n, kind), ref))
    resultados.append(_at_most("identities.rayleigh_reduction_scenario", pior, 1e-12))
    return resultados


# ============================================================
# 2️⃣ Oráculo (forma fechada ↔ Monte-Carlo)
# ============================================================
def _oracle_ratio(cfg, ls, kind, settings, z: float, j: int = 0) -> float:
    """max_n |empírico − fechado| / max(z·σ, 1%·fechado); ≤ 1 aprova."""
    emp = estimate_sinr_empirical(cfg, ls, kind, replace(settings, target_cell=j))
    fechado = sinr_closed_all(cfg, ls, kind, j)
    folga = np.maximum(z * emp.std_error, 0.01 * fechado)
    return float(np.max(np.abs(emp.sinr - fechado) / folga))


def suite_oracle(scenario: Scenario, matrix: bool = False) -> List[CheckResult]:
    settings = scenario.settings
    resultados = []

    cfg, ls = e1_case()
    for kind in KINDS:
        mc = replace(settings, n_small_scale=ORACLE_SAMPLES, target_cell=0)
        emp = estimate_sinr_empirical(cfg, ls, kind, mc)
        erro = abs(float(emp.sinr[0]) - 4.0 / 13.0)
        resultados.append(_at_most(f"oracle.E1_{kind.value}", erro / float(emp.std_error[0]), 3.0))

    ls_cenario = realize_drop(scenario.cfg, scenario.geometry, settings.seed, 0)
    z = sigma_bound(2 * scenario.cfg.N)
    for kind in KINDS:
        razao = _oracle_ratio(scenario.cfg, ls_cenario, kind, settings, z, settings.target_cell)
        resultados.append(_at_most(f"oracle.scenario_drop0_{kind.value}", razao, 1.0))

    if matrix:
        resultados.extend(oracle_matrix(settings.seed, settings))
    return resultados


def oracle_matrix(seed: int, settings: McSettings, samples: int = MATRIX_SAMPLES) -> List[CheckResult]:
    """L∈{1,2,3,7}, N∈{1,2,4}, M∈{8,32,64}, K∈{0,1,10}, ambos os estimadores."""
    casos = [(L, N, M, K) for L in (1, 2, 3, 7) for N in (1, 2, 4) for M in (8, 32, 64) for K in (0.0, 1.0, 10.0)]
    z = sigma_bound(sum(2 * N for _, N, _, _ in casos))
    mc = replace(settings, n_small_scale=samples, target_cell=0)
    rng = split_stream(seed, VALIDATION, 1)

    pior = 0.0
    for L, N, M, K in casos:
        cfg = _cfg(L, N, M)
        ls = random_large_scale(rng, L, N, k=K, own=(0.5, 1.0), cross=(0.05, 0.5))
        for kind in KINDS:
            pior = max(pior, _oracle_ratio(cfg, ls, kind, mc, z))
    return [_at_most("oracle.matrix", pior, 1.0)]


# ============================================================
# 3️⃣ Momentos A–F
# ============================================================
def _moment_indices(term: MomentTerm, L: int, N: int) -> List[Tuple]:
    n = 0
    if term is MomentTerm.C:
        return [(0, n, None, t) for t in range(1, N)]
    if term is MomentTerm.D:
        return [(0, n, l, None) for l in range(1, L)]
    if term is MomentTerm.E:
        return [(0, n, l, t) for l in range(1, L) for t in range(1, N)]
    return [(0, n, None, None)]


def suite_moments(scenario: Scenario, samples: int = MOMENT_SAMPLES) -> List[CheckResult]:
    mc = replace(scenario.settings, n_small_scale=samples, target_cell=0)
    resultados = []
    for nome, (cfg, ls) in moment_cases().items():
        for kind in KINDS:
            for term in MomentTerm:
                for indices in _moment_indices(term, cfg.L, cfg.N):
                    est = estimate_moment(term, cfg, ls, kind, indices, mc)
                    sufixo = "".join(str(i) for i in indices if i is not None)
                    resultados.append(_at_most(f"moments.{nome}_{kind.value}_{term.value}{sufixo}", est.z_score, 3.0))
    return resultados


# ============================================================
# 4️⃣ Assíntotas
# ============================================================
LARGE_M = 10**6
LARGE_K = 1e6


def suite_asymptotes(scenario: Scenario, n_configs: int = 20) -> List[CheckResult]:
    rng = split_stream(scenario.settings.seed, VALIDATION, 2)
    pior_m = {k: 0.0 for k in KINDS}
    pior_k = {k: 0.0 for k in KINDS}

    for _ in range(n_configs):
        L, N = int(rng.integers(2, 4)), int(rng.integers(1, 3))
        cfg = _cfg(L, N, int(rng.integers(8, 129)))
        ls = random_large_scale(rng, L, N)
        ls_k = random_large_scale(rng, L, N, k=LARGE_K)
        grande = cfg.with_antennas(LARGE_M)
        for kind in KINDS:
            for n in range(N):
                pior_m[kind] = max(pior_m[kind], _rel(
                    sinr_closed(grande, ls, 0, n, kind), sinr_limit_large_M(grande, ls, 0, n, kind)
                ))
                pior_k[kind] = max(pior_k[kind], _rel(
                    sinr_closed(cfg, ls_k, 0, n, kind), sinr_limit_large_K(cfg, ls_k, 0, n, kind)
                ))

    resultados = []
    for kind in KINDS:
        resultados.append(_at_most(f"asymptotes.large_M_{kind.value}", pior_m[kind], 1e-3))
        resultados.append(_at_most(f"asymptotes.large_K_{kind.value}", pior_k[kind], 1e-3))

    # K grande: MMSE ∝ M, LS satura (AoAs separados)
    beta = random_large_scale(rng, 3, 4).beta
    cfg, ls = make_case(beta, 1.0, separated_aoa(3, 4), 4096)
    cfg2 = cfg.with_antennas(8192)
    razao_mmse = min(
        sinr_limit_large_K(cfg2, ls, 0, n, EstimatorKind.MMSE) / sinr_limit_large_K(cfg, ls, 0, n, EstimatorKind.MMSE)
        for n in range(4)
    )
    razao_ls = max(
        sinr_limit_large_K(cfg2, ls, 0, n, EstimatorKind.LS) / sinr_limit_large_K(cfg, ls, 0, n, EstimatorKind.LS)
        for n in range(4)
    )
    resultados.append(_at_most("asymptotes.large_K_MMSE_doubles", abs(razao_mmse - 2.0) / 2.0, 0.05))
    resultados.append(_at_most("asymptotes.large_K_LS_saturates", abs(razao_ls - 1.0), 0.05))

    # limite LS em M grande não depende do K compartilhado
    ls_cenario = realize_drop(scenario.cfg, scenario.geometry, scenario.settings.seed, 0)
    j = scenario.settings.target_cell
    if scenario.cfg.L > 1:
        limites = [
            sum_se(spectral_efficiency(
                [sinr_limit_large_M(scenario.cfg, ls_cenario.with_k(k), j, n, EstimatorKind.LS)
                 for n in range(scenario.cfg.N)],
                scenario.cfg.T, scenario.cfg.tau,
            ))
            for k in (0.0, 1.0, 10.0)
        ]
        variacao = (max(limites) - min(limites)) / max(limites)
        resultados.append(_at_most("asymptotes.LS_limit_K_invariance", variacao, 1e-12))

    e2_cfg, e2_ls = e2_case()
    resultados.append(_at_most("asymptotes.E2_LS_limit", abs(sinr_limit_large_M(e2_cfg, e2_ls, 0, 0, "LS") - 16.0), 1e-9))
    resultados.append(_at_most("asymptotes.E2_MMSE_limit", abs(sinr_limit_large_M(e2_cfg, e2_ls, 0, 0, "MMSE") - 49.0), 1e-9))
    return resultados


# ============================================================
# ▶️ Execução
# ============================================================
_SUITES: Dict[str, Callable[[Scenario], List[CheckResult]]] = {
    "identities": suite_identities,
    "oracle": suite_oracle,
    "moments": suite_moments,
    "asymptotes": suite_asymptotes,
}


def run_validate(scenario: Scenario, suite: str, matrix: bool = False) -> List[CheckResult]:
    if suite not in _SUITES:
        raise ScenarioError(f"Suíte desconhecida {suite!r}; use uma de {', '.join(SUITES)}")

    logger.info(f"🧪 Suíte {suite} | seed={scenario.settings.seed}")
    if suite == "oracle":
        resultados = suite_oracle(scenario, matrix=matrix)
    else:
        resultados = _SUITES[suite](scenario)

    falhas = [r for r in resultados if not r.passed]
    for r in falhas:
        logger.error(f"❌ {r.line()}")
    if not falhas:
        logger.success(f"✅ {suite}: {len(resultados)} verificações aprovadas")
    return resultados
