#ricean_se/src/ricean_se/application/drop_runner.py

# ============================================================
# 🌍 Média em dois níveis: drops de larga escala × pequena escala
# ============================================================

from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from loguru import logger

from src.ricean_se.application.monte_carlo import McSettings, estimate_sinr_empirical
from src.ricean_se.application.random_streams import DROP, split_stream
from src.ricean_se.domain.analytics import (
    sinr_closed_all,
    sinr_limit_all,
    spectral_efficiency,
    sum_se,
)
from src.ricean_se.domain.entities import EstimatorKind, LargeScaleRealization, SinrReport, SystemConfig
from src.ricean_se.domain.errors import SharedKError, UnboundedLimit
from src.ricean_se.domain.geometry import CellLayout, drop_users
from src.ricean_se.domain.large_scale import ConstantK, FadingParams, KPolicy, realize_large_scale


@dataclass(frozen=True)
class DropGeometry:
    layout: CellLayout
    k_policy: KPolicy = ConstantK(1.0)
    fading: FadingParams = FadingParams()


@dataclass(frozen=True, eq=False)
class DropSummary:
    kind: EstimatorKind
    n_drops: int
    sum_se_closed: float
    sum_se_closed_per_drop: np.ndarray
    sum_se_empirical: Optional[float] = None
    sum_se_empirical_std_error: Optional[float] = None
    sum_se_asymptote: Optional[float] = None
    reports: List[SinrReport] = field(default_factory=list)


def realize_drop(cfg: SystemConfig, geometry: DropGeometry, seed: int, drop_index: int) -> LargeScaleRealization:
    """Drop d depende só de (seed, d): os mesmos usuários em todos os pontos de um sweep."""
    rng = split_stream(seed, DROP, drop_index)
    drop = drop_users(geometry.layout, cfg.N, rng)
    return realize_large_scale(cfg, geometry.layout, drop, geometry.k_policy, rng, geometry.fading)


def _sum_se_std_error(sinr: np.ndarray, erro: np.ndarray, T: int, tau: int) -> float:
    """Propagação (método delta) do erro do SINR para a soma de SE de um único drop."""
    derivada = (T - tau) / T / (np.log(2.0) * (1.0 + sinr))
    return float(np.sqrt(np.sum((derivada * erro) ** 2)))


def run_drops(
    cfg: SystemConfig,
    geometry: DropGeometry,
    kind: EstimatorKind,
    settings: McSettings,
    with_monte_carlo: bool = False,
    asymptote: Optional[str] = None,
) -> DropSummary:
    """
    Para cada drop: formas fechadas, (opcional) SINR empírico e (opcional) limite
    assintótico "M" ou "K"; médias da soma de SE sobre os drops.
    """
    kind = EstimatorKind(kind)
    j = settings.target_cell
    sufixo = kind.value.lower()

    fechado, empirico, erros_empiricos, assintotas = [], [], [], []
    relatorios = []
    assintota_ok = asymptote is not None

    for d in range(settings.n_large_scale):
        ls = realize_drop(cfg, geometry, settings.seed, d)

        campos = {f"sinr_closed_{sufixo}": sinr_closed_all(cfg, ls, kind, j)}
        fechado.append(sum_se(spectral_efficiency(campos[f"sinr_closed_{sufixo}"], cfg.T, cfg.tau)))

        if with_monte_carlo:
            emp = estimate_sinr_empirical(cfg, ls, kind, settings, drop_index=d)
            campos[f"sinr_empirical_{sufixo}"] = emp.sinr
            empirico.append(sum_se(spectral_efficiency(emp.sinr, cfg.T, cfg.tau)))
            erros_empiricos.append(_sum_se_std_error(emp.sinr, emp.std_error, cfg.T, cfg.tau))

        if assintota_ok:
            try:
                limite = sinr_limit_all(cfg, ls, kind, asymptote, j)
            except (UnboundedLimit, SharedKError) as e:
                logger.warning(f"⚠️ Assíntota {asymptote} indisponível: {e}")
                assintota_ok = False
            else:
                campos[f"sinr_limit_{asymptote}_{sufixo}"] = limite
                assintotas.append(sum_se(spectral_efficiency(limite, cfg.T, cfg.tau)))

        relatorios.append(SinrReport(T=cfg.T, tau=cfg.tau, **campos))

    fechado = np.asarray(fechado)
    resumo = dict(
        kind=kind,
        n_drops=settings.n_large_scale,
        sum_se_closed=float(fechado.mean()),
        sum_se_closed_per_drop=fechado,
        reports=relatorios,
    )

    if with_monte_carlo:
        empirico = np.asarray(empirico)
        resumo["sum_se_empirical"] = float(empirico.mean())
        if empirico.size >= 2:
            resumo["sum_se_empirical_std_error"] = float(empirico.std(ddof=1) / np.sqrt(empirico.size))
        else:
            resumo["sum_se_empirical_std_error"] = erros_empiricos[0]

    if assintota_ok:
        resumo["sum_se_asymptote"] = float(np.mean(assintotas))

    logger.info(
        f"📊 {kind.value} | M={cfg.M} | drops={settings.n_large_scale} | "
        f"soma SE fechada={resumo['sum_se_closed']:.4f} bit/s/Hz"
    )
    return DropSummary(**resumo)
