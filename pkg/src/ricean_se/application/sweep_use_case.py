#ricean_se/src/ricean_se/application/sweep_use_case.py

# ============================================================
# 🚀 Sweeps em M ou em K: CSV + metadados + SVG
# ============================================================

import json
import math
from dataclasses import dataclass, field, replace
from datetime import datetime
from enum import Enum
from pathlib import Path
from time import time
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from loguru import logger

from src.ricean_se.application.drop_runner import realize_drop, run_drops
from src.ricean_se.application.random_streams import DUMP, split_stream
from src.ricean_se.config import (
    CHUNK_MAX_ENTRIES,
    CHUNK_SIZE,
    DESK_SCALE_DROPS,
    DESK_SCALE_MAX_M,
    DESK_SCALE_SAMPLES,
)
from src.ricean_se.domain.channel import draw_channel
from src.ricean_se.domain.entities import EstimatorKind
from src.ricean_se.domain.errors import ScenarioError
from src.ricean_se.domain.large_scale import ConstantK, UniformDbK
from src.ricean_se.domain.validators import validate_config
from src.ricean_se.infrastructure.logging.run_logger import snapshot_params
from src.ricean_se.infrastructure.realization_dump import dump_realization
from src.ricean_se.infrastructure.scenario_loader import Scenario
from src.ricean_se.reporting.exporters.csv_exporter import CSVExporter
from src.ricean_se.reporting.exporters.json_exporter import JSONExporter
from src.ricean_se.visualization.sweep_plotting import plot_sweep

RESULT_COLUMNS = (
    "axis",
    "axis_value",
    "fixed_axis",
    "fixed_value",
    "estimator",
    "sum_se_closed",
    "sum_se_empirical",
    "sum_se_std_error",
    "sum_se_asymptote",
    "n_large_scale",
    "n_small_scale",
    "seed",
)


class SweepAxis(str, Enum):
    M = "M"
    K_DB = "K_dB"

    @property
    def other(self) -> "SweepAxis":
        return SweepAxis.K_DB if self is SweepAxis.M else SweepAxis.M


@dataclass(frozen=True)
class SweepSpec:
    axis: SweepAxis
    points: Tuple[float, ...]
    estimators: Tuple[EstimatorKind, ...] = (EstimatorKind.LS, EstimatorKind.MMSE)
    include_asymptotes: bool = False
    include_monte_carlo: bool = False
    fixed_values: Optional[Tuple[float, ...]] = None   # valores do outro eixo (uma curva cada)

    def __post_init__(self):
        if not self.points:
            raise ScenarioError("Sweep sem pontos")
        if any(b <= a for a, b in zip(self.points, self.points[1:])):
            raise ScenarioError(f"Pontos do sweep devem ser estritamente crescentes: {self.points}")
        if not self.estimators:
            raise ScenarioError("Nenhum estimador selecionado")
        if self.axis is SweepAxis.M:
            _check_antennas(self.points)
        else:
            _check_k_db(self.points)
        if self.fixed_values is not None:
            if self.axis is SweepAxis.K_DB:
                _check_antennas(self.fixed_values)
            else:
                _check_k_db(self.fixed_values)


@dataclass
class ResultRow:
    axis: str
    axis_value: float
    fixed_axis: str
    fixed_value: float
    estimator: str
    sum_se_closed: float
    sum_se_empirical: Optional[float]
    sum_se_std_error: Optional[float]
    sum_se_asymptote: Optional[float]
    n_large_scale: int
    n_small_scale: Optional[int]
    seed: int


@dataclass
class SweepResult:
    rows: List[ResultRow]
    csv_path: Optional[Path]
    meta_path: Optional[Path]
    plot_path: Optional[Path] = None
    timestamp: str = field(default_factory=lambda: datetime.now().isoformat(timespec="seconds"))

    def to_frame(self) -> pd.DataFrame:
        return rows_to_frame(self.rows)


def _check_antennas(valores: Sequence[float]) -> None:
    for m in valores:
        if not (float(m).is_integer() and m >= 1):
            raise ScenarioError(f"M deve ser inteiro >= 1 (recebido {m})")


def _check_k_db(valores: Sequence[float]) -> None:
    for k in valores:
        if not (math.isfinite(k) or k == -math.inf):
            raise ScenarioError(f"K_dB aceita apenas valores finitos ou -inf (recebido {k})")


# ============================================================
# 🧾 Gramática do --sweep
# ============================================================
def _parse_number(texto: str) -> float:
    t = texto.strip()
    if t.lower() in ("-inf", "-infinity"):
        return -math.inf
    try:
        return float(t)
    except ValueError:
        raise ScenarioError(f"Valor inválido no sweep: {texto!r}") from None


def parse_values(texto: str) -> Tuple[float, ...]:
    """'50:500:50' (início:fim:passo, inclusivo) ou lista '8,16,32'."""
    texto = texto.strip()
    if not texto:
        raise ScenarioError("Lista de valores vazia")

    if ":" in texto:
        partes = texto.split(":")
        if len(partes) != 3:
            raise ScenarioError(f"Faixa inválida {texto!r}; use início:fim:passo")
        ini, fim, passo = (_parse_number(p) for p in partes)
        if not all(map(math.isfinite, (ini, fim, passo))) or passo <= 0 or fim < ini:
            raise ScenarioError(f"Faixa inválida {texto!r}")
        n = int(math.floor((fim - ini) / passo + 1e-9)) + 1
        return tuple(float(ini + i * passo) for i in range(n))

    return tuple(_parse_number(p) for p in texto.split(","))


def parse_sweep(texto: str) -> Tuple[SweepAxis, Tuple[float, ...]]:
    if "=" not in texto:
        raise ScenarioError(f"Sweep inválido {texto!r}; use M=... ou K_dB=...")
    nome, valores = texto.split("=", 1)
    try:
        eixo = SweepAxis(nome.strip())
    except ValueError:
        raise ScenarioError(f"Eixo desconhecido {nome!r}; use M ou K_dB") from None
    return eixo, parse_values(valores)


def parse_estimators(texto: str) -> Tuple[EstimatorKind, ...]:
    try:
        return tuple(EstimatorKind(p.strip().upper()) for p in texto.split(",") if p.strip())
    except ValueError:
        raise ScenarioError(f"Estimador desconhecido em {texto!r}; use LS e/ou MMSE") from None


# ============================================================
# 🪑 Escala de mesa
# ============================================================
def apply_desk_scale(scenario: Scenario, spec: SweepSpec) -> Tuple[Scenario, SweepSpec]:
    """50×50 médias e M ≤ DESK_SCALE_MAX_M (pontos acima são descartados)."""
    scenario = scenario.with_settings(n_large_scale=DESK_SCALE_DROPS, n_small_scale=DESK_SCALE_SAMPLES)

    def corta(valores):
        mantidos = tuple(v for v in valores if v <= DESK_SCALE_MAX_M)
        if len(mantidos) < len(valores):
            logger.warning(f"⚠️ Escala de mesa: M > {DESK_SCALE_MAX_M} descartado ({len(valores) - len(mantidos)} valores)")
        if not mantidos:
            raise ScenarioError(f"Nenhum M <= {DESK_SCALE_MAX_M} no sweep")
        return mantidos

    if spec.axis is SweepAxis.M:
        spec = replace(spec, points=corta(spec.points))
    elif spec.fixed_values is not None:
        spec = replace(spec, fixed_values=corta(spec.fixed_values))
    elif scenario.cfg.M > DESK_SCALE_MAX_M:
        raise ScenarioError(f"Escala de mesa: M={scenario.cfg.M} do cenário excede {DESK_SCALE_MAX_M}")
    return scenario, spec


# ============================================================
# ▶️ Execução
# ============================================================
def _curves(scenario: Scenario, spec: SweepSpec) -> List[float]:
    if spec.fixed_values is not None:
        return list(spec.fixed_values)
    if spec.axis is SweepAxis.M:
        if isinstance(scenario.geometry.k_policy, UniformDbK):
            return [math.nan]
        return [scenario.model.k_db]
    return [float(scenario.cfg.M)]


def _point(scenario: Scenario, spec: SweepSpec, valor: float, fixo: float):
    """(cfg, geometry) do ponto: M vem de um eixo, K do outro."""
    m, k_db = (valor, fixo) if spec.axis is SweepAxis.M else (fixo, valor)
    cfg = validate_config(scenario.cfg.with_antennas(int(m)))
    geometry = scenario.geometry
    if not math.isnan(k_db):
        geometry = replace(geometry, k_policy=ConstantK.from_db(k_db))
    return cfg, geometry


def _dump_realizations(scenario: Scenario, cfg, geometry, output_dir: Path) -> None:
    settings = scenario.settings
    for d in range(settings.n_large_scale):
        ls = realize_drop(cfg, geometry, settings.seed, d)
        canais = draw_channel(cfg, ls, settings.target_cell, split_stream(settings.seed, DUMP, d))
        dump_realization(output_dir / "realizations" / f"drop_{d:04d}.rse", canais.h)
    logger.info(f"💾 {settings.n_large_scale} realizações salvas em {output_dir / 'realizations'}")


def rows_to_frame(rows: List[ResultRow]) -> pd.DataFrame:
    return pd.DataFrame([r.__dict__ for r in rows], columns=list(RESULT_COLUMNS))


def run_sweep(
    scenario: Scenario,
    spec: SweepSpec,
    output_dir: Optional[Path] = None,
    plot: bool = True,
    dump_realizations: bool = False,
) -> SweepResult:
    inicio = time()
    settings = scenario.settings
    regime = "M" if spec.axis is SweepAxis.M else "K"
    curvas = _curves(scenario, spec)

    logger.info(
        f"🏁 Sweep {spec.axis.value} | {len(spec.points)} pontos × {len(curvas)} curvas × "
        f"{len(spec.estimators)} estimadores | drops={settings.n_large_scale} | seed={settings.seed}"
    )

    linhas: List[ResultRow] = []
    for fixo in curvas:
        for valor in spec.points:
            cfg, geometry = _point(scenario, spec, valor, fixo)

            if dump_realizations and output_dir is not None and not linhas:
                _dump_realizations(scenario, cfg, geometry, Path(output_dir))

            for kind in spec.estimators:
                resumo = run_drops(
                    cfg,
                    geometry,
                    kind,
                    settings,
                    with_monte_carlo=spec.include_monte_carlo,
                    asymptote=regime if spec.include_asymptotes else None,
                )
                linhas.append(ResultRow(
                    axis=spec.axis.value,
                    axis_value=float(valor),
                    fixed_axis=spec.axis.other.value,
                    fixed_value=float(fixo),
                    estimator=kind.value,
                    sum_se_closed=resumo.sum_se_closed,
                    sum_se_empirical=resumo.sum_se_empirical,
                    sum_se_std_error=resumo.sum_se_empirical_std_error,
                    sum_se_asymptote=resumo.sum_se_asymptote,
                    n_large_scale=settings.n_large_scale,
                    n_small_scale=settings.n_small_scale if spec.include_monte_carlo else None,
                    seed=settings.seed,
                ))

    resultado = SweepResult(rows=linhas, csv_path=None, meta_path=None)
    if output_dir is None:
        return resultado

    output_dir = Path(output_dir)
    base = f"{spec.axis.value}_sweep"
    df = rows_to_frame(linhas)
    resultado.csv_path = CSVExporter.export(df, output_dir / f"{base}.csv", columns=RESULT_COLUMNS)

    meta = {
        "timestamp": resultado.timestamp,
        "duration_s": round(time() - inicio, 3),
        "csv": f"{base}.csv",
        "columns": list(RESULT_COLUMNS),
        "params": json.loads(snapshot_params(
            axis=spec.axis.value,
            points=list(spec.points),
            fixed_values=curvas,
            estimators=[k.value for k in spec.estimators],
            monte_carlo=spec.include_monte_carlo,
            asymptotes=spec.include_asymptotes,
            scenario=scenario.model.dict(),
            n_large_scale=settings.n_large_scale,
            n_small_scale=settings.n_small_scale,
            chunk_size=settings.chunk_size if settings.chunk_size is not None else "auto",
            chunk_cap=CHUNK_SIZE,
            chunk_max_entries=CHUNK_MAX_ENTRIES,
            seed=settings.seed,
        )),
        "versions": {"numpy": np.__version__, "pandas": pd.__version__},
    }
    resultado.meta_path = JSONExporter.export(meta, output_dir / f"{base}.meta.json")

    if plot:
        titulo = f"Soma da SE vs {spec.axis.value} (L={scenario.cfg.L}, N={scenario.cfg.N})"
        resultado.plot_path = plot_sweep(df, output_dir / f"{base}.svg", titulo)

    logger.success(f"✅ Sweep concluído em {time() - inicio:.1f}s | {len(linhas)} linhas")
    return resultado
