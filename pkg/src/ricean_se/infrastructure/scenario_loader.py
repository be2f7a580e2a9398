#ricean_se/src/ricean_se/infrastructure/scenario_loader.py

# ============================================================
# 📄 Leitura de cenários (.scenario, YAML plano)
# ============================================================

from dataclasses import dataclass, replace
from pathlib import Path
from typing import Literal, Optional, Union

import yaml
from loguru import logger
from pydantic import BaseModel, Extra, ValidationError, root_validator, validator

from src.ricean_se.application.drop_runner import DropGeometry
from src.ricean_se.application.monte_carlo import McSettings
from src.ricean_se.config import DEFAULT_WORKERS
from src.ricean_se.domain.entities import SystemConfig
from src.ricean_se.domain.errors import ScenarioError
from src.ricean_se.domain.geometry import build_hex_layout
from src.ricean_se.domain.large_scale import ConstantK, FadingParams, KPolicy, UniformDbK
from src.ricean_se.domain.validators import validate_config


class ScenarioModel(BaseModel):
    """Chaves aceitas no arquivo; qualquer outra é erro. Defaults = protocolo de referência."""

    L: int = 7
    N: int = 10
    M: int = 100
    tau: Optional[int] = None          # None -> tau = N
    T: int = 196
    rho_u_db: float = 20.0
    rho_p_db: float = 30.0
    k_db: float = 0.0
    k_policy: Literal["constant", "uniform_db"] = "constant"
    k_db_low: Optional[float] = None
    k_db_high: Optional[float] = None
    cell_radius_m: float = 500.0
    shadowing_db: float = 8.0
    path_loss_exponent: float = 3.8
    eta_min_m: float = 200.0
    antenna_spacing_over_wavelength: float = 0.5
    target_cell: int = 0
    n_large_scale: int = 100
    n_small_scale: int = 100
    seed: int = 42

    class Config:
        extra = Extra.forbid

    @validator("cell_radius_m", "eta_min_m", "path_loss_exponent")
    def _positivo(cls, v, field):
        if v <= 0:
            raise ValueError(f"{field.name} deve ser > 0")
        return v

    @validator("shadowing_db")
    def _sombreamento(cls, v):
        if v < 0:
            raise ValueError("shadowing_db deve ser >= 0")
        return v

    @validator("n_large_scale", "n_small_scale", "seed", "target_cell")
    def _contagens(cls, v, field):
        minimo = 0 if field.name in ("seed", "target_cell") else 1
        if v < minimo:
            raise ValueError(f"{field.name} deve ser >= {minimo}")
        return v

    @root_validator(skip_on_failure=True)
    def _politica_k(cls, values):
        if values["k_policy"] == "uniform_db":
            low, high = values.get("k_db_low"), values.get("k_db_high")
            if low is None or high is None:
                raise ValueError("k_policy='uniform_db' exige k_db_low e k_db_high")
            if low > high:
                raise ValueError("k_db_low deve ser <= k_db_high")
        if values.get("tau") is None:
            values["tau"] = values["N"]
        if values["target_cell"] >= values["L"]:
            raise ValueError(f"target_cell={values['target_cell']} fora de [0, {values['L']})")
        return values


@dataclass(frozen=True, eq=False)
class Scenario:
    cfg: SystemConfig
    geometry: DropGeometry
    settings: McSettings
    model: ScenarioModel

    def with_settings(self, **mudancas) -> "Scenario":
        return replace(self, settings=replace(self.settings, **mudancas))


def build_k_policy(model: ScenarioModel) -> KPolicy:
    if model.k_policy == "uniform_db":
        return UniformDbK(model.k_db_low, model.k_db_high)
    return ConstantK.from_db(model.k_db)


def scenario_from_model(model: ScenarioModel, workers: int = DEFAULT_WORKERS) -> Scenario:
    cfg = SystemConfig.from_db(
        L=model.L,
        N=model.N,
        M=model.M,
        tau=model.tau,
        T=model.T,
        rho_u_db=model.rho_u_db,
        rho_p_db=model.rho_p_db,
        antenna_spacing_over_wavelength=model.antenna_spacing_over_wavelength,
    )
    validate_config(cfg)

    geometry = DropGeometry(
        layout=build_hex_layout(model.L, model.cell_radius_m),
        k_policy=build_k_policy(model),
        fading=FadingParams(
            shadowing_db=model.shadowing_db,
            path_loss_exponent=model.path_loss_exponent,
            eta_min_m=model.eta_min_m,
        ),
    )
    settings = McSettings(
        n_large_scale=model.n_large_scale,
        n_small_scale=model.n_small_scale,
        seed=model.seed,
        target_cell=model.target_cell,
        parallelism=workers,
    )
    return Scenario(cfg=cfg, geometry=geometry, settings=settings, model=model)


def parse_scenario(texto: str, origem: str = "<texto>", workers: int = DEFAULT_WORKERS) -> Scenario:
    try:
        dados = yaml.safe_load(texto)
    except yaml.YAMLError as e:
        raise ScenarioError(f"{origem}: YAML inválido ({e})") from e

    if dados is None:
        dados = {}
    if not isinstance(dados, dict):
        raise ScenarioError(f"{origem}: o cenário deve ser um mapeamento chave: valor (recebido {type(dados).__name__})")

    try:
        model = ScenarioModel(**dados)
    except ValidationError as e:
        erros = "; ".join(f"{'.'.join(map(str, err['loc']))}: {err['msg']}" for err in e.errors())
        raise ScenarioError(f"{origem}: {erros}") from e

    return scenario_from_model(model, workers)


def load_scenario(path: Union[str, Path], workers: int = DEFAULT_WORKERS) -> Scenario:
    path = Path(path)
    try:
        texto = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ScenarioError(f"Não foi possível ler o cenário {path}: {e}") from e

    cenario = parse_scenario(texto, str(path), workers)
    logger.info(
        f"📄 Cenário {path.name} | L={cenario.cfg.L} N={cenario.cfg.N} M={cenario.cfg.M} "
        f"| K={cenario.model.k_policy} | drops={cenario.settings.n_large_scale}×{cenario.settings.n_small_scale}"
    )
    return cenario


def paper_defaults(workers: int = DEFAULT_WORKERS) -> Scenario:
    """L=7, N=10, raio 500 m, ξ=8 dB, α=3.8, η_min=200 m, T=196, ρ_p=30 dB, ρ_u=20 dB, τ=N, 100×100."""
    return scenario_from_model(ScenarioModel(), workers)
