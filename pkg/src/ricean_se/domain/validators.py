#ricean_se/src/ricean_se/domain/validators.py

from typing import List, Tuple, Type

import numpy as np

from src.ricean_se.domain.entities import SystemConfig
from src.ricean_se.domain.errors import (
    ConfigError,
    DimensionError,
    PowerError,
    RiceanSeError,
    SpacingError,
)

# Espaçamento d/λ para o qual a forma fechada de φ_nt é exata
HALF_WAVELENGTH = 0.5

ValidatedConfig = SystemConfig


def _is_positive_int(valor) -> bool:
    return isinstance(valor, (int, np.integer)) and not isinstance(valor, bool) and valor >= 1


def validate_config(cfg: SystemConfig, closed_form: bool = True) -> ValidatedConfig:
    """
    Devolve cfg inalterado se todas as invariantes valem; caso contrário levanta
    um único erro que enumera todas as violações.
    """
    violacoes: List[Tuple[Type[RiceanSeError], str]] = []

    for nome in ("L", "N", "M", "tau", "T"):
        valor = getattr(cfg, nome)
        if not _is_positive_int(valor):
            violacoes.append((DimensionError, f"{nome} deve ser inteiro >= 1 (recebido {valor!r})"))

    if _is_positive_int(cfg.tau) and _is_positive_int(cfg.N) and cfg.tau < cfg.N:
        violacoes.append((DimensionError, f"tau={cfg.tau} < N={cfg.N}: pilotos não podem ser ortonormais"))
    if _is_positive_int(cfg.tau) and _is_positive_int(cfg.T) and cfg.tau >= cfg.T:
        violacoes.append((DimensionError, f"tau={cfg.tau} >= T={cfg.T}: não sobra intervalo para dados"))

    if _is_positive_int(cfg.L) and _is_positive_int(cfg.N):
        if cfg.pilot_powers.shape != (cfg.L, cfg.N):
            violacoes.append((
                DimensionError,
                f"pilot_powers deve ter forma ({cfg.L}, {cfg.N}), recebido {cfg.pilot_powers.shape}",
            ))

    if not (np.isfinite(cfg.rho_u) and cfg.rho_u > 0):
        violacoes.append((PowerError, f"rho_u deve ser > 0 (recebido {cfg.rho_u})"))
    if cfg.pilot_powers.size == 0 or not np.all(np.isfinite(cfg.pilot_powers) & (cfg.pilot_powers > 0)):
        violacoes.append((PowerError, "todas as potências de piloto devem ser > 0"))

    if closed_form and cfg.antenna_spacing_over_wavelength != HALF_WAVELENGTH:
        violacoes.append((
            SpacingError,
            f"d/λ={cfg.antenna_spacing_over_wavelength} não suportado pelas formas fechadas (apenas 0.5)",
        ))

    if not violacoes:
        return cfg

    categorias = {cls for cls, _ in violacoes}
    if len(categorias) == 1:
        erro = categorias.pop()("; ".join(msg for _, msg in violacoes))
        erro.violations = violacoes
        raise erro

    raise ConfigError(violacoes)


def require_half_wavelength(cfg: SystemConfig) -> None:
    if cfg.antenna_spacing_over_wavelength != HALF_WAVELENGTH:
        raise SpacingError(
            f"Formas fechadas exigem d/λ = 0.5 (recebido {cfg.antenna_spacing_over_wavelength})"
        )
