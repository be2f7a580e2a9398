#ricean_se/src/ricean_se/domain/estimation.py

# ============================================================
# 📦 Estimação LS / MMSE da componente NLOS e estimativa composta
# ============================================================

from dataclasses import dataclass

import numpy as np

from src.ricean_se.domain.channel import PilotObservation, los_steering
from src.ricean_se.domain.entities import EstimatorKind, LargeScaleRealization, SystemConfig

__all__ = [
    "EstimatorKind",
    "EstimateSet",
    "ls_estimate_nlos",
    "ls_estimate_nlos_all",
    "mmse_shrinkage",
    "mmse_shrinkage_all",
    "nlos_estimation_error_variance",
    "estimate",
]


@dataclass(frozen=True, eq=False)
class EstimateSet:
    h_hat: np.ndarray       # (..., N, M) estimativas compostas dos usuários da célula observada
    nlos_hat: np.ndarray    # (..., N, M) estimativas NLOS (já escaladas por χ no MMSE)
    kind: EstimatorKind
    chi: np.ndarray         # (N,), 1.0 para LS


def _interference_power(cfg: SystemConfig, ls: LargeScaleRealization, j: int) -> np.ndarray:
    """Σ_{l≠j} ρ_ln (K_ln + 1) β_jln, por usuário n."""
    termos = cfg.pilot_powers * (ls.ricean_k + 1.0) * ls.beta[j]
    return termos.sum(axis=0) - termos[j]


def nlos_estimation_error_variance(cfg: SystemConfig, ls: LargeScaleRealization, j: int) -> np.ndarray:
    """Variância por entrada do erro da estimativa LS da NLOS: (Σ_{l≠j} ρ(K+1)β + 1) / ρ_jn."""
    return (_interference_power(cfg, ls, j) + 1.0) / cfg.pilot_powers[j]


def mmse_shrinkage_all(cfg: SystemConfig, ls: LargeScaleRealization, j: int) -> np.ndarray:
    sinal = cfg.pilot_powers[j] * ls.beta[j, j]
    return sinal / (sinal + _interference_power(cfg, ls, j) + 1.0)


def mmse_shrinkage(cfg: SystemConfig, ls: LargeScaleRealization, j: int, n: int) -> float:
    """χ_jn = ρ_jn β_jjn / (ρ_jn β_jjn + Σ_{l≠j} ρ_ln (K_ln+1) β_jln + 1)."""
    return float(mmse_shrinkage_all(cfg, ls, j)[n])


def ls_estimate_nlos_all(
    obs: PilotObservation,
    phi: np.ndarray,
    cfg: SystemConfig,
    ls: LargeScaleRealization,
    j: int = 0,
) -> np.ndarray:
    """
    Remove a contribuição LOS conhecida, correlaciona com φ_n e normaliza por sqrt(ρ_jn):
    resultado = h_NLOS + Σ_{l≠j} sqrt(ρ_ln (K_ln+1)/ρ_jn) h_jln,NLOS + ñ/sqrt(ρ_jn).
    Saída (..., N, M).
    """
    rho = cfg.pilot_powers[j]
    k = ls.ricean_k[j]
    los = los_steering(cfg.M, ls.beta[j, j], ls.aoa[j], cfg.antenna_spacing_over_wavelength)

    correlacionado = np.einsum("...mt,tn->...nm", obs.y_train, phi)
    sem_los = correlacionado - np.sqrt(rho * k)[:, None] * los
    return sem_los / np.sqrt(rho)[:, None]


def ls_estimate_nlos(
    obs: PilotObservation,
    phi: np.ndarray,
    cfg: SystemConfig,
    ls: LargeScaleRealization,
    n: int,
    j: int = 0,
) -> np.ndarray:
    return ls_estimate_nlos_all(obs, phi, cfg, ls, j)[..., n, :]


def estimate(
    obs: PilotObservation,
    phi: np.ndarray,
    cfg: SystemConfig,
    ls: LargeScaleRealization,
    kind: EstimatorKind,
    j: int = 0,
) -> EstimateSet:
    kind = EstimatorKind(kind)
    nlos_hat = ls_estimate_nlos_all(obs, phi, cfg, ls, j)

    if kind is EstimatorKind.MMSE:
        chi = mmse_shrinkage_all(cfg, ls, j)
        nlos_hat = chi[:, None] * nlos_hat
    else:
        chi = np.ones(cfg.N)

    k = ls.ricean_k[j]
    los = los_steering(cfg.M, ls.beta[j, j], ls.aoa[j], cfg.antenna_spacing_over_wavelength)
    h_hat = np.sqrt(k / (k + 1.0))[:, None] * los + np.sqrt(1.0 / (k + 1.0))[:, None] * nlos_hat

    return EstimateSet(h_hat=h_hat, nlos_hat=nlos_hat, kind=kind, chi=chi)
