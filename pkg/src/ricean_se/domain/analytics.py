#ricean_se/src/ricean_se/domain/analytics.py

# ============================================================
# 📦 Formas fechadas: SINR efetivo (LS / MMSE), limites e SE
# ============================================================
#
# Convenções: j = célula observada, n = usuário; ρ = potência de piloto,
# β = ganho de larga escala, K = fator Ricean (linear), tudo em escala linear.

from dataclasses import dataclass

import numpy as np

from src.ricean_se.domain.entities import EstimatorKind, LargeScaleRealization, SystemConfig
from src.ricean_se.domain.errors import DimensionError, SharedKError, UnboundedLimit
from src.ricean_se.domain.estimation import mmse_shrinkage
from src.ricean_se.domain.validators import require_half_wavelength

# Limiar de |sin(π/2·Δ)| abaixo do qual φ_nt usa o valor-limite
PHI_SINGULAR_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class SinrIngredients:
    psi: float          # contaminação de piloto: Σ_{l≠j} ρ_ln (K_ln+1) β_jln²
    zeta: float         # Σ_c ρ_cn (K_cn+1) β_jcn + 1
    vartheta: float     # Σ_l Σ_t β_jlt + 1/ρ_u
    varsigma: float     # correção LOS intra-célula (sem sinal definido)
    chi: float          # shrinkage MMSE
    phi: np.ndarray     # (N, N), diagonal = M
    varrho: float       # análogo de varsigma com K -> ∞


def phi_coefficient(M: int, theta_n, theta_t):
    """
    sin(Mπ/2·Δ) / sin(π/2·Δ), Δ = sin θ_n − sin θ_t (d = λ/2).
    Nos pontos singulares usa o limite M·cos(Mπ/2·Δ)/cos(π/2·Δ) (= M em Δ = 0).
    """
    delta = np.sin(np.asarray(theta_n, dtype=float)) - np.sin(np.asarray(theta_t, dtype=float))
    den = np.sin(0.5 * np.pi * delta)
    singular = np.abs(den) < PHI_SINGULAR_TOL

    num = np.sin(0.5 * M * np.pi * delta)
    razao = num / np.where(singular, 1.0, den)
    limite = M * np.cos(0.5 * M * np.pi * delta) / np.cos(0.5 * np.pi * delta)
    valor = np.where(singular, limite, razao)
    return float(valor) if valor.ndim == 0 else valor


def phi_matrix(M: int, aoa_cell) -> np.ndarray:
    aoa_cell = np.asarray(aoa_cell, dtype=float)
    return phi_coefficient(M, aoa_cell[:, None], aoa_cell[None, :])


def _others(L: int, j: int) -> np.ndarray:
    mask = np.ones(L, dtype=bool)
    mask[j] = False
    return mask


def ingredients(cfg: SystemConfig, ls: LargeScaleRealization, j: int, n: int) -> SinrIngredients:
    require_half_wavelength(cfg)

    rho = cfg.pilot_powers[:, n]
    k = ls.ricean_k[:, n]
    beta_n = ls.beta[j, :, n]                # β_jln, l = 0..L-1
    outros = _others(cfg.L, j)

    psi = float(np.sum((rho * (k + 1.0) * beta_n ** 2)[outros]))
    zeta = float(np.sum(rho * (k + 1.0) * beta_n) + 1.0)
    vartheta = float(ls.beta[j].sum() + 1.0 / cfg.rho_u)

    phi = phi_matrix(cfg.M, ls.aoa[j])
    beta_own = ls.beta[j, j]                 # β_jjt, t = 0..N-1
    k_own = ls.ricean_k[j]
    peso = k_own / (k_own + 1.0)
    fora_diag = np.ones(cfg.N, dtype=bool)
    fora_diag[n] = False
    espalhamento = (phi[n] ** 2 / cfg.M) * beta_own

    varsigma = float(np.sum((peso * espalhamento)[fora_diag]) - np.sum(peso * beta_own))
    varrho = float(np.sum(espalhamento[fora_diag]) - np.sum(beta_own))

    return SinrIngredients(
        psi=psi,
        zeta=zeta,
        vartheta=vartheta,
        varsigma=varsigma,
        chi=mmse_shrinkage(cfg, ls, j, n),
        phi=phi,
        varrho=varrho,
    )


def sinr_closed(cfg: SystemConfig, ls: LargeScaleRealization, j: int, n: int, kind: EstimatorKind) -> float:
    ing = ingredients(cfg, ls, j, n)
    M = cfg.M
    rho = cfg.pilot_powers[j, n]
    k = ls.ricean_k[j, n]
    beta = ls.beta[j, j, n]

    if EstimatorKind(kind) is EstimatorKind.LS:
        num = M * rho * (k + 1.0) * beta ** 2
        den = M * ing.psi + ing.zeta * ing.vartheta + rho * k * beta * ing.varsigma
    else:
        chi = ing.chi
        num = M * rho * (k + chi) ** 2 * beta ** 2
        den = (
            M * chi ** 2 * (k + 1.0) * ing.psi
            + rho * (k + chi) * (k + 1.0) * beta * ing.vartheta
            + rho * k * (k + 1.0) * beta * ing.varsigma
        )
    return float(num / den)


def sinr_rayleigh(cfg: SystemConfig, ls: LargeScaleRealization, j: int, n: int) -> float:
    """Caso K = 0 (ignora os fatores K da realização)."""
    rho = cfg.pilot_powers[:, n]
    beta_n = ls.beta[j, :, n]
    outros = _others(cfg.L, j)
    vartheta = ls.beta[j].sum() + 1.0 / cfg.rho_u

    num = cfg.M * rho[j] * beta_n[j] ** 2
    den = cfg.M * np.sum((rho * beta_n ** 2)[outros]) + (np.sum(rho * beta_n) + 1.0) * vartheta
    return float(num / den)


def sinr_limit_large_M(cfg: SystemConfig, ls: LargeScaleRealization, j: int, n: int, kind: EstimatorKind) -> float:
    rho = cfg.pilot_powers[:, n]
    k = ls.ricean_k[:, n]
    beta_n = ls.beta[j, :, n]
    psi = float(np.sum((rho * (k + 1.0) * beta_n ** 2)[_others(cfg.L, j)]))
    if psi <= 0.0:
        raise UnboundedLimit(
            f"Sem contaminação de piloto (ψ=0, L={cfg.L}): SINR cresce sem limite com M"
        )

    if EstimatorKind(kind) is EstimatorKind.LS:
        return float(rho[j] * (k[j] + 1.0) * beta_n[j] ** 2 / psi)

    chi = mmse_shrinkage(cfg, ls, j, n)
    return float(rho[j] * (k[j] + chi) ** 2 * beta_n[j] ** 2 / (chi ** 2 * (k[j] + 1.0) * psi))


def sinr_rayleigh_limit_large_M(cfg: SystemConfig, ls: LargeScaleRealization, j: int, n: int) -> float:
    rho = cfg.pilot_powers[:, n]
    beta_n = ls.beta[j, :, n]
    contaminacao = float(np.sum((rho * beta_n ** 2)[_others(cfg.L, j)]))
    if contaminacao <= 0.0:
        raise UnboundedLimit(f"Sem contaminação de piloto (L={cfg.L})")
    return float(rho[j] * beta_n[j] ** 2 / contaminacao)


def sinr_limit_large_K(cfg: SystemConfig, ls: LargeScaleRealization, j: int, n: int, kind: EstimatorKind) -> float:
    if not ls.has_shared_k():
        raise SharedKError("Limite de K grande exige K_ln = K para todos os usuários")
    require_half_wavelength(cfg)

    M = cfg.M
    rho = cfg.pilot_powers[:, n]
    beta_n = ls.beta[j, :, n]
    outros = _others(cfg.L, j)
    beta_own = ls.beta[j, j]
    phi = phi_matrix(M, ls.aoa[j])
    fora_diag = np.ones(cfg.N, dtype=bool)
    fora_diag[n] = False
    espalhamento = float(np.sum(((phi[n] ** 2 / M) * beta_own)[fora_diag]))

    if EstimatorKind(kind) is EstimatorKind.LS:
        varrho = espalhamento - float(np.sum(beta_own))
        vartheta = ls.beta[j].sum() + 1.0 / cfg.rho_u
        num = M * rho[j] * beta_n[j] ** 2
        den = (
            M * np.sum((rho * beta_n ** 2)[outros])
            + np.sum(rho * beta_n) * vartheta
            + rho[j] * beta_n[j] * varrho
        )
        return float(num / den)

    interferencia = float(ls.beta[j][outros].sum()) + 1.0 / cfg.rho_u
    return float(M * beta_n[j] / (interferencia + espalhamento))


def spectral_efficiency(sinr, T: int, tau: int):
    """R = ((T − τ)/T) · log2(1 + SINR), em bit/s/Hz."""
    if not tau < T:
        raise DimensionError(f"tau={tau} deve ser < T={T}")
    s = np.asarray(sinr, dtype=float)
    if np.any(s < 0):
        raise ValueError("SINR negativo")
    r = (T - tau) / T * np.log2(1.0 + s)
    return float(r) if r.ndim == 0 else r


def sum_se(per_user_se) -> float:
    return float(np.sum(np.asarray(per_user_se, dtype=float)))


# ============================================================
# 📈 Avaliadores por célula (todos os usuários da célula alvo)
# ============================================================
def sinr_closed_all(cfg: SystemConfig, ls: LargeScaleRealization, kind: EstimatorKind, j: int = 0) -> np.ndarray:
    return np.array([sinr_closed(cfg, ls, j, n, kind) for n in range(cfg.N)])


def sinr_limit_all(
    cfg: SystemConfig, ls: LargeScaleRealization, kind: EstimatorKind, regime: str, j: int = 0
) -> np.ndarray:
    fn = {"M": sinr_limit_large_M, "K": sinr_limit_large_K}[regime]
    return np.array([fn(cfg, ls, j, n, kind) for n in range(cfg.N)])


def sum_se_closed(cfg: SystemConfig, ls: LargeScaleRealization, kind: EstimatorKind, j: int = 0) -> float:
    return sum_se(spectral_efficiency(sinr_closed_all(cfg, ls, kind, j), cfg.T, cfg.tau))


def sum_se_limit(
    cfg: SystemConfig, ls: LargeScaleRealization, kind: EstimatorKind, regime: str, j: int = 0
) -> float:
    return sum_se(spectral_efficiency(sinr_limit_all(cfg, ls, kind, regime, j), cfg.T, cfg.tau))
