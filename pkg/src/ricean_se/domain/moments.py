#ricean_se/src/ricean_se/domain/moments.py

# ============================================================
# 📦 Momentos do canal estimado (termos A–F) em forma fechada
# ============================================================
#
# Estimativa composta escrita com um peso genérico λ na parte NLOS:
#   ĥ_jjn = a·h_LOS + b·λ·(h_NLOS + e),  a² = K/(K+1), b² = 1/(K+1)
# λ = 1 no LS e λ = χ_jn no MMSE; e tem variância ε_jn por entrada.
#
#   A = |E{ĥ_jjn† h_jjn}|²
#   B = E{|ĥ_jjn† h_jjn|²}
#   C = E{|ĥ_jjn† h_jjt|²}   t ≠ n
#   D = E{|ĥ_jjn† h_jln|²}   l ≠ j
#   E = E{|ĥ_jjn† h_jlt|²}   l ≠ j, t ≠ n
#   F = E{‖ĥ_jjn‖²}

from enum import Enum
from typing import Dict, Optional

import numpy as np

from src.ricean_se.domain.analytics import phi_coefficient
from src.ricean_se.domain.entities import EstimatorKind, LargeScaleRealization, SystemConfig
from src.ricean_se.domain.errors import MomentIndexError
from src.ricean_se.domain.estimation import mmse_shrinkage, nlos_estimation_error_variance
from src.ricean_se.domain.validators import require_half_wavelength


class MomentTerm(str, Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"
    E = "E"
    F = "F"


def nlos_weight(cfg: SystemConfig, ls: LargeScaleRealization, j: int, n: int, kind: EstimatorKind) -> float:
    return 1.0 if EstimatorKind(kind) is EstimatorKind.LS else mmse_shrinkage(cfg, ls, j, n)


def check_moment_indices(
    term: MomentTerm, cfg: SystemConfig, j: int, n: int, l: Optional[int] = None, t: Optional[int] = None
) -> None:
    term = MomentTerm(term)
    if not 0 <= j < cfg.L:
        raise MomentIndexError(f"j={j} fora de [0, {cfg.L})")
    if not 0 <= n < cfg.N:
        raise MomentIndexError(f"n={n} fora de [0, {cfg.N})")

    precisa_l = term in (MomentTerm.D, MomentTerm.E)
    precisa_t = term in (MomentTerm.C, MomentTerm.E)

    if precisa_l:
        if l is None or not 0 <= l < cfg.L or l == j:
            raise MomentIndexError(f"Termo {term.value} exige l ≠ j em [0, {cfg.L}) (recebido l={l}, j={j})")
    elif l is not None and l != j:
        raise MomentIndexError(f"Termo {term.value} não aceita l ≠ j")

    if precisa_t:
        if t is None or not 0 <= t < cfg.N or t == n:
            raise MomentIndexError(f"Termo {term.value} exige t ≠ n em [0, {cfg.N}) (recebido t={t}, n={n})")
    elif t is not None and t != n:
        raise MomentIndexError(f"Termo {term.value} não aceita t ≠ n")


def moment_closed_form(
    term: MomentTerm,
    cfg: SystemConfig,
    ls: LargeScaleRealization,
    j: int,
    n: int,
    kind: EstimatorKind,
    l: Optional[int] = None,
    t: Optional[int] = None,
) -> float:
    term = MomentTerm(term)
    check_moment_indices(term, cfg, j, n, l, t)

    M = cfg.M
    lam = nlos_weight(cfg, ls, j, n, kind)
    lam2 = lam ** 2
    k = ls.ricean_k[j, n]
    beta = ls.beta[j, j, n]
    eps = float(nlos_estimation_error_variance(cfg, ls, j)[n])

    a_term = M ** 2 * beta ** 2 * (k + lam) ** 2 / (k + 1.0) ** 2
    f_term = M * (beta * k + lam2 * (beta + eps)) / (k + 1.0)

    if term is MomentTerm.A:
        return float(a_term)

    if term is MomentTerm.B:
        flutuacao = M * beta ** 2 * (k * (1.0 + lam2) + lam2) / (k + 1.0) ** 2
        return float(a_term + flutuacao + M * beta * lam2 * eps / (k + 1.0))

    if term is MomentTerm.C:
        require_half_wavelength(cfg)
        k_t = ls.ricean_k[j, t]
        beta_t = ls.beta[j, j, t]
        phi = phi_coefficient(M, ls.aoa[j, n], ls.aoa[j, t])
        los = beta * beta_t * (k * k_t * phi ** 2 + M * (k + lam2 * k_t + lam2)) / ((k + 1.0) * (k_t + 1.0))
        return float(los + M * beta_t * lam2 * eps / (k + 1.0))

    if term is MomentTerm.D:
        beta_l = ls.beta[j, l, n]
        rho_l = cfg.pilot_powers[l, n]
        k_l = ls.ricean_k[l, n]
        rho = cfg.pilot_powers[j, n]
        contaminacao = M ** 2 * beta_l ** 2 * lam2 * rho_l * (k_l + 1.0) / (rho * (k + 1.0))
        return float(
            contaminacao
            + M * beta_l * beta * (k + lam2) / (k + 1.0)
            + M * beta_l * lam2 * eps / (k + 1.0)
        )

    if term is MomentTerm.E:
        return float(ls.beta[j, l, t] * f_term)

    return float(f_term)


def moment_terms(
    cfg: SystemConfig, ls: LargeScaleRealization, j: int, n: int, kind: EstimatorKind
) -> Dict[str, float]:
    """A, B, F e as somas de C (t≠n), D (l≠j) e E (l≠j, t≠n) para o usuário (j, n)."""
    outras_celulas = [l for l in range(cfg.L) if l != j]
    outros_usuarios = [t for t in range(cfg.N) if t != n]

    return {
        "A": moment_closed_form(MomentTerm.A, cfg, ls, j, n, kind),
        "B": moment_closed_form(MomentTerm.B, cfg, ls, j, n, kind),
        "C": sum(moment_closed_form(MomentTerm.C, cfg, ls, j, n, kind, t=t) for t in outros_usuarios),
        "D": sum(moment_closed_form(MomentTerm.D, cfg, ls, j, n, kind, l=l) for l in outras_celulas),
        "E": sum(
            moment_closed_form(MomentTerm.E, cfg, ls, j, n, kind, l=l, t=t)
            for l in outras_celulas
            for t in outros_usuarios
        ),
        "F": moment_closed_form(MomentTerm.F, cfg, ls, j, n, kind),
    }


def sinr_from_moments(cfg: SystemConfig, ls: LargeScaleRealization, j: int, n: int, kind: EstimatorKind) -> float:
    """SINR = ρ_u A / (ρ_u (B + ΣC + ΣD + ΣE − A) + F)."""
    m = moment_terms(cfg, ls, j, n, kind)
    interferencia = m["B"] + m["C"] + m["D"] + m["E"] - m["A"]
    return float(cfg.rho_u * m["A"] / (cfg.rho_u * interferencia + m["F"]))
