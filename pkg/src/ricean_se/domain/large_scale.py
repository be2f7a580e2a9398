#ricean_se/src/ricean_se/domain/large_scale.py

# ============================================================
# 📦 Desvanecimento de larga escala (path loss + sombreamento)
# ============================================================

from dataclasses import dataclass

import numpy as np
from loguru import logger

from src.ricean_se.domain.entities import LargeScaleRealization, SystemConfig
from src.ricean_se.domain.geometry import CellLayout, UserDrop, user_distances
from src.ricean_se.domain.units import db_to_linear


@dataclass(frozen=True)
class FadingParams:
    shadowing_db: float = 8.0          # ξ
    path_loss_exponent: float = 3.8    # α
    eta_min_m: float = 200.0           # distância de referência


# ============================================================
# 🎯 Políticas de fator K
# ============================================================
@dataclass(frozen=True)
class ConstantK:
    """Mesmo K (linear) para todos os usuários."""
    k_linear: float

    def draw(self, L: int, N: int, rng: np.random.Generator) -> np.ndarray:
        if self.k_linear < 0:
            raise ValueError(f"K deve ser >= 0 (recebido {self.k_linear})")
        return np.full((L, N), float(self.k_linear))

    @classmethod
    def from_db(cls, k_db: float) -> "ConstantK":
        return cls(db_to_linear(k_db))


@dataclass(frozen=True)
class UniformDbK:
    """K sorteado por usuário, uniforme em dB no intervalo [low_db, high_db]."""
    low_db: float
    high_db: float

    def draw(self, L: int, N: int, rng: np.random.Generator) -> np.ndarray:
        if not self.low_db <= self.high_db:
            raise ValueError(f"Intervalo de K inválido: [{self.low_db}, {self.high_db}] dB")
        return db_to_linear(rng.uniform(self.low_db, self.high_db, size=(L, N)))


KPolicy = ConstantK | UniformDbK


def large_scale_gain(distance, shadow, alpha: float, eta_min: float):
    """β = v / (1 + (η/η_min)^α)."""
    d = np.asarray(distance, dtype=float)
    ganho = np.asarray(shadow, dtype=float) / (1.0 + (d / eta_min) ** alpha)
    return float(ganho) if ganho.ndim == 0 else ganho


def shadowing_draw(xi_db: float, size, rng: np.random.Generator) -> np.ndarray:
    """Sombreamento log-normal: 10·log10(v) ~ N(0, ξ²)."""
    return 10.0 ** (xi_db * rng.standard_normal(size) / 10.0)


def realize_large_scale(
    cfg: SystemConfig,
    layout: CellLayout,
    drop: UserDrop,
    k_policy: KPolicy,
    rng: np.random.Generator,
    fading: FadingParams = FadingParams(),
) -> LargeScaleRealization:
    """
    Ordem fixa de consumo do stream: sombreamento (L×L×N), fator K, AoA (L×N).
    """
    if layout.L != cfg.L or drop.N != cfg.N:
        raise ValueError(
            f"Layout/drop ({layout.L} células, {drop.N} usuários) incompatível com cfg (L={cfg.L}, N={cfg.N})"
        )

    eta = user_distances(layout, drop)
    v = shadowing_draw(fading.shadowing_db, eta.shape, rng)
    beta = large_scale_gain(eta, v, fading.path_loss_exponent, fading.eta_min_m)

    ricean_k = k_policy.draw(cfg.L, cfg.N, rng)

    # AoA independente e uniforme em [0, 2π): nenhuma regra geométrica é imposta
    aoa = np.mod(rng.uniform(0.0, 2.0 * np.pi, size=(cfg.L, cfg.N)), 2.0 * np.pi)

    logger.debug(
        f"🌍 Larga escala: β ∈ [{beta.min():.3e}, {beta.max():.3e}] | "
        f"K ∈ [{ricean_k.min():.3g}, {ricean_k.max():.3g}]"
    )
    return LargeScaleRealization(beta=beta, ricean_k=ricean_k, aoa=aoa)
