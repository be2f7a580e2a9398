#ricean_se/src/ricean_se/domain/channel.py

# ============================================================
# 📦 Canal de pequena escala: LOS, composição Ricean, pilotos e dados
# ============================================================
#
# Todas as funções aceitam eixos de realização à esquerda ("...")
# para que o motor Monte-Carlo rode vetorizado.

from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.ricean_se.domain.entities import LargeScaleRealization, SystemConfig
from src.ricean_se.domain.errors import DimensionError


@dataclass(frozen=True, eq=False)
class ChannelRealization:
    """
    Canais vistos pela BS observada j.
    h[..., l, n, :]     canal do usuário n da célula l até a BS j
    nlos[..., l, n, :]  componente NLOS
    los[n, :]           componente LOS dos usuários da própria célula (determinística)
    """
    h: np.ndarray
    los: np.ndarray
    nlos: np.ndarray
    observed_cell: int


@dataclass(frozen=True, eq=False)
class PilotObservation:
    y_train: np.ndarray                  # (..., M, tau)
    noise: Optional[np.ndarray] = None   # N_j, mantido para verificações


def complex_gaussian(shape, variance, rng: np.random.Generator) -> np.ndarray:
    """CN(0, variance): variância total dividida igualmente entre parte real e imaginária."""
    escala = np.sqrt(np.asarray(variance, dtype=float) / 2.0)
    re = rng.standard_normal(shape)
    im = rng.standard_normal(shape)
    return escala * (re + 1j * im)


def los_steering(M: int, beta, theta, d_over_lambda: float = 0.5) -> np.ndarray:
    """[h_LOS]_m = β^{1/2} · exp(-i (m-1) 2π (d/λ) sin θ), com broadcast sobre beta/theta."""
    if M < 1:
        raise DimensionError(f"M deve ser >= 1 (recebido {M})")
    beta = np.asarray(beta, dtype=float)
    theta = np.asarray(theta, dtype=float)
    m = np.arange(M)
    fase = -2.0 * np.pi * d_over_lambda * np.sin(theta)[..., None] * m
    return np.sqrt(beta)[..., None] * np.exp(1j * fase)


def draw_channel(
    cfg: SystemConfig,
    ls: LargeScaleRealization,
    observed_cell: int,
    rng: np.random.Generator,
    size: Optional[int] = None,
) -> ChannelRealization:
    j = observed_cell
    batch = () if size is None else (int(size),)
    shape = batch + (cfg.L, cfg.N, cfg.M)

    beta_j = ls.beta[j]                                   # (L, N)
    nlos = complex_gaussian(shape, beta_j[..., None], rng)

    los = los_steering(cfg.M, ls.beta[j, j], ls.aoa[j], cfg.antenna_spacing_over_wavelength)
    k = ls.ricean_k[j]
    peso_los = np.sqrt(k / (k + 1.0))[:, None]
    peso_nlos = np.sqrt(1.0 / (k + 1.0))[:, None]

    h = nlos.copy()
    h[..., j, :, :] = peso_los * los + peso_nlos * nlos[..., j, :, :]

    return ChannelRealization(h=h, los=los, nlos=nlos, observed_cell=j)


def pilot_matrix(tau: int, N: int) -> np.ndarray:
    """Primeiras N colunas da DFT normalizada de τ pontos (Φ†Φ = I_N)."""
    if tau < N:
        raise DimensionError(f"tau={tau} < N={N}")
    t = np.arange(tau)[:, None]
    n = np.arange(N)[None, :]
    return np.exp(-2j * np.pi * t * n / tau) / np.sqrt(tau)


def pilot_scaling(cfg: SystemConfig, ls: LargeScaleRealization) -> np.ndarray:
    """[(Ω_l + I) P_l]^{1/2} na diagonal: sqrt((K_ln + 1) ρ_ln), forma (L, N)."""
    return np.sqrt((ls.ricean_k + 1.0) * cfg.pilot_powers)


def observe_pilots(
    cfg: SystemConfig,
    ls: LargeScaleRealization,
    channels: ChannelRealization,
    phi: np.ndarray,
    rng: Optional[np.random.Generator],
    with_noise: bool = True,
) -> PilotObservation:
    """Y = Σ_l H_jl (Ω_l + I)^{1/2} P_l^{1/2} Φ† + N_j."""
    escala = pilot_scaling(cfg, ls)
    y = np.einsum("...lnm,ln,tn->...mt", channels.h, escala, phi.conj())

    ruido = None
    if with_noise:
        ruido = complex_gaussian(y.shape, 1.0, rng)
        y = y + ruido
    return PilotObservation(y_train=y, noise=ruido)


def observe_data(
    cfg: SystemConfig,
    channels: ChannelRealization,
    x: np.ndarray,
    rng: Optional[np.random.Generator],
    with_noise: bool = True,
) -> np.ndarray:
    """y = sqrt(ρ_u) Σ_l H_jl x_l + n_j, x com forma (..., L, N)."""
    y = np.sqrt(cfg.rho_u) * np.einsum("...ltm,...lt->...m", channels.h, x)
    if with_noise:
        y = y + complex_gaussian(y.shape, 1.0, rng)
    return y


def data_symbols(shape, rng: np.random.Generator) -> np.ndarray:
    """Símbolos de módulo unitário com fase uniforme (média zero, variância 1)."""
    return np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, size=shape))


def draw_channels_batch(
    cfg: SystemConfig,
    ls: LargeScaleRealization,
    observed_cell: int,
    rng: np.random.Generator,
    n_realizations: int,
) -> ChannelRealization:
    """Mesmo sorteio de draw_channel com eixo de realização à esquerda (n_realizations, L, N, M)."""
    if n_realizations < 1:
        raise DimensionError(f"n_realizations deve ser >= 1 (recebido {n_realizations})")
    return draw_channel(cfg, ls, observed_cell, rng, size=n_realizations)
