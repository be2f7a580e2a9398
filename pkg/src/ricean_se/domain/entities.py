#ricean_se/src/ricean_se/domain/entities.py

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, Optional

import numpy as np

from src.ricean_se.domain.units import db_to_linear


def _frozen_array(values, dtype=float) -> np.ndarray:
    arr = np.array(values, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


class EstimatorKind(str, Enum):
    LS = "LS"
    MMSE = "MMSE"


class Provenance(str, Enum):
    CLOSED_FORM = "closed_form"
    MONTE_CARLO = "monte_carlo"
    ASYMPTOTIC_M = "asymptotic_M"
    ASYMPTOTIC_K = "asymptotic_K"


# ==========================================================
# ⚙️ Configuração do sistema
# ==========================================================
@dataclass(frozen=True, eq=False)
class SystemConfig:
    """
    Parâmetros do sistema, todos em escala linear (ruído normalizado = 1).
    pilot_powers[l, n] = potência de piloto do usuário n da célula l.
    """
    L: int
    N: int
    M: int
    tau: int
    T: int
    rho_u: float
    pilot_powers: np.ndarray
    antenna_spacing_over_wavelength: float = 0.5

    def __post_init__(self):
        object.__setattr__(self, "pilot_powers", _frozen_array(self.pilot_powers))

    @classmethod
    def from_db(
        cls,
        L: int,
        N: int,
        M: int,
        tau: int,
        T: int,
        rho_u_db: float,
        rho_p_db: float,
        antenna_spacing_over_wavelength: float = 0.5,
    ) -> "SystemConfig":
        return cls(
            L=L,
            N=N,
            M=M,
            tau=tau,
            T=T,
            rho_u=db_to_linear(rho_u_db),
            pilot_powers=np.full((L, N), db_to_linear(rho_p_db)),
            antenna_spacing_over_wavelength=antenna_spacing_over_wavelength,
        )

    def with_antennas(self, M: int) -> "SystemConfig":
        return replace(self, M=int(M))


# ==========================================================
# 🌍 Realização de larga escala (fixa por drop)
# ==========================================================
@dataclass(frozen=True, eq=False)
class LargeScaleRealization:
    """
    beta[j, l, n]  = ganho do usuário n da célula l até a BS da célula j
    ricean_k[l, n] = fator K (linear) do usuário n da célula l
    aoa[l, n]      = ângulo de chegada (rad) do usuário n da célula l na própria BS
    """
    beta: np.ndarray
    ricean_k: np.ndarray
    aoa: np.ndarray

    def __post_init__(self):
        beta = _frozen_array(self.beta)
        k = _frozen_array(self.ricean_k)
        aoa = _frozen_array(self.aoa)

        if beta.ndim != 3 or beta.shape[0] != beta.shape[1]:
            raise ValueError(f"beta deve ter forma L×L×N, recebido {beta.shape}")
        if k.shape != beta.shape[1:] or aoa.shape != beta.shape[1:]:
            raise ValueError(
                f"ricean_k {k.shape} e aoa {aoa.shape} devem ter forma {beta.shape[1:]}"
            )
        if not np.all(beta > 0):
            raise ValueError("Todos os ganhos de larga escala devem ser > 0")
        if not np.all(k >= 0):
            raise ValueError("Fatores K devem ser >= 0")
        if not np.all((aoa >= 0) & (aoa < 2 * np.pi)):
            raise ValueError("Ângulos de chegada devem estar em [0, 2π)")

        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "ricean_k", k)
        object.__setattr__(self, "aoa", aoa)

    @property
    def L(self) -> int:
        return self.beta.shape[0]

    @property
    def N(self) -> int:
        return self.beta.shape[2]

    def has_shared_k(self) -> bool:
        return bool(np.all(self.ricean_k == self.ricean_k.flat[0]))

    def with_k(self, ricean_k) -> "LargeScaleRealization":
        return LargeScaleRealization(
            beta=self.beta,
            ricean_k=np.broadcast_to(np.asarray(ricean_k, dtype=float), self.ricean_k.shape),
            aoa=self.aoa,
        )


# ==========================================================
# 📊 Relatório de SINR / SE por usuário
# ==========================================================
SINR_FIELDS = (
    "sinr_closed_ls",
    "sinr_closed_mmse",
    "sinr_empirical_ls",
    "sinr_empirical_mmse",
    "sinr_limit_M_ls",
    "sinr_limit_M_mmse",
    "sinr_limit_K_ls",
    "sinr_limit_K_mmse",
)

DEFAULT_PROVENANCE = {
    "sinr_closed_ls": Provenance.CLOSED_FORM,
    "sinr_closed_mmse": Provenance.CLOSED_FORM,
    "sinr_empirical_ls": Provenance.MONTE_CARLO,
    "sinr_empirical_mmse": Provenance.MONTE_CARLO,
    "sinr_limit_M_ls": Provenance.ASYMPTOTIC_M,
    "sinr_limit_M_mmse": Provenance.ASYMPTOTIC_M,
    "sinr_limit_K_ls": Provenance.ASYMPTOTIC_K,
    "sinr_limit_K_mmse": Provenance.ASYMPTOTIC_K,
}


@dataclass(frozen=True, eq=False)
class SinrReport:
    """
    SINRs lineares por usuário da célula observada; campos não calculados ficam None.
    A SE de cada campo é derivada sob demanda, sempre da mesma fórmula de prelog.
    """
    T: int
    tau: int
    sinr_closed_ls: Optional[np.ndarray] = None
    sinr_closed_mmse: Optional[np.ndarray] = None
    sinr_empirical_ls: Optional[np.ndarray] = None
    sinr_empirical_mmse: Optional[np.ndarray] = None
    sinr_limit_M_ls: Optional[np.ndarray] = None
    sinr_limit_M_mmse: Optional[np.ndarray] = None
    sinr_limit_K_ls: Optional[np.ndarray] = None
    sinr_limit_K_mmse: Optional[np.ndarray] = None
    provenance: Dict[str, Provenance] = field(default_factory=lambda: dict(DEFAULT_PROVENANCE))

    def __post_init__(self):
        for nome in SINR_FIELDS:
            valor = getattr(self, nome)
            if valor is None:
                continue
            arr = _frozen_array(valor)
            if np.any(arr < 0):
                raise ValueError(f"{nome}: SINR negativo")
            object.__setattr__(self, nome, arr)

    def available(self):
        return [nome for nome in SINR_FIELDS if getattr(self, nome) is not None]

    def se_per_user(self, nome: str) -> np.ndarray:
        from src.ricean_se.domain.analytics import spectral_efficiency

        valor = getattr(self, nome)
        if valor is None:
            raise KeyError(f"Campo {nome} não calculado")
        return spectral_efficiency(valor, self.T, self.tau)

    def sum_se(self, nome: str) -> float:
        from src.ricean_se.domain.analytics import sum_se

        return sum_se(self.se_per_user(nome))

    def to_frame(self):
        import pandas as pd

        linhas = []
        for nome in self.available():
            sinr = getattr(self, nome)
            se = self.se_per_user(nome)
            for n, (s, r) in enumerate(zip(sinr, se)):
                linhas.append({
                    "user": n,
                    "field": nome,
                    "provenance": self.provenance[nome].value,
                    "sinr": float(s),
                    "se": float(r),
                })
        return pd.DataFrame(linhas, columns=["user", "field", "provenance", "sinr", "se"])
