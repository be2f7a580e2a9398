#ricean_se/src/ricean_se/application/monte_carlo.py

# ============================================================
# 🎰 Oráculo Monte-Carlo: SINR efetivo, momentos A–F e caminho de dados
# ============================================================
#
# Unidade de trabalho = (drop, chunk). Cada chunk tem tamanho fixo
# (settings.chunk_for(cfg)) e stream próprio; os workers só mudam a velocidade.
# As amostras são concatenadas na ordem dos índices antes de qualquer média.

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Tuple

import numpy as np
from loguru import logger
from tqdm import tqdm

from src.ricean_se.application.random_streams import (
    DATA_PATH,
    MOMENTS,
    SMALL_SCALE,
    chunk_bounds,
    split_stream,
)
from src.ricean_se.config import CHUNK_MAX_ENTRIES, CHUNK_SIZE, DEFAULT_WORKERS, RANDOM_SEED, SHOW_PROGRESS
from src.ricean_se.domain.channel import (
    data_symbols,
    draw_channels_batch,
    observe_data,
    observe_pilots,
    pilot_matrix,
)
from src.ricean_se.domain.entities import EstimatorKind, LargeScaleRealization, SystemConfig
from src.ricean_se.domain.errors import InsufficientSamples
from src.ricean_se.domain.estimation import EstimateSet, estimate
from src.ricean_se.domain.moments import MomentTerm, check_moment_indices, moment_closed_form


# ============================================================
# ⚙️ Tipos
# ============================================================
@dataclass(frozen=True)
class McSettings:
    n_large_scale: int = 100
    n_small_scale: int = 100
    seed: int = RANDOM_SEED
    target_cell: int = 0
    parallelism: int = DEFAULT_WORKERS
    chunk_size: Optional[int] = None   # None = derivado de M·L·N (chunk_for)
    batch_size: int = 1          # jackknife por blocos; 1 = delete-one
    show_progress: bool = False

    def __post_init__(self):
        if self.n_large_scale < 1:
            raise ValueError(f"n_large_scale deve ser >= 1 (recebido {self.n_large_scale})")
        if self.parallelism < 1:
            raise ValueError(f"parallelism deve ser >= 1 (recebido {self.parallelism})")
        if (self.chunk_size is not None and self.chunk_size < 1) or self.batch_size < 1:
            raise ValueError("chunk_size e batch_size devem ser >= 1")

    def chunk_for(self, cfg: SystemConfig) -> int:
        """Tamanho do chunk para cfg: o explícito, ou CHUNK_SIZE limitado a CHUNK_MAX_ENTRIES / (M·L·N)."""
        if self.chunk_size is not None:
            return self.chunk_size
        return auto_chunk_size(cfg.M, cfg.L, cfg.N)


def auto_chunk_size(M: int, L: int, N: int, teto: int = CHUNK_SIZE, orcamento: int = CHUNK_MAX_ENTRIES) -> int:
    """Depende só da geometria do problema, nunca do número de workers."""
    return max(1, min(teto, orcamento // (M * L * N)))


@dataclass(frozen=True, eq=False)
class EmpiricalSinr:
    sinr: np.ndarray          # (N,) linear
    std_error: np.ndarray     # (N,)
    n_samples: int
    kind: EstimatorKind


@dataclass(frozen=True)
class MomentEstimate:
    term: MomentTerm
    mean: float
    std_error: float
    n_samples: int
    closed_form: float
    indices: Tuple[Optional[int], ...]   # (j, n, l, t)

    @property
    def z_score(self) -> float:
        if self.std_error == 0:
            return 0.0 if self.mean == self.closed_form else float("inf")
        return abs(self.mean - self.closed_form) / self.std_error


# ============================================================
# 🔧 Infra de execução
# ============================================================
def _map_ordered(fn: Callable, units, workers: int, desc: str, show: bool):
    """executor.map preserva a ordem de entrada: resultados sempre na ordem dos índices."""
    barra = tqdm(total=len(units), desc=desc, disable=not (show and SHOW_PROGRESS), leave=False)
    resultados = []
    if workers <= 1:
        for u in units:
            resultados.append(fn(u))
            barra.update(1)
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            for r in executor.map(fn, units):
                resultados.append(r)
                barra.update(1)
    barra.close()
    return resultados


def _concat(partes) -> Dict[str, np.ndarray]:
    return {chave: np.concatenate([p[chave] for p in partes], axis=0) for chave in partes[0]}


def _jackknife(amostras: Dict[str, np.ndarray], estatistica: Callable, batch_size: int):
    """
    Jackknife por blocos sobre a estatística das médias amostrais.
    Devolve (estimativa com todas as amostras, erro padrão).
    """
    n = next(iter(amostras.values())).shape[0]
    n_blocos = n // batch_size
    if n_blocos < 2:
        raise InsufficientSamples(f"São necessários >= 2 blocos (n={n}, batch_size={batch_size})")

    bloco = np.minimum(np.arange(n) // batch_size, n_blocos - 1)
    contagem = np.bincount(bloco, minlength=n_blocos).astype(float)

    medias = {}
    deixa_um = {}
    for chave, x in amostras.items():
        soma_bloco = np.zeros((n_blocos,) + x.shape[1:], dtype=x.dtype)
        np.add.at(soma_bloco, bloco, x)
        total = soma_bloco.sum(axis=0)
        medias[chave] = total / n
        forma = (n_blocos,) + (1,) * (x.ndim - 1)
        deixa_um[chave] = (total - soma_bloco) / (n - contagem).reshape(forma)

    estimativa = estatistica(medias)
    theta = estatistica(deixa_um)
    desvio = theta - theta.mean(axis=0)
    erro = np.sqrt((n_blocos - 1) / n_blocos * np.sum(desvio ** 2, axis=0))
    return estimativa, erro


def _pipeline(cfg, ls, kind, j, rng, size) -> Tuple:
    """draw_channel → observe_pilots → estimate, com eixo de realização à esquerda."""
    phi = pilot_matrix(cfg.tau, cfg.N)
    canais = draw_channels_batch(cfg, ls, j, rng, size)
    obs = observe_pilots(cfg, ls, canais, phi, rng)
    est = estimate(obs, phi, cfg, ls, kind, j)
    return canais, est


# ============================================================
# 📡 MRC
# ============================================================
def mrc_combine(estimates, y: np.ndarray) -> np.ndarray:
    """r = Ĥ†y; aceita EstimateSet ou a matriz (..., N, M) de estimativas."""
    h_hat = estimates.h_hat if isinstance(estimates, EstimateSet) else np.asarray(estimates)
    return np.einsum("...nm,...m->...n", h_hat.conj(), y)


# ============================================================
# 📈 SINR efetivo empírico
# ============================================================
def _sinr_from_means(rho_u: float):
    def estatistica(m):
        ganho = np.abs(m["g"]) ** 2
        return rho_u * ganho / (rho_u * m["p"] - rho_u * ganho + m["f"])
    return estatistica


def estimate_sinr_empirical(
    cfg: SystemConfig,
    ls: LargeScaleRealization,
    kind: EstimatorKind,
    settings: McSettings,
    drop_index: int = 0,
) -> EmpiricalSinr:
    """
    Estima E{ĥ†h_jjn}, Σ_{l,t} E{|ĥ†h_jlt|²} e E{‖ĥ‖²} por médias amostrais
    e monta SINR = ρ_u|E{ĥ†h}|² / (ρ_u Σ E{|ĥ†h|²} − ρ_u|E{ĥ†h}|² + E{‖ĥ‖²}).
    """
    kind = EstimatorKind(kind)
    if settings.n_small_scale < 2:
        raise InsufficientSamples(f"n_small_scale deve ser >= 2 (recebido {settings.n_small_scale})")

    j = settings.target_cell
    usuarios = np.arange(cfg.N)
    chunks = list(enumerate(chunk_bounds(settings.n_small_scale, settings.chunk_for(cfg))))

    def rodar(unidade):
        idx, (ini, fim) = unidade
        rng = split_stream(settings.seed, SMALL_SCALE, drop_index, idx)
        canais, est = _pipeline(cfg, ls, kind, j, rng, fim - ini)
        produtos = np.einsum("snm,sltm->snlt", est.h_hat.conj(), canais.h)
        return {
            "g": produtos[:, usuarios, j, usuarios],
            "p": np.sum(np.abs(produtos) ** 2, axis=(2, 3)),
            "f": np.sum(np.abs(est.h_hat) ** 2, axis=-1),
        }

    amostras = _concat(_map_ordered(rodar, chunks, settings.parallelism, f"MC {kind.value}", settings.show_progress))
    sinr, erro = _jackknife(amostras, _sinr_from_means(cfg.rho_u), settings.batch_size)

    logger.debug(
        f"🎰 Drop {drop_index} | {kind.value} | {settings.n_small_scale} amostras | "
        f"SINR médio={float(np.mean(sinr)):.4g}"
    )
    return EmpiricalSinr(sinr=sinr, std_error=erro, n_samples=settings.n_small_scale, kind=kind)


# ============================================================
# 🧮 Momentos A–F
# ============================================================
def estimate_moment(
    term: MomentTerm,
    cfg: SystemConfig,
    ls: LargeScaleRealization,
    kind: EstimatorKind,
    indices: Tuple[int, ...],
    settings: McSettings,
    drop_index: int = 0,
) -> MomentEstimate:
    """
    indices = (j, n) ou (j, n, l, t); l/t podem ser None quando o termo não os usa.
    O termo A é |média|²: erro padrão pelo método delta.
    """
    term = MomentTerm(term)
    j, n, l, t = (tuple(indices) + (None, None))[:4]
    check_moment_indices(term, cfg, j, n, l, t)
    if settings.n_small_scale < 2:
        raise InsufficientSamples(f"n_small_scale deve ser >= 2 (recebido {settings.n_small_scale})")

    celula = {MomentTerm.D: l, MomentTerm.E: l}.get(term, j)
    usuario = {MomentTerm.C: t, MomentTerm.E: t}.get(term, n)
    chunks = list(enumerate(chunk_bounds(settings.n_small_scale, settings.chunk_for(cfg))))

    def rodar(unidade):
        idx, (ini, fim) = unidade
        rng = split_stream(settings.seed, MOMENTS, drop_index, idx)
        canais, est = _pipeline(cfg, ls, kind, j, rng, fim - ini)
        h_hat = est.h_hat[:, n, :]
        if term is MomentTerm.F:
            return {"x": np.sum(np.abs(h_hat) ** 2, axis=-1)}
        produto = np.einsum("sm,sm->s", h_hat.conj(), canais.h[:, celula, usuario, :])
        return {"x": produto if term is MomentTerm.A else np.abs(produto) ** 2}

    x = _concat(_map_ordered(rodar, chunks, settings.parallelism, f"Momento {term.value}", settings.show_progress))["x"]
    amostras = x.shape[0]

    if term is MomentTerm.A:
        m = x.mean()
        media = float(np.abs(m) ** 2)
        if np.abs(m) > 0:
            projecao = np.real(np.conj(m) * x) / np.abs(m)
            erro = float(2.0 * np.abs(m) * projecao.std(ddof=1) / np.sqrt(amostras))
        else:
            erro = 0.0
    else:
        media = float(x.mean())
        erro = float(x.std(ddof=1) / np.sqrt(amostras))

    fechado = moment_closed_form(term, cfg, ls, j, n, kind, l=l, t=t)
    return MomentEstimate(
        term=term,
        mean=media,
        std_error=erro,
        n_samples=amostras,
        closed_form=fechado,
        indices=(j, n, l, t),
    )


# ============================================================
# 📶 Caminho de dados (símbolos + MRC)
# ============================================================
def _data_path_sinr(m):
    ganho = np.abs(m["c"]) ** 2
    return ganho / (m["q"] - ganho)


def simulate_data_path(
    cfg: SystemConfig,
    ls: LargeScaleRealization,
    kind: EstimatorKind,
    settings: McSettings,
    n_symbols: int,
    drop_index: int = 0,
) -> EmpiricalSinr:
    """
    Verificação por símbolos: para cada amostra sorteia canal, ruído de piloto,
    símbolos de todos os usuários e ruído de dados; aplica MRC e mede
    SINR_n = |E{r_n x_n*}|² / (E{|r_n|²} − |E{r_n x_n*}|²).
    """
    kind = EstimatorKind(kind)
    if n_symbols < 2:
        raise InsufficientSamples(f"n_symbols deve ser >= 2 (recebido {n_symbols})")

    j = settings.target_cell
    chunks = list(enumerate(chunk_bounds(n_symbols, settings.chunk_for(cfg))))

    def rodar(unidade):
        idx, (ini, fim) = unidade
        rng = split_stream(settings.seed, DATA_PATH, drop_index, idx)
        canais, est = _pipeline(cfg, ls, kind, j, rng, fim - ini)
        x = data_symbols((fim - ini, cfg.L, cfg.N), rng)
        y = observe_data(cfg, canais, x, rng)
        r = mrc_combine(est, y)
        return {"c": r * np.conj(x[:, j, :]), "q": np.abs(r) ** 2}

    amostras = _concat(_map_ordered(rodar, chunks, settings.parallelism, f"Dados {kind.value}", settings.show_progress))
    sinr, erro = _jackknife(amostras, _data_path_sinr, settings.batch_size)
    return EmpiricalSinr(sinr=sinr, std_error=erro, n_samples=n_symbols, kind=kind)
