#ricean_se/src/ricean_se/domain/geometry.py

# ============================================================
# 📦 Layout hexagonal, drop de usuários e distâncias
# ============================================================

import math
from dataclasses import dataclass

import numpy as np
from shapely.geometry import Point, Polygon

from src.ricean_se.domain.errors import UnsupportedLayout

SUPPORTED_CELL_COUNTS = (1, 7)

# Hexágono "pointy-top": vértices a 30° + k·60°, vizinhos a k·60°
_VERTEX_ANGLES = np.deg2rad(30.0 + 60.0 * np.arange(6))


@dataclass(frozen=True, eq=False)
class CellLayout:
    bs_positions: np.ndarray       # (L, 2) em metros
    cell_radius: float             # centro -> vértice
    observed_cell_index: int = 0

    @property
    def L(self) -> int:
        return self.bs_positions.shape[0]


@dataclass(frozen=True, eq=False)
class UserDrop:
    user_positions: np.ndarray     # (L, N, 2) em metros

    @property
    def N(self) -> int:
        return self.user_positions.shape[1]


def hexagon_vertices(center, radius: float) -> np.ndarray:
    cx, cy = center
    return np.column_stack([
        cx + radius * np.cos(_VERTEX_ANGLES),
        cy + radius * np.sin(_VERTEX_ANGLES),
    ])


def hexagon_polygon(center, radius: float) -> Polygon:
    return Polygon(hexagon_vertices(center, radius))


def point_in_hexagon(point, center, radius: float, tol: float = 1e-9) -> bool:
    """Teste ponto-no-hexágono (borda incluída, com tolerância numérica)."""
    poligono = hexagon_polygon(center, radius)
    if tol > 0:
        poligono = poligono.buffer(tol * radius)
    return bool(poligono.covers(Point(float(point[0]), float(point[1]))))


def build_hex_layout(L: int, radius: float) -> CellLayout:
    if L not in SUPPORTED_CELL_COUNTS:
        raise UnsupportedLayout(f"L={L} não suportado; use 1 ou 7 células")
    if not radius > 0:
        raise ValueError(f"Raio deve ser > 0 (recebido {radius})")

    posicoes = [(0.0, 0.0)]
    if L == 7:
        dist = math.sqrt(3.0) * radius
        for k in range(6):
            ang = math.radians(60.0 * k)
            posicoes.append((dist * math.cos(ang), dist * math.sin(ang)))

    bs = np.array(posicoes, dtype=float)
    bs.setflags(write=False)
    return CellLayout(bs_positions=bs, cell_radius=float(radius), observed_cell_index=0)


def sample_uniform_hexagon(center, radius: float, size: int, rng: np.random.Generator) -> np.ndarray:
    """
    Amostragem uniforme exata: escolhe um dos 6 triângulos (centro, v_k, v_k+1)
    e sorteia uniformemente dentro dele (reflexão u1+u2>1).
    """
    vertices = hexagon_vertices((0.0, 0.0), radius)
    tri = rng.integers(0, 6, size=size)
    u = rng.random((size, 2))
    fora = u.sum(axis=1) > 1.0
    u[fora] = 1.0 - u[fora]

    a = vertices[tri]
    b = vertices[(tri + 1) % 6]
    pontos = u[:, :1] * a + u[:, 1:] * b
    return pontos + np.asarray(center, dtype=float)


def drop_users(layout: CellLayout, N: int, rng: np.random.Generator) -> UserDrop:
    if N < 1:
        raise ValueError(f"N deve ser >= 1 (recebido {N})")

    posicoes = np.empty((layout.L, N, 2))
    for l in range(layout.L):
        posicoes[l] = sample_uniform_hexagon(layout.bs_positions[l], layout.cell_radius, N, rng)

    posicoes.setflags(write=False)
    return UserDrop(user_positions=posicoes)


def user_distances(layout: CellLayout, drop: UserDrop) -> np.ndarray:
    """eta[j, l, n] = distância do usuário n da célula l até a BS j."""
    delta = drop.user_positions[None, :, :, :] - layout.bs_positions[:, None, None, :]
    return np.linalg.norm(delta, axis=-1)
