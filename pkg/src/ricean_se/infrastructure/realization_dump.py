#ricean_se/src/ricean_se/infrastructure/realization_dump.py

# ============================================================
# 💾 Dump binário de realizações (debug)
# ============================================================
#
# Layout: b"RSE1" | uint32 ndim | uint32 dims[ndim] | complex128 row-major
# Tudo little-endian; cada complexo = (re float64, im float64).

from pathlib import Path
from typing import Union

import numpy as np
from loguru import logger

MAGIC = b"RSE1"
_U32 = np.dtype("<u4")
_C16 = np.dtype("<c16")


def dump_realization(path: Union[str, Path], array) -> Path:
    path = Path(path)
    dados = np.ascontiguousarray(np.asarray(array), dtype=_C16)
    path.parent.mkdir(parents=True, exist_ok=True)

    cabecalho = np.array([dados.ndim, *dados.shape], dtype=_U32)
    with open(path, "wb") as f:
        f.write(MAGIC)
        f.write(cabecalho.tobytes())
        f.write(dados.tobytes(order="C"))

    logger.debug(f"💾 Realização {dados.shape} salva em {path}")
    return path


def load_realization(path: Union[str, Path]) -> np.ndarray:
    bruto = Path(path).read_bytes()
    if bruto[:4] != MAGIC:
        raise ValueError(f"{path}: cabeçalho inválido (esperado {MAGIC!r})")

    ndim = int(np.frombuffer(bruto, dtype=_U32, count=1, offset=4)[0])
    dims = tuple(int(d) for d in np.frombuffer(bruto, dtype=_U32, count=ndim, offset=8))
    inicio = 8 + 4 * ndim
    esperado = int(np.prod(dims, dtype=np.int64)) * _C16.itemsize
    if len(bruto) - inicio != esperado:
        raise ValueError(f"{path}: tamanho do payload ({len(bruto) - inicio}) ≠ esperado ({esperado})")

    return np.frombuffer(bruto, dtype=_C16, offset=inicio).reshape(dims).astype(np.complex128)
