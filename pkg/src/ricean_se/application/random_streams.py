#ricean_se/src/ricean_se/application/random_streams.py

# ============================================================
# 🎲 Streams aleatórios determinísticos por índice de realização
# ============================================================
#
# Cada unidade de trabalho recebe seu próprio Generator derivado de
# (seed, tag, índices...). O resultado nunca depende de qual worker
# executou a unidade nem da ordem de execução.

import numpy as np

# Tags de domínio: separam os usos do mesmo índice
DROP = 0            # geometria + larga escala do drop d
SMALL_SCALE = 1     # canal + ruído de piloto (estimação de SINR)
DATA_PATH = 2       # símbolos + ruído de dados (verificação por símbolos)
MOMENTS = 3         # estimação isolada de momentos A–F
DUMP = 4            # realização exportada em modo debug
VALIDATION = 5      # configurações sorteadas pelas suítes de validação


def split_stream(root_seed: int, *index: int) -> np.random.Generator:
    """
    Mapeamento (seed, índices) -> Generator PCG64 independente.
    Usa SeedSequence.spawn_key, estável entre plataformas e versões do numpy.
    """
    if int(root_seed) < 0:
        raise ValueError(f"seed deve ser >= 0 (recebido {root_seed})")
    if any(int(i) < 0 for i in index):
        raise ValueError(f"Índices de stream devem ser >= 0 (recebido {index})")

    seq = np.random.SeedSequence(entropy=int(root_seed), spawn_key=tuple(int(i) for i in index))
    return np.random.Generator(np.random.PCG64(seq))


def chunk_bounds(total: int, chunk_size: int):
    """Fatias [início, fim) de tamanho fixo; a última pode ser menor."""
    if chunk_size < 1:
        raise ValueError(f"chunk_size deve ser >= 1 (recebido {chunk_size})")
    return [(ini, min(ini + chunk_size, total)) for ini in range(0, total, chunk_size)]
