#ricean_se/src/ricean_se/config.py

import os
from dotenv import load_dotenv

load_dotenv()

# Seeds e defaults mínimos
RANDOM_SEED = int(os.getenv("RICEAN_SE_SEED", "42"))

# Paralelismo (afeta apenas velocidade, nunca o resultado)
DEFAULT_WORKERS = max(1, int(os.getenv("RICEAN_SE_WORKERS", "1")))

# Realizações de pequena escala por stream aleatório (teto).
# Faz parte do contrato de reprodutibilidade: mudar o valor muda os números.
CHUNK_SIZE = max(1, int(os.getenv("RICEAN_SE_CHUNK", "256")))

# Orçamento de entradas complexas (amostras × M·L·N) por chunk; ~32 MB por array
CHUNK_MAX_ENTRIES = max(1, int(os.getenv("RICEAN_SE_CHUNK_ENTRIES", "2000000")))

OUTPUT_DIR = os.getenv("RICEAN_SE_OUTPUT_DIR", "output")

SHOW_PROGRESS = os.getenv("RICEAN_SE_PROGRESS", "1").strip() not in ("0", "false", "False", "")

# Escala "de mesa" (laptop): limites usados por --desk-scale
DESK_SCALE_MAX_M = 512
DESK_SCALE_DROPS = 50
DESK_SCALE_SAMPLES = 50
