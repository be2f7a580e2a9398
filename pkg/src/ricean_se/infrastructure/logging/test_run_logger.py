#ricean_se/src/ricean_se/infrastructure/logging/test_run_logger.py

import json

import numpy as np

from src.ricean_se.domain.entities import EstimatorKind
from src.ricean_se.infrastructure.logging.run_logger import snapshot_params


def test_snapshot_is_sorted_json():
    texto = snapshot_params(seed=np.int64(7), kind=EstimatorKind.MMSE, pontos=np.array([8.0, 16.0]))
    assert json.loads(texto) == {"kind": "MMSE", "pontos": [8.0, 16.0], "seed": 7}
    assert texto.index('"kind"') < texto.index('"seed"')
