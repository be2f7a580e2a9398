#ricean_se/src/ricean_se/infrastructure/logging/run_logger.py

import json
import sys

import numpy as np
from loguru import logger


def _jsonavel(valor):
    if isinstance(valor, np.generic):
        return valor.item()
    if isinstance(valor, np.ndarray):
        return valor.tolist()
    if hasattr(valor, "value"):
        return valor.value
    return str(valor)


def snapshot_params(**kwargs) -> str:
    return json.dumps({k: v for k, v in kwargs.items()}, ensure_ascii=False, default=_jsonavel, sort_keys=True)


def setup_logging(verbose: bool = False) -> None:
    """Um único sink em stdout; chamado só pelos entry points da CLI."""
    logger.remove()
    logger.add(
        sys.stdout,
        colorize=True,
        level="DEBUG" if verbose else "INFO",
        format="<green>{time:HH:mm:ss}</green> | <level>{message}</level>",
    )
