#ricean_se/src/ricean_se/domain/units.py

import math

import numpy as np


def db_to_linear(x_db):
    """dB -> linear. -inf vira 0 (Rayleigh para o fator K)."""
    if np.ndim(x_db) == 0:
        return float(10.0 ** (float(x_db) / 10.0))
    return np.power(10.0, np.asarray(x_db, dtype=float) / 10.0)


def linear_to_db(x):
    """linear -> dB. 0 vira -inf."""
    if np.ndim(x) == 0:
        x = float(x)
        if x < 0:
            raise ValueError(f"Valor linear negativo não tem dB: {x}")
        return -math.inf if x == 0.0 else 10.0 * math.log10(x)

    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0):
        raise ValueError("Valores lineares negativos não têm dB")
    with np.errstate(divide="ignore"):
        return 10.0 * np.log10(arr)
