#ricean_se/src/ricean_se/visualization/sweep_plotting.py

from pathlib import Path
from typing import Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np
import pandas as pd
from loguru import logger

ROTULOS_EIXO = {
    "M": "Número de antenas na BS (M)",
    "K_dB": "Fator Ricean K (dB)",
}

ESTILO = {
    "LS": {"linestyle": "--", "marker": "o"},
    "MMSE": {"linestyle": "-", "marker": "s"},
}


# =========================================================
# 📈 Curvas de soma de SE (forma fechada, MC e assíntotas)
# =========================================================
def plot_sweep(df: pd.DataFrame, output_path: Union[str, Path], title: str = "") -> Path:
    """
    Uma curva por (valor do eixo fixo × estimador): linha = forma fechada,
    marcadores com barras de erro = Monte-Carlo, linha horizontal pontilhada = assíntota.
    """
    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)

    eixo = str(df["axis"].iloc[0])
    finitos = df[np.isfinite(df["axis_value"].astype(float))]
    if len(finitos) < len(df):
        logger.warning(f"⚠️ {len(df) - len(finitos)} pontos com eixo não finito omitidos do gráfico")

    fig, ax = plt.subplots(figsize=(8, 6))
    cores = plt.rcParams["axes.prop_cycle"].by_key()["color"]

    for i, ((fixo, estimador), curva) in enumerate(finitos.groupby(["fixed_value", "estimator"], sort=True, dropna=False)):
        cor = cores[i % len(cores)]
        estilo = ESTILO.get(estimador, {})
        rotulo = f"{estimador}, {curva['fixed_axis'].iloc[0]}={fixo:g}"
        curva = curva.sort_values("axis_value")

        ax.plot(curva["axis_value"], curva["sum_se_closed"], color=cor,
                linestyle=estilo.get("linestyle", "-"), linewidth=1.5, label=rotulo)

        empirico = curva.dropna(subset=["sum_se_empirical"])
        if not empirico.empty:
            ax.errorbar(empirico["axis_value"], empirico["sum_se_empirical"],
                        yerr=empirico["sum_se_std_error"].fillna(0.0),
                        fmt=estilo.get("marker", "o"), color=cor, markerfacecolor="none", capsize=3)

        assintota = curva["sum_se_asymptote"].dropna()
        if not assintota.empty:
            ax.axhline(float(assintota.mean()), color=cor, linestyle=":", linewidth=1.0)

    ax.set_xlabel(ROTULOS_EIXO.get(eixo, eixo))
    ax.set_ylabel("Soma da SE (bit/s/Hz)")
    if title:
        ax.set_title(title)
    ax.legend(fontsize=8)
    ax.grid(True)
    fig.tight_layout()
    fig.savefig(output_path, format="svg")
    plt.close(fig)

    logger.success(f"🖼️ Gráfico salvo em {output_path}")
    return output_path
