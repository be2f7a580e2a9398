#ricean_se/src/ricean_se/reporting/exporters/csv_exporter.py

from pathlib import Path
from typing import Optional, Sequence, Union

import pandas as pd
from loguru import logger


class CSVExporter:
    """
    Exporta DataFrames de resultados: UTF-8, separador ",", decimal ".",
    cabeçalho obrigatório e floats com 10 dígitos significativos.
    Sem timestamp no nome nem no conteúdo: mesma entrada -> mesmos bytes.
    """

    @staticmethod
    def export(
        df: pd.DataFrame,
        output_path: Union[str, Path],
        columns: Optional[Sequence[str]] = None,
    ) -> Optional[Path]:
        if df.empty:
            logger.warning("⚠️ DataFrame vazio, nada a exportar.")
            return None

        output_path = Path(output_path)
        output_path.parent.mkdir(parents=True, exist_ok=True)

        if columns is not None:
            faltando = [c for c in columns if c not in df.columns]
            if faltando:
                raise ValueError(f"Colunas ausentes no resultado: {faltando}")
            df = df.loc[:, list(columns)]

        df.to_csv(
            output_path,
            index=False,
            sep=",",
            encoding="utf-8",
            float_format="%.10g",
            lineterminator="\n",
        )

        logger.success(f"✅ CSV salvo em {output_path}")
        return output_path
