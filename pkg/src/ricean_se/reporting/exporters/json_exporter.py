#ricean_se/src/ricean_se/reporting/exporters/json_exporter.py

import json
from pathlib import Path
from typing import Optional, Union

from loguru import logger


class JSONExporter:
    @staticmethod
    def export(data, output_path: Union[str, Path]) -> Optional[Path]:
        if not data:
            logger.warning("⚠️ Nenhum dado para exportar.")
            return None

        output_path = Path(output_path)
        output_path.parent.mkdir(parents=True, exist_ok=True)
        with open(output_path, "w", encoding="utf-8") as f:
            json.dump(data, f, ensure_ascii=False, indent=2, default=str)
        logger.success(f"✅ JSON salvo em {output_path}")
        return output_path
