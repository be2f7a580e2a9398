#ricean_se/src/ricean_se/cli/run_validate.py

import argparse
import sys
from pathlib import Path

from loguru import logger

from src.ricean_se.application.validation_use_case import SUITES, run_validate
from src.ricean_se.cli.common import add_scenario_arguments, resolve_scenario
from src.ricean_se.domain.errors import RiceanSeError
from src.ricean_se.infrastructure.logging.run_logger import setup_logging
from src.ricean_se.reporting.exporters.json_exporter import JSONExporter


def add_arguments(parser: argparse.ArgumentParser) -> None:
    add_scenario_arguments(parser)
    parser.add_argument("--suite", required=True, choices=SUITES, help="Suíte de verificações")
    parser.add_argument("--matrix", action="store_true", help="oracle: inclui a matriz completa L×N×M×K")
    parser.add_argument("--report", type=str, default=None, help="Também grava o relatório em JSON")


def execute(args: argparse.Namespace) -> int:
    setup_logging(args.verbose)
    try:
        cenario = resolve_scenario(args)
        resultados = run_validate(cenario, args.suite, matrix=args.matrix)

        # relatório legível por máquina em stdout
        print("name,measured,bound,result")
        for r in resultados:
            print(r.line())

        if args.report:
            JSONExporter.export([r.__dict__ for r in resultados], Path(args.report))
    except (RiceanSeError, OSError) as e:
        logger.error(f"❌ {e}")
        return 1

    return 0 if all(r.passed for r in resultados) else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description="Suítes de validação das formas fechadas")
    add_arguments(parser)
    return execute(parser.parse_args(argv))


if __name__ == "__main__":
    sys.exit(main())
