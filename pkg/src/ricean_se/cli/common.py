#ricean_se/src/ricean_se/cli/common.py

import argparse
from typing import Optional

from loguru import logger

from src.ricean_se.application.sweep_use_case import parse_values
from src.ricean_se.config import DEFAULT_WORKERS
from src.ricean_se.domain.errors import ScenarioError
from src.ricean_se.infrastructure.scenario_loader import Scenario, load_scenario, paper_defaults


def add_scenario_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("scenario", nargs="?", default=None, help="Arquivo .scenario (YAML)")
    parser.add_argument(
        "--paper-defaults",
        "--reference-defaults",
        dest="paper_defaults",
        action="store_true",
        help="Ignora o arquivo e usa o protocolo de referência (scenarios/paper.scenario)",
    )
    parser.add_argument("--seed", type=int, default=None, help="Seed raiz (sobrepõe o cenário)")
    parser.add_argument("--workers", type=int, default=DEFAULT_WORKERS, help="Threads Monte-Carlo (não altera resultados)")
    parser.add_argument("--verbose", action="store_true", help="Log em nível DEBUG")


def resolve_scenario(args: argparse.Namespace) -> Scenario:
    if args.workers < 1:
        raise ScenarioError(f"--workers deve ser >= 1 (recebido {args.workers})")

    if args.paper_defaults:
        if args.scenario:
            logger.warning(f"⚠️ --paper-defaults ativo: {args.scenario} ignorado")
        cenario = paper_defaults(args.workers)
    elif args.scenario:
        cenario = load_scenario(args.scenario, args.workers)
    else:
        raise ScenarioError("Informe um arquivo de cenário ou --paper-defaults")

    if args.seed is not None:
        cenario = cenario.with_settings(seed=args.seed)
    return cenario


def optional_values(texto: Optional[str]):
    return None if texto is None else parse_values(texto)
