#ricean_se/src/ricean_se/cli/run_sweep.py

import argparse
import sys
from pathlib import Path

from loguru import logger

from src.ricean_se.application.sweep_use_case import (
    SweepAxis,
    SweepSpec,
    apply_desk_scale,
    parse_estimators,
    parse_sweep,
    run_sweep,
)
from src.ricean_se.cli.common import add_scenario_arguments, optional_values, resolve_scenario
from src.ricean_se.config import OUTPUT_DIR
from src.ricean_se.domain.errors import RiceanSeError, ScenarioError
from src.ricean_se.infrastructure.logging.run_logger import setup_logging


def add_arguments(parser: argparse.ArgumentParser) -> None:
    add_scenario_arguments(parser)

    # ======================================================
    # 📥 Sweep
    # ======================================================
    parser.add_argument("--sweep", required=True, help="M=50:500:50 | M=8,16,32 | K_dB=-inf,-10,0,10")
    parser.add_argument("--k-db", type=str, default=None, help="Valores de K (dB) das curvas de um sweep em M")
    parser.add_argument("--m", type=str, default=None, help="Valores de M das curvas de um sweep em K")
    parser.add_argument("--estimators", type=str, default="LS,MMSE", help="LS, MMSE ou LS,MMSE")

    # ======================================================
    # ⚙️ Saída e opcionais
    # ======================================================
    parser.add_argument("--out", type=str, default=OUTPUT_DIR, help="Diretório de saída")
    parser.add_argument("--mc", action="store_true", help="Inclui Monte-Carlo (com barras de erro)")
    parser.add_argument("--asymptotes", action="store_true", help="Inclui limites de M/K grande")
    parser.add_argument("--desk-scale", action="store_true", help="50×50 médias e M <= 512")
    parser.add_argument("--dump-realizations", action="store_true", help="Salva uma realização binária por drop")
    parser.add_argument("--no-plot", action="store_true", help="Não gera o SVG")


def build_spec(args: argparse.Namespace) -> SweepSpec:
    axis, points = parse_sweep(args.sweep)
    k_db, m = optional_values(args.k_db), optional_values(args.m)

    if axis is SweepAxis.M and m is not None:
        raise ScenarioError("--m não se aplica a um sweep em M (use --k-db)")
    if axis is SweepAxis.K_DB and k_db is not None:
        raise ScenarioError("--k-db não se aplica a um sweep em K_dB (use --m)")

    return SweepSpec(
        axis=axis,
        points=points,
        estimators=parse_estimators(args.estimators),
        include_asymptotes=args.asymptotes,
        include_monte_carlo=args.mc,
        fixed_values=k_db if axis is SweepAxis.M else m,
    )


def execute(args: argparse.Namespace) -> int:
    setup_logging(args.verbose)
    try:
        cenario = resolve_scenario(args)
        spec = build_spec(args)
        if args.desk_scale:
            cenario, spec = apply_desk_scale(cenario, spec)

        logger.info(f"🚀 Iniciando sweep {spec.axis.value} | saída={args.out}")
        run_sweep(
            cenario,
            spec,
            output_dir=Path(args.out),
            plot=not args.no_plot,
            dump_realizations=args.dump_realizations,
        )
    except (RiceanSeError, OSError) as e:
        logger.error(f"❌ {e}")
        return 1
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description="Sweep da soma de SE em M ou em K")
    add_arguments(parser)
    return execute(parser.parse_args(argv))


if __name__ == "__main__":
    sys.exit(main())
