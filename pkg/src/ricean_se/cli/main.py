#ricean_se/src/ricean_se/cli/main.py

import argparse
import sys

from src.ricean_se.cli import run_sweep, run_validate


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="ricean_se",
        description="Eficiência espectral uplink em massive MIMO com canal Ricean",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_sweep.add_arguments(sub.add_parser("run", help="Executa um sweep em M ou em K"))
    run_validate.add_arguments(sub.add_parser("validate", help="Executa uma suíte de validação"))

    args = parser.parse_args(argv)
    if args.command == "run":
        return run_sweep.execute(args)
    return run_validate.execute(args)


if __name__ == "__main__":
    sys.exit(main())
