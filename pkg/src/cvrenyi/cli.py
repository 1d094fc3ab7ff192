"""Command-line entry point: ``cvrenyi {figure,sweep,check,validate}``."""

from __future__ import annotations

import argparse
import logging
import sys

from .experiment import ConfigError, ExperimentConfig, run_check, run_sweep
from .figures import FIGURES, run_figure
from .validation import DEFAULT_SEED, run_all

EXIT_OK, EXIT_VALIDATION, EXIT_CONFIG = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output path prefix (no extension)")
    common.add_argument("--svg", action="store_true", help="also write an SVG plot")
    common.add_argument("--threads", type=int, default=1, help="worker threads for sweeps")

    parser = argparse.ArgumentParser(prog="cvrenyi", description="Rényi-entropy separability conditions")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    fig = sub.add_parser("figure", parents=[common], help="reproduce a characteristic-quantity figure as CSV")
    fig.add_argument("which", choices=FIGURES)

    sw = sub.add_parser("sweep", parents=[common], help="run a parameter sweep from a JSON config")
    sw.add_argument("--config", required=True)

    chk = sub.add_parser("check", parents=[common], help="evaluate conditions at one point")
    chk.add_argument("--config", required=True)

    val = sub.add_parser("validate", parents=[common], help="run the seeded self-validation suites")
    val.add_argument("--seed", type=int, default=DEFAULT_SEED)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        if args.command == "figure":
            for path in run_figure(args.which, args.out, args.svg, args.threads):
                print(path)
        elif args.command == "sweep":
            print(run_sweep(ExperimentConfig.load(args.config), args.out, args.threads))
        elif args.command == "check":
            for rep in run_check(ExperimentConfig.load(args.config)):
                print(rep.to_record())
        else:
            results = run_all(args.seed)
            for r in results:
                print(r.line())
            ok = all(r.passed for r in results)
            print("validate: PASS" if ok else "validate: FAIL")
            return EXIT_OK if ok else EXIT_VALIDATION
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
