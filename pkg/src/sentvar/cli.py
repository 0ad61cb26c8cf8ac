"""Command line entry point.

Two subcommands: ``run`` executes a configured pipeline, ``fixture`` writes
the deterministic synthetic dataset. Exit codes: 0 success, 1 config error,
2 data error, 3 numerical error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Sequence

from . import __version__
from .config import load_config
from .errors import ConfigError, DataError, NumericalError, SentVarError
from .fixture import DEFAULT_SEED, generate_fixture
from .runner import EXIT_CONFIG, EXIT_DATA, EXIT_IO, EXIT_NUMERICAL, run


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sentvar",
        description="Breadth sentiment indicators, VAR fits, and Granger causality reports.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_parser = sub.add_parser("run", help="run the pipeline described by a config file")
    run_parser.add_argument("--config", required=True, help="path to a JSON run config")

    fixture_parser = sub.add_parser("fixture", help="write the synthetic two-market dataset")
    fixture_parser.add_argument(
        "--seed",
        type=int,
        default=DEFAULT_SEED,
        help=f"RNG seed (default {DEFAULT_SEED})",
    )
    fixture_parser.add_argument("--out", required=True, help="output directory")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    args = _build_parser().parse_args(argv)

    try:
        if args.command == "run":
            return run(load_config(args.config))
        if args.command == "fixture":
            written = generate_fixture(args.seed, args.out)
            print(f"wrote {len(written)} files to {args.out}")
            return 0
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except SentVarError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    raise AssertionError("unreachable")


if __name__ == "__main__":
    raise SystemExit(main())
