"""Command-line entry point.

    uwbsim <subcommand> --config <file> [--out <dir>] [--no-timestamp]
           [--check-oracles]

Exit codes: 0 success, 1 validation error, 2 oracle-check failure,
3 I/O error.
"""

from __future__ import annotations

import argparse
import sys

from .errors import UwbSimError
from .experiment import (SUBCOMMANDS, OracleCheckError, load_config,
                         run_experiment)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_ORACLE = 2
EXIT_IO = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uwbsim",
        description="Reconfigurable impulse-radio UWB baseband simulator")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        cmd = sub.add_parser(name)
        cmd.add_argument("--config", required=True,
                         help="experiment config file (INI sections)")
        cmd.add_argument("--out", default=".",
                         help="output directory for CSV artifacts")
        cmd.add_argument("--no-timestamp", action="store_true",
                         help="omit the timestamp header line (byte-stable "
                              "output)")
        cmd.add_argument("--check-oracles", action="store_true",
                         help="fail (exit 2) if results leave their analytic "
                              "oracle's confidence interval")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        paths, summary = run_experiment(cfg, args.subcommand,
                                        out_dir=args.out,
                                        timestamp=not args.no_timestamp,
                                        check_oracles=args.check_oracles)
    except OracleCheckError as exc:
        print(f"oracle check failed: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except UwbSimError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    print(summary)
    for path in paths:
        print(f"wrote {path}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
