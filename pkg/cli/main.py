# cli/main.py

"""
Command-line entry point: python -m cli.main <subcommand> [flags]

Exit codes: 0 success, 1 constraint violations, 2 invalid input or
arguments, 3 not-found and internal errors.
"""

import argparse
import logging
import sys

from pydantic import ValidationError

from cli.commands import bench, count, extract, generate, verify
from cli.common import EXIT_INTERNAL, EXIT_INVALID
from core.exceptions import EnergyNotAchievableError, InternalError, InvalidInputError
from core.logger import level_from_flags, setup_logging

logger = logging.getLogger(__name__)

COMMANDS = (generate, verify, count, extract, bench)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dnaword",
        description="Randomized DNA word design: generate, verify, count, extract, bench",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="more status lines (repeatable)")
    parser.add_argument("-q", "--quiet", action="store_true", help="errors only")
    subparsers = parser.add_subparsers(dest="command", metavar="<subcommand>", title="subcommands")
    subparsers.required = True
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse has already printed usage to stderr
        return e.code if isinstance(e.code, int) else EXIT_INVALID

    setup_logging(level_from_flags(args.verbose, args.quiet), err)
    try:
        return args.func(args, out, err)
    except EnergyNotAchievableError as e:
        err.write(f"energy not achievable: {e}\n")
        return EXIT_INTERNAL
    except (ValidationError, InvalidInputError, UnicodeError, OSError) as e:
        err.write(f"invalid input: {e}\n")
        return EXIT_INVALID
    except InternalError as e:
        err.write(f"internal error: {e}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
