# cli/common.py

"""Flags and loaders shared by several subcommands."""

import argparse
import logging
from contextlib import contextmanager
from typing import Optional, TextIO

from constraints.params import ConstraintParams
from core.config import config
from energy.ring import Ring, resolve_ring
from energy.table import GammaTable

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INVALID = 2
EXIT_INTERNAL = 3


def add_threshold_flags(parser: argparse.ArgumentParser):
    group = parser.add_argument_group("constraint thresholds")
    group.add_argument("--k", type=int, default=0, help="sets k1..k6 at once")
    for i in range(1, 7):
        group.add_argument(f"--k{i}", type=int, default=None, help=f"overrides --k for C{i}")
    group.add_argument("--gamma", type=float, default=None, help="GC fraction in [0, 1]")
    group.add_argument("--d", type=int, default=None, help="maximum run length (>= 2)")


def params_from_args(args, sigma: Optional[int] = None) -> ConstraintParams:
    values = {f"k{i}": getattr(args, f"k{i}") if getattr(args, f"k{i}") is not None else args.k for i in range(1, 7)}
    return ConstraintParams(**values, gamma=args.gamma, d=args.d, sigma=sigma)


def add_ring_flags(parser: argparse.ArgumentParser, default: str = "auto"):
    group = parser.add_argument_group("coefficient ring")
    group.add_argument("--ring", choices=("auto", "exact", "mod"), default=default)
    group.add_argument("--primes", type=int, choices=(1, 2), default=config.DEFAULT_PRIME_COUNT,
                       help="number of NTT primes in the modular ring")
    group.add_argument("--prime-seed", type=int, default=config.DEFAULT_PRIME_SEED)


def ring_from_args(args, length: int) -> Ring:
    return resolve_ring(length, args.ring, args.primes, args.prime_seed)


def add_table_flag(parser: argparse.ArgumentParser, required: bool = False):
    parser.add_argument("--gamma-table", dest="gamma_table", required=required,
                        help="file with 16 non-negative integers, rows/columns in A, C, G, T order")


def load_table(path: Optional[str]) -> Optional[GammaTable]:
    return GammaTable.read(path) if path else None


@contextmanager
def output_stream(path: Optional[str], default: TextIO):
    if not path:
        yield default
        return
    with open(path, "w", encoding="utf-8") as fh:
        yield fh
    logger.info(f"✓ Wrote {path}")
