# cli/commands/generate.py

import logging

from cli.common import (
    EXIT_OK,
    EXIT_VIOLATION,
    add_ring_flags,
    add_table_flag,
    add_threshold_flags,
    load_table,
    output_stream,
    params_from_args,
)
from constraints.checks import passes
from core.config import config
from wordgen.generators import generate, generate_verified, verify_result
from wordgen.schemas import GcPolicy, GenRequest, Problem
from words.io import OUTPUT_FORMATS, write_words

logger = logging.getLogger(__name__)


def register(subparsers):
    parser = subparsers.add_parser(
        "generate",
        help="generate n words satisfying a constraint family",
        description="One-shot randomized generation. --retries wraps it in a verify-and-retry loop.",
    )
    parser.add_argument("--problem", required=True, choices=[p.value for p in Problem])
    parser.add_argument("--n", type=int, required=True)
    parser.add_argument("--seed", type=int, required=True)
    add_threshold_flags(parser)
    add_table_flag(parser)
    add_ring_flags(parser)
    parser.add_argument("--gc-policy", choices=[p.value for p in GcPolicy], default=None)
    parser.add_argument("--verify", action="store_true", help="verify the advertised constraints afterwards")
    parser.add_argument("--retries", type=int, default=config.DEFAULT_RETRIES)
    parser.add_argument("--threads", type=int, default=config.DEFAULT_THREADS)
    parser.add_argument("--format", choices=OUTPUT_FORMATS, default="plain")
    parser.add_argument("--out", default=None)
    parser.set_defaults(func=run)


def run(args, out, err) -> int:
    request = GenRequest(
        n=args.n,
        params=params_from_args(args),
        master_seed=args.seed,
        problem=Problem(args.problem),
        table=load_table(args.gamma_table),
        gc_policy=GcPolicy(args.gc_policy) if args.gc_policy else None,
        ring=args.ring,
        prime_count=args.primes,
        prime_seed=args.prime_seed,
    )

    reports = None
    if args.retries > 0:
        result, reports, attempts = generate_verified(request, args.retries, args.threads)
        err.write(f"# attempts={attempts}\n")
    else:
        result = generate(request, args.threads)
        if args.verify:
            reports = verify_result(request, result)

    err.write(f"# {result.summary()}\n")
    with output_stream(args.out, out) as fh:
        write_words(result.words, fh, args.format)

    if reports is not None and not passes(reports):
        for report in reports:
            for line in report.lines():
                err.write(line + "\n")
        return EXIT_VIOLATION
    return EXIT_OK
