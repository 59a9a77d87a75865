# cli/commands/bench.py

import logging

from cli.common import EXIT_OK, add_ring_flags, add_table_flag, load_table, output_stream
from energy.ring import resolve_ring
from energy.table import GammaTable
from services.bench import fit_slopes, powers_of_two, run_counting, run_extraction, run_generation
from services.database import BenchLedger, init_db, make_engine, session_factory
from wordgen.schemas import Problem

logger = logging.getLogger(__name__)


def register(subparsers):
    parser = subparsers.add_parser(
        "bench",
        help="CSV of wall time and instrumented op counts",
        description="CSV columns: suite,param1,param2,engine,ops,nanos",
    )
    parser.add_argument("--suite", required=True, choices=("counting", "generation", "extraction"))
    parser.add_argument("--min-exp", type=int, default=None, help="smallest sweep value is 2**MIN_EXP")
    parser.add_argument("--max-exp", type=int, default=None, help="largest sweep value is 2**MAX_EXP")
    parser.add_argument("--k", type=int, nargs="+", default=[4], help="generation suite thresholds")
    parser.add_argument("--problem", choices=[p.value for p in Problem], action="append", default=None,
                        help="generation suite problem (repeatable; default all)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--calls", type=int, default=None, help="extract calls per length")
    add_table_flag(parser)
    add_ring_flags(parser, default="mod")
    parser.add_argument("--record", default=None, metavar="PATH", help="append rows to a SQLite ledger")
    parser.add_argument("--out", default=None)
    parser.set_defaults(func=run)


def _sweep(args):
    table = load_table(args.gamma_table) or GammaTable.synthetic()
    sizes = powers_of_two(args.min_exp, args.max_exp)
    if args.suite == "counting":
        ring = resolve_ring(max(sizes), args.ring, args.primes, args.prime_seed)
        return run_counting(sizes, table, ring)
    if args.suite == "extraction":
        ring = resolve_ring(max(sizes), args.ring, args.primes, args.prime_seed)
        return run_extraction(sizes, table, args.calls, ring)
    problems = [Problem(p) for p in args.problem] if args.problem else list(Problem)
    return run_generation(sizes, args.k, problems, table, seed=args.seed)


def run(args, out, err) -> int:
    ledger = None
    if args.record:
        engine = make_engine(args.record)
        init_db(engine)
        ledger = BenchLedger(session_factory(engine)())
        ledger.start_run(args.suite)

    try:
        frame = _sweep(args)
    except Exception as e:
        if ledger:
            ledger.end_run(0, False, str(e))
            ledger.db.close()
        raise

    with output_stream(args.out, out) as fh:
        frame.to_csv(fh, index=False, lineterminator="\n")

    for row in fit_slopes(frame).itertuples(index=False):
        logger.info(f"✓ slope {row.suite}/{row.engine}: {row.slope:.3f}")

    if ledger:
        recorded = ledger.record(frame.itertuples(index=False, name=None))
        ledger.end_run(recorded, True)
        ledger.db.close()
    return EXIT_OK
