# cli/commands/count.py

from cli.common import EXIT_OK, add_ring_flags, add_table_flag, load_table, output_stream, ring_from_args
from energy.ladder import build, dp_ladder


def register(subparsers):
    parser = subparsers.add_parser(
        "count",
        help="histogram of free energies over all length-L strings",
        description="Prints 'E<TAB>count' for every achievable energy, ascending.",
    )
    parser.add_argument("--length", type=int, required=True)
    add_table_flag(parser, required=True)
    parser.add_argument("--engine", choices=("fft", "dp"), default="fft")
    add_ring_flags(parser)
    parser.add_argument("--out", default=None)
    parser.set_defaults(func=run)


def format_counts(ladder) -> str:
    lines = []
    if not ladder.ring.is_exact:
        lines.append(f"# ring=mod {ladder.ring.modulus}")
    lines.extend(f"{energy}\t{count}" for energy, count in ladder.counts())
    return "\n".join(lines) + "\n"


def run(args, out, err) -> int:
    table = load_table(args.gamma_table)
    ring = ring_from_args(args, args.length)
    if args.engine == "dp":
        ladder = dp_ladder(args.length, table, ring)
    else:
        ladder = build(args.length, table, ring)
    with output_stream(args.out, out) as fh:
        fh.write(format_counts(ladder))
    return EXIT_OK
