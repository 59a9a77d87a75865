# cli/commands/extract.py

from cli.common import EXIT_OK, add_ring_flags, add_table_flag, load_table, ring_from_args
from energy.extract import extract, slow_build
from energy.ladder import build


def register(subparsers):
    parser = subparsers.add_parser(
        "extract",
        help="print one length-L word of a given free energy",
    )
    parser.add_argument("--length", type=int, required=True)
    parser.add_argument("--energy", type=int, required=True)
    add_table_flag(parser, required=True)
    parser.add_argument("--witness", action="store_true", help="build the witness index before extracting")
    add_ring_flags(parser)
    parser.set_defaults(func=run)


def run(args, out, err) -> int:
    table = load_table(args.gamma_table)
    ladder = build(args.length, table, ring_from_args(args, args.length))
    witness = slow_build(ladder) if args.witness else None
    word = extract(args.energy, ladder, witness)
    out.write(f"{word.symbols}\n")
    return EXIT_OK
