# cli/commands/verify.py

from cli.common import EXIT_OK, EXIT_VIOLATION, add_table_flag, load_table
from constraints.checks import verify_all
from constraints.params import ConstraintParams
from constraints.report import ConstraintId, VerificationSummary
from core.exceptions import InvalidInputError
from words.io import WordListReader


def register(subparsers):
    parser = subparsers.add_parser(
        "verify",
        help="check a word list against C1..C9",
        description="Each --cN flag selects constraint CN with its threshold.",
    )
    parser.add_argument("--input", required=True, help="word-list file")
    for i in range(1, 7):
        parser.add_argument(f"--c{i}", type=int, default=None, metavar=f"K{i}")
    parser.add_argument("--c7", type=float, default=None, metavar="GAMMA")
    parser.add_argument("--c8", type=int, default=None, metavar="D")
    parser.add_argument("--c9", type=int, default=None, metavar="SIGMA")
    add_table_flag(parser)
    parser.add_argument("--include-diagonal", action="store_true", help="also check Y = X in C2")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.set_defaults(func=run)


def run(args, out, err) -> int:
    selection = [ConstraintId(f"C{i}") for i in range(1, 10) if getattr(args, f"c{i}") is not None]
    if not selection:
        raise InvalidInputError("Select at least one constraint (--c1 .. --c9)")
    table = load_table(args.gamma_table)
    if args.c9 is not None and table is None:
        raise InvalidInputError("--c9 needs --gamma-table")

    params = ConstraintParams(
        **{f"k{i}": getattr(args, f"c{i}") or 0 for i in range(1, 7)},
        gamma=args.c7,
        d=args.c8,
        sigma=args.c9,
    )
    word_set = WordListReader(args.input).read()
    reports = verify_all(word_set, params, table, selection, include_diagonal=args.include_diagonal)
    summary = VerificationSummary.of(reports, word_set.n, word_set.length)

    if args.format == "json":
        out.write(summary.model_dump_json(indent=2) + "\n")
    else:
        out.write(summary.text())
    return EXIT_OK if summary.passed else EXIT_VIOLATION
