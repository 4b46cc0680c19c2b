import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Tuple

from config import settings
from exceptions import EquiPermError, InputError, InvariantViolation
from models.schemas import CycleType, ReportDocument
from services.conjectures import check_conjecture
from services.oracle import LatticePointOracle
from services.report_service import FORMATS, report_service

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INVARIANT = 2
EXIT_MISMATCH = 3

CONJECTURES = ("12.2", "12.3", "12.4")
SCHEMA_PATH = Path(__file__).resolve().parent / "schemas" / "report.schema.json"


class CommandLineParser(argparse.ArgumentParser):
    """argparse parser whose usage errors surface as InputError instead of exiting."""

    def error(self, message: str):
        raise InputError(f"{self.prog}: {message}")


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from exc
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def sweep_bounds(text: str) -> Tuple[int, int]:
    pieces = text.split(",")
    if len(pieces) != 2:
        raise argparse.ArgumentTypeError(f"sweep expects N,TMAX, got {text!r}")
    return positive_int(pieces[0]), positive_int(pieces[1])


def build_parser() -> CommandLineParser:
    # Global flags are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS, help="output format")
    common.add_argument(
        "--budget", type=positive_int, default=argparse.SUPPRESS, help="maximum number of oracle candidates"
    )

    parser = CommandLineParser(
        prog="equiperm",
        description="Equivariant Ehrhart theory of the permutahedron under the symmetric group.",
        parents=[common],
    )
    commands = parser.add_subparsers(dest="command", required=True)

    quasipoly = commands.add_parser("quasipoly", parents=[common], help="Ehrhart quasipolynomial of a fixed polytope")
    quasipoly.add_argument("--cycle-type", required=True)

    for kind, text in (("series", "reduced Ehrhart series"), ("phi", "reduced equivariant phi-series")):
        sub = commands.add_parser(kind, parents=[common], help=text)
        sub.add_argument("--cycle-type", required=True)
        sub.add_argument("--terms", type=positive_int, default=10)

    table = commands.add_parser("table", parents=[common], help="quasipolynomial, series and phi for every class")
    table.add_argument("--n", type=positive_int, required=True)

    decompose = commands.add_parser("decompose", parents=[common], help="irreducible decomposition of every phi_i")
    decompose.add_argument("--n", type=positive_int, required=True)
    decompose.add_argument("--terms", type=positive_int)

    verdict = commands.add_parser("verdict", parents=[common], help="is phi polynomial, is it effective")
    verdict.add_argument("--n", type=positive_int, required=True)

    oracle = commands.add_parser("oracle", parents=[common], help="brute-force lattice point counts")
    oracle.add_argument("--cycle-type")
    oracle.add_argument("--t", type=positive_int, default=1)
    oracle.add_argument("--sweep", type=sweep_bounds)
    oracle.add_argument("--workers", type=positive_int)

    check = commands.add_parser("check", parents=[common], help="run a conjecture check")
    check.add_argument("--conjecture", choices=CONJECTURES, required=True)
    check.add_argument("--max-n", type=positive_int)

    character = commands.add_parser("character", parents=[common], help="lattice point permutation character")
    character.add_argument("--n", type=positive_int, required=True)
    character.add_argument("--t", type=positive_int, required=True)

    commands.add_parser("schema", parents=[common], help="print the JSON schema of the report document")
    return parser


def run_check(conjecture: str, max_n: Optional[int]) -> ReportDocument:
    """12.3 sweeps every n up to the bound; 12.2 and 12.4 run once per n up to it."""
    if conjecture == "12.3":
        bound = 10 if max_n is None else max_n
        reports = [check_conjecture(conjecture, bound)]
    else:
        bound = 3 if max_n is None else max_n
        reports = [check_conjecture(conjecture, n) for n in range(1, bound + 1)]
    return report_service.check_report(reports, {"conjecture": conjecture, "max_n": str(bound)})


def execute(args: argparse.Namespace) -> Tuple[Optional[ReportDocument], bool]:
    """Dispatch one parsed command; returns the report and whether every check passed."""
    if args.command == "quasipoly":
        return report_service.quasipolynomial_report(CycleType.parse(args.cycle_type)), True
    if args.command in ("series", "phi"):
        return report_service.series_report(CycleType.parse(args.cycle_type), args.command, args.terms), True
    if args.command == "table":
        return report_service.table_report(args.n), True
    if args.command == "decompose":
        return report_service.decompose_report(args.n, args.terms), True
    if args.command == "verdict":
        return report_service.verdict_report(args.n), True
    if args.command == "oracle":
        oracle = LatticePointOracle(max_candidates=getattr(args, "budget", None), workers=args.workers)
        cycle_type = CycleType.parse(args.cycle_type) if args.cycle_type else None
        return report_service.oracle_report(oracle, cycle_type, args.t, args.sweep)
    if args.command == "check":
        document = run_check(args.conjecture, args.max_n)
        return document, document.results["passed"]
    if args.command == "character":
        return report_service.character_report(args.n, args.t), True
    return None, True


def main(argv: Optional[List[str]] = None) -> int:
    level = "DEBUG" if settings.debug else settings.log_level
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        args = build_parser().parse_args(argv)
        fmt = getattr(args, "format", settings.default_format)
        if args.command == "schema":
            sys.stdout.write(SCHEMA_PATH.read_text(encoding="utf-8"))
            return EXIT_OK
        document, passed = execute(args)
        sys.stdout.write(report_service.render(document, fmt))
    except InputError as e:
        logger.error(f"Input error: {e}")
        return EXIT_INPUT
    except InvariantViolation as e:
        logger.error(f"Invariant violation: {e}")
        return EXIT_INVARIANT
    except EquiPermError as e:
        logger.error(f"Unexpected error: {e}")
        return EXIT_INVARIANT
    except Exception as e:
        logger.exception(f"Internal error: {e}")
        return EXIT_INVARIANT
    return EXIT_OK if passed else EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
