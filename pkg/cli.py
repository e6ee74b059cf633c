"""
Periodinių taškų komandinės eilutės sąsaja.

Pavyzdžiai:
    python cli.py classify operator_specs/harmonic.json
    python cli.py period operator_specs/harmonic.json --vector 2,3
    python cli.py approximate operator_specs/irrational_dense.json --level 8 --n-max 10 --format csv
    python cli.py oracle operator_specs/dyadic_codim1.json --d 64
    python cli.py examples --name codim1 --format json

Grąžinimo kodai: 0 sėkmė, 2 schemos klaida, 3 nepalaikoma, 4 neįmanoma užklausa,
5 orakulo patikra nepavyko.
"""
import os
import sys
import logging
import argparse
from typing import Optional, Sequence

from dotenv import load_dotenv

load_dotenv()
logging.basicConfig(level=os.getenv('LOG_LEVEL', 'INFO').upper(),
                    format='%(asctime)s %(levelname)s: %(message)s')

import reports
from approximation import APPROXIMATION_DEFAULTS
from errors import PeriodicPointsError, SchemaError
from generate_csv import generate_checks_csv, generate_convergence_csv
from generate_excel import generate_examples_workbook
from spec_io import parse_vector_argument
from truncation_oracle import ORACLE_DEFAULTS
from utils import validate_positive_integer

EXIT_OK = 0
EXIT_ORACLE_FAILURE = 5


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"'{text}' nėra sveikasis skaičius")
    is_valid, msg = validate_positive_integer(value)
    if not is_valid:
        raise argparse.ArgumentTypeError(msg)
    return value


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"'{text}' nėra skaičius")
    if value <= 0:
        raise argparse.ArgumentTypeError("Reikšmė turi būti teigiama")
    return value


class _Parser(argparse.ArgumentParser):
    """argparse klaidos tampa SchemaError (grąžinimo kodas 2)."""

    def error(self, message):
        raise SchemaError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text", "csv"), default="text",
                        help="Išvesties formatas (numatytasis text)")
    common.add_argument("--tol", type=_positive_float, default=None,
                        help=f"Orakulo tolerancija (numatytoji {ORACLE_DEFAULTS['tol']})")
    common.add_argument("--max-m", type=_positive_int, default=None,
                        help=f"Iteracijų horizontas (numatytasis {ORACLE_DEFAULTS['max_m']})")
    common.add_argument("--d", type=_positive_int, default=None,
                        help=f"Pjūvio dimensija (numatytoji {ORACLE_DEFAULTS['d']})")
    common.add_argument("--seed", type=int, default=None,
                        help=f"Atsitiktinumo sėkla (numatytoji {ORACLE_DEFAULTS['seed']})")

    parser = _Parser(description="Diagonalių ir permutacijų operatorių periodiniai taškai.")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    classify_parser = subparsers.add_parser("classify", parents=[common], help="Klasifikuoti P(T)")
    classify_parser.add_argument("spec_path", help="Spec failas (JSON)")

    period_parser = subparsers.add_parser("period", parents=[common], help="Vektoriaus periodas")
    period_parser.add_argument("spec_path", help="Spec failas (JSON)")
    period_parser.add_argument("--vector", default=None,
                               help="JSON vektorius arba indeksų sąrašas '2,3'; kitaip imami failo vektoriai")
    period_parser.add_argument("--M", type=_positive_int, default=None,
                               help="Grupiniams vektoriams tikrinamas T^M x = x")

    approx_parser = subparsers.add_parser("approximate", parents=[common], help="Aproksimacija T_n")
    approx_parser.add_argument("spec_path", help="Spec failas (JSON)")
    approx_parser.add_argument("--level", type=_positive_int, default=APPROXIMATION_DEFAULTS['level'])
    approx_parser.add_argument("--probe", type=_positive_int, default=APPROXIMATION_DEFAULTS['probe'])
    approx_parser.add_argument("--n-max", type=_positive_int, default=None,
                               help="Įtraukti konvergencijos lentelę n = 1..n_max")
    approx_parser.add_argument("--no-probe-limited", action="store_true",
                               help="Atmesti šeimas be uždaros formos suapvalinimo")

    oracle_parser = subparsers.add_parser("oracle", parents=[common], help="Skaitinės orakulo patikros")
    oracle_parser.add_argument("spec_path", help="Spec failas (JSON)")

    examples_parser = subparsers.add_parser("examples", parents=[common], help="Auksiniai pavyzdžiai")
    examples_parser.add_argument("--name", default=None, help="Pavyzdžio pavadinimas")
    examples_parser.add_argument("--xlsx", default=None, help="Įrašyti pavyzdžių ataskaitas į Excel failą")

    return parser


def run_command(args: argparse.Namespace) -> tuple:
    """
    Įvykdo komandą.

    Returns:
        tuple: (ataskaita, CSV tekstas arba None)
    """
    if args.command == "classify":
        return reports.cmd_classify(args.spec_path), None

    if args.command == "period":
        vector = parse_vector_argument(args.vector) if args.vector is not None else None
        return reports.cmd_period(args.spec_path, vector, args.M), None

    if args.command == "approximate":
        report = reports.cmd_approximate(args.spec_path, args.level, args.probe, args.n_max,
                                         allow_probe_limited=not args.no_probe_limited)
        csv_text = generate_convergence_csv(report["convergence"]) if "convergence" in report else None
        return report, csv_text

    if args.command == "oracle":
        report = reports.cmd_oracle(args.spec_path, args.d, args.max_m, args.tol, args.seed)
        return report, generate_checks_csv(report["checks"])

    report = reports.cmd_examples(args.name)
    if args.xlsx:
        if args.name is None:
            golden = reports.all_golden_reports()
        else:
            golden = {args.name: report}
        generate_examples_workbook(golden, args.xlsx)
    return report, None


def emit(report: dict, csv_text: Optional[str], output_format: str) -> None:
    if output_format == "csv":
        if csv_text is None:
            raise SchemaError("CSV formatas galimas tik komandoms 'oracle' ir 'approximate --n-max'")
        sys.stdout.write(csv_text)
    elif output_format == "json":
        sys.stdout.write(reports.to_json(report) + "\n")
    else:
        sys.stdout.write(reports.render_text(report) + "\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        report, csv_text = run_command(args)
        emit(report, csv_text, args.format)
    except PeriodicPointsError as e:
        logging.error("%s: %s", type(e).__name__, e)
        return e.exit_code
    except Exception as e:
        logging.error("Netikėta klaida: %s", e, exc_info=True)
        return 1

    if args.command == "oracle" and not report["passed"]:
        failed = [c["check"] for c in report["checks"] if not c["passed"]]
        logging.error("Nepavykusios orakulo patikros: %s", ", ".join(failed))
        return EXIT_ORACLE_FAILURE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
