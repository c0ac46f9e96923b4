"""twisted-wick command line.

Exit status: 0 all pass, 1 a check failed (or an implication was violated),
2 input error, 3 resource skip under --strict.
"""

import argparse
import json
import logging
import sys
from collections.abc import Sequence
from fractions import Fraction
from pathlib import Path
from typing import Any

from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape

from twisted_wick import __version__
from twisted_wick.checks import Verdict, run_all
from twisted_wick.cli.report import (
    ReportDocument,
    collect_dimensions,
    dimension_table,
    render_machine,
    render_text,
    save_report,
)
from twisted_wick.cli.specfile import (
    dump_spec,
    input_digest,
    known_presets,
    load_spec,
    preset_spec,
)
from twisted_wick.config import get_config, use_config
from twisted_wick.exceptions import WickError
from twisted_wick.scalar import format_scalar
from twisted_wick.twist import TwistSystem
from twisted_wick.wick import normal_order, parse_opword, vacuum_expectation

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_RESOURCE = 3

SYMBOLIC = "symbolic"


def parse_q(text: str) -> Fraction | None:
    """--q value: 'symbolic' or a rational such as -1 or 1/2."""
    if text == SYMBOLIC:
        return None
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(
            f"--q expects 'symbolic' or a rational, got {text!r}"
        ) from e


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from e
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _non_negative(text: str) -> int:
    try:
        value = int(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from e
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected n >= 0, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twisted-wick",
        description="Exact checks for C-twisted Wick algebras.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="log progress to stderr"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def system_args(p: argparse.ArgumentParser) -> None:
        p.add_argument("spec", type=Path, help="spec file (twisted-wick-spec/1)")
        p.add_argument(
            "--q",
            type=parse_q,
            default=None,
            metavar="VALUE|symbolic",
            help="specialise q to a rational (default: symbolic)",
        )
        p.add_argument(
            "--format", choices=("text", "machine"), default="text", dest="fmt"
        )

    check = sub.add_parser("check", help="run the full check suite")
    system_args(check)
    check.add_argument("--max-degree", type=_non_negative, default=None)
    check.add_argument(
        "--strict", action="store_true", help="exit 3 when a check hit a cap"
    )
    check.add_argument("--cap", type=_positive, default=None, help="dimension cap")
    check.add_argument("--save", type=Path, default=None, metavar="DIR")
    check.add_argument(
        "--no-timing", action="store_true", help="omit timing from machine output"
    )

    dims = sub.add_parser("dims", help="quotient dimension table")
    system_args(dims)
    dims.add_argument("--max-degree", type=_non_negative, default=None)
    dims.add_argument("--cap", type=_positive, default=None, help="dimension cap")

    order = sub.add_parser("normal-order", help="normal-order an operator word")
    system_args(order)
    order.add_argument("word", help='word expression, e.g. "a1 A2 - A2 a1"')

    preset = sub.add_parser("preset", help="write a builtin preset as a spec file")
    preset.add_argument("name", choices=known_presets())
    preset.add_argument("-d", "--dim", type=_positive, default=2)
    preset.add_argument("--max-degree", type=_non_negative, default=None)
    preset.add_argument(
        "-o", "--output", type=Path, default=None, help="file (default: stdout)"
    )
    return parser


def _load_system(args: argparse.Namespace) -> tuple[TwistSystem, int]:
    """Twist system (specialised if --q is set) and the effective n_max."""
    spec = load_spec(args.spec)
    ts = spec.to_twist_system()
    if args.q is not None:
        ts = ts.specialize(args.q)
    n_max = getattr(args, "max_degree", None)
    if n_max is None:
        n_max = spec.max_degree
    if n_max is None:
        n_max = get_config().max_degree
    return ts, n_max


def _q_label(args: argparse.Namespace) -> str:
    return SYMBOLIC if args.q is None else str(args.q)


def cmd_check(args: argparse.Namespace, console: Console) -> int:
    ts, n_max = _load_system(args)
    config = get_config()
    echo = {
        "n_max": n_max,
        "q": _q_label(args),
        "dimension_cap": config.dimension_cap,
        "max_word_length": config.max_word_length,
        "strict": args.strict,
    }
    reports = run_all(ts, n_max, parameters={"n_max": n_max, "q": echo["q"]})
    rows, skip = collect_dimensions(ts, n_max)
    doc = ReportDocument(input_digest(ts), echo, reports, rows, skip)

    if args.fmt == "machine":
        sys.stdout.write(render_machine(doc, include_timing=not args.no_timing))
    else:
        render_text(doc, console)
    if args.save is not None:
        save_report(doc, args.save, include_timing=not args.no_timing)

    verdict = doc.verdict
    if verdict is Verdict.FAIL:
        return EXIT_FAILED
    if verdict is Verdict.SKIPPED_RESOURCE and args.strict:
        return EXIT_RESOURCE
    return EXIT_OK


def cmd_dims(args: argparse.Namespace, console: Console) -> int:
    ts, n_max = _load_system(args)
    rows, skip = collect_dimensions(ts, n_max)
    if args.fmt == "machine":
        payload: dict[str, Any] = {
            "input_digest": input_digest(ts),
            "dimensions": [
                {
                    "degree": r.degree,
                    "ambient": r.ambient,
                    "ideal": r.ideal,
                    "quotient": r.quotient,
                }
                for r in rows
            ],
        }
        if skip is not None:
            payload["dimensions_skipped"] = skip
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        console.print(dimension_table(rows))
        if skip is not None:
            console.print(f"[yellow]stopped at n={skip['degree']}[/yellow]")
    return EXIT_OK


def cmd_normal_order(args: argparse.Namespace, console: Console) -> int:
    ts, _ = _load_system(args)
    word = parse_opword(args.word)
    ordered = normal_order(ts, word)
    expectation = vacuum_expectation(ts, word)
    if args.fmt == "machine":
        payload: dict[str, Any] = {
            "input": str(word),
            "normal_order": str(ordered),
            "vacuum_expectation": format_scalar(expectation),
        }
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        console.print(str(ordered), markup=False, highlight=False)
        console.print(
            f"vacuum expectation: {format_scalar(expectation)}",
            markup=False,
            highlight=False,
        )
    return EXIT_OK


def cmd_preset(args: argparse.Namespace, console: Console) -> int:
    text = dump_spec(preset_spec(args.name, args.dim, args.max_degree))
    if args.output is None:
        sys.stdout.write(text)
        return EXIT_OK
    try:
        args.output.write_text(text, encoding="utf-8")
    except OSError as e:
        console.print(f"[red]cannot write {args.output}: {e}[/red]")
        return EXIT_INPUT
    logger.info(f"preset {args.name} (d={args.dim}) written to {args.output}")
    return EXIT_OK


COMMANDS = {
    "check": cmd_check,
    "dims": cmd_dims,
    "normal-order": cmd_normal_order,
    "preset": cmd_preset,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verbose:
        logging.basicConfig(
            level=logging.INFO,
            format="%(message)s",
            handlers=[RichHandler(console=Console(stderr=True))],
        )
    console = Console()
    errors = Console(stderr=True)
    try:
        config = get_config().with_cap(getattr(args, "cap", None))
        with use_config(config):
            return COMMANDS[args.command](args, console)
    except WickError as e:
        errors.print(f"[red]error:[/red] {escape(str(e))}", highlight=False)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
