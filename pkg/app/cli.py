"""
Command-line front end.

    hyperivt isolate "x^3 - x"
    hyperivt ivt-root "x^2 - 2" 0 2 --width 1/4294967296 --json
    hyperivt classify "1/w"
    hyperivt compare "alt{-1; 1}" 0

Results go to standard output, logs and text-mode errors to standard error.
Exit status is 0 on success, 2 when an argument does not parse and 3 when
the mathematics has no answer.
"""

import argparse
import logging
import sys
import uuid
from collections.abc import Sequence
from logging.config import dictConfig
from typing import Any, NoReturn

from pydantic import ValidationError

from app.core.context import correlation_id_ctx
from app.core.enums import FieldKind
from app.core.exceptions import ParseError
from app.core.logging_config import cli_log_config
from app.core.schemas import CommandResponse
from app.observability.telemetry import init_telemetry
from app.schemas.command_schema import Command, command_adapter
from app.services.command_service import respond

logger = logging.getLogger(__name__)

_OPTION_STRINGS = frozenset(
    {"--json", "--width", "--levels", "--field", "--grid", "-v", "--verbose", "-h", "--help", "--"}
)


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        raise ParseError(message)


def _options() -> argparse.ArgumentParser:
    options = _ArgumentParser(add_help=False)
    options.add_argument("--json", action="store_true", help="emit the JSON envelope")
    options.add_argument("--width", help="interval width as a rational (default 1/4294967296)")
    options.add_argument("--levels", type=int, help="hyper-IVT schedule length (levels 2^1..2^L)")
    options.add_argument(
        "--field", choices=[f.value for f in FieldKind], help="coefficient field of polynomials"
    )
    options.add_argument("--grid", type=int, help="cells per refinement level (default 2)")
    options.add_argument("-v", "--verbose", action="store_true", help="log at DEBUG to stderr")
    return options


def build_parser() -> argparse.ArgumentParser:
    options = _options()
    parser = _ArgumentParser(
        prog="hyperivt",
        description="Exact root isolation and non-Archimedean arithmetic over Q and Q(w).",
    )
    sub = parser.add_subparsers(dest="kind", required=True, metavar="COMMAND")

    def command(name: str, help_text: str, *arguments: str) -> None:
        cmd = sub.add_parser(name, parents=[options], help=help_text)
        for argument in arguments:
            cmd.add_argument(argument)

    command("isolate", "isolate every real root of a polynomial", "poly")
    command("count", "count distinct real roots in (lo, hi]", "poly", "lo", "hi")
    command("ivt-root", "narrow a sign change of poly on (a, b)", "poly", "a", "b")
    command("odd-root", "a real root of an odd-degree polynomial", "poly")
    command("sqrt", "nonnegative square root of a rational", "q")
    command("classify", "zero, infinitesimal, appreciable or infinite", "element")
    command("shadow", "standard part of a limited element", "element")
    command("compare", "order two elements", "left", "right")
    command("cut-classify", "cut of Q at the single root in (lo, hi)", "poly", "lo", "hi")
    command("hyper-ivt", "IVT for a polynomial with Q(w) coefficients", "poly", "a", "b")
    return parser


def _to_command(namespace: argparse.Namespace) -> Command:
    fields = {
        k: v.strip() if isinstance(v, str) else v
        for k, v in vars(namespace).items()
        if v is not None
    }
    for flag in ("json", "verbose"):
        fields.pop(flag, None)
    if namespace.kind != "hyper-ivt":
        fields.pop("levels", None)
    try:
        return command_adapter.validate_python(fields)
    except ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(p) for p in err['loc'][1:]) or 'command'}: {err['msg']}"
            for err in e.errors()
        )
        raise ParseError(problems) from e


def _render_text(response: CommandResponse) -> str:
    result: dict[str, Any] = response.result or {}

    def interval(entry: dict[str, Any]) -> str:
        if entry["kind"] == "exact_root":
            return entry["lo"]
        return f"({entry['lo']}, {entry['hi']})"

    match response.command:
        case "isolate":
            return "\n".join(
                f"{interval(root)}  root of {root['defining']}" for root in result["roots"]
            )
        case "count":
            return str(result["count"])
        case "ivt-root":
            return interval(result)
        case "odd-root" | "sqrt":
            return f"{interval(result)}  root of {result['defining']}"
        case "classify":
            return result["label"]
        case "shadow":
            return result["shadow"]
        case "compare":
            return result["ordering"]
        case "cut-classify":
            return f"{result['cut']}  {interval(result['root'])}"
        case "hyper-ivt":
            lines = [f"residual: {result['residual']} ({result['residual_source']})"]
            if result["root"] is not None:
                lines.append(f"root: {result['root']}")
            if result["residual_bound"] is not None:
                lines.append(f"residual bound: {result['residual_bound']}")
            if result["skipped"]:
                lines.append("skipped: " + ", ".join(str(n) for n in result["skipped"]))
            lines.extend(
                f"n = {level['level']}: {interval(level)}  midpoint {level['midpoint']}"
                for level in result["levels"]
            )
            return "\n".join(lines)
    return str(result)


def _emit(response: CommandResponse, as_json: bool) -> None:
    if as_json:
        print(response.model_dump_json())
    elif response.status == "success":
        print(_render_text(response))
    else:
        print(f"error [{response.error_code}]: {response.error_message}", file=sys.stderr)


def _positional(argument: str) -> str:
    """argparse reads "-1/w" or "-x^2+2" as an option; a leading space keeps it positional."""
    if not argument.startswith("-") or argument.split("=", 1)[0] in _OPTION_STRINGS:
        return argument
    return f" {argument}"


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    argv = [_positional(a) for a in argv]
    as_json = "--json" in argv
    verbose = "-v" in argv or "--verbose" in argv
    dictConfig(cli_log_config("DEBUG" if verbose else "WARNING"))
    correlation_id_ctx.set(uuid.uuid4().hex)
    init_telemetry()

    try:
        command = _to_command(build_parser().parse_args(argv))
    except ParseError as exc:
        kind = next((a for a in argv if not a.lstrip().startswith("-")), "unknown")
        response = CommandResponse(
            command=kind, status="error", error_code=exc.error_code, error_message=exc.message
        )
        _emit(response, as_json)
        return exc.exit_code

    response, error = respond(command, surface="cli")
    _emit(response, as_json)
    return error.exit_code if error is not None else 0


def run() -> NoReturn:
    sys.exit(main())


if __name__ == "__main__":
    run()
