"""Command-line entry point: ``homkk VERB -i INPUT [-i INPUT ...]``.

Exit status 0 means the report was computed (report-valued verbs included),
2 means the input did not validate and 3 means a valid input failed the
precondition of the requested operation.
"""

import argparse
import json
import logging
import os
import sys
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from homkk import __version__
from homkk.commands import COMMANDS, BaseCommand, RunOptions
from homkk.config.dotenv_config import get_env_settings
from homkk.config.logging_config import configure_logging
from homkk.config.profiles import load_profile
from homkk.constants.json_profile_config import Profile
from homkk.errors import HomkkError, InputValidationError, MatrixTooLargeError, PreconditionError
from homkk.serialization import SCHEMA_VERSION

base_logger = logging.getLogger(__name__)
logger = logging.LoggerAdapter(base_logger, {"role": "CLI"})

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_PRECONDITION = 3


def _positive_int(text: str) -> int:
    value = int(text)
    if value <= 0:
        msg = f"expected a positive integer, got {text}"
        raise argparse.ArgumentTypeError(msg)
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="homkk",
        description="Exact computation of UCT obstruction classes and equivalence decisions.",
    )
    parser.add_argument("verb", choices=sorted(COMMANDS), help="Computation to run")
    parser.add_argument("-i", "--input", dest="inputs", action="append", type=Path, default=[], help="Input JSON document (repeatable)")
    parser.add_argument("-o", "--output", type=Path, help="Write the report here instead of stdout")
    parser.add_argument("--seed", type=int, default=0, help="Seed for generated modules")
    parser.add_argument("--max-n", type=_positive_int, help="Override HOMKK_MAX_N for this run")
    parser.add_argument("--generate", type=_positive_int, metavar="COUNT", help="Run nt-resolve, nt-obstruct or nt-bridge on COUNT generated modules")
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--profile", choices=[p.value for p in Profile], default=Profile.QUICK.value)
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return parser


@contextmanager
def max_n_override(max_n: int | None) -> Iterator[None]:
    """Temporarily replace ``HOMKK_MAX_N`` and refresh the cached settings."""
    if max_n is None:
        yield
        return
    previous = os.environ.get("HOMKK_MAX_N")
    os.environ["HOMKK_MAX_N"] = str(max_n)
    get_env_settings.cache_clear()
    try:
        yield
    finally:
        if previous is None:
            os.environ.pop("HOMKK_MAX_N", None)
        else:
            os.environ["HOMKK_MAX_N"] = previous
        get_env_settings.cache_clear()


def failure_report(command: BaseCommand, status: str, err: Exception) -> dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "verb": command.verb,
        "status": status,
        "inputs": command.echo,
        "error": {"type": type(err).__name__, "message": str(err)},
    }


def render(command: BaseCommand, report: dict[str, Any], output_format: str) -> str:
    if output_format == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    lines = [f"{report['verb']}: {report['status']}"]
    if "error" in report:
        lines.append(f"{report['error']['type']}: {report['error']['message']}")
    else:
        lines.extend(command.summarize(report["result"]))
    return "\n".join(lines) + "\n"


def run(command: BaseCommand, inputs: list[Path]) -> tuple[int, dict[str, Any]]:
    """Run one command and map the error families to exit codes."""
    try:
        return EXIT_OK, command.run(inputs)
    except (InputValidationError, MatrixTooLargeError) as err:
        logger.error("Invalid input for %s: %s", command.verb, err)
        return EXIT_INVALID, failure_report(command, "invalid_input", err)
    except PreconditionError as err:
        logger.error("Precondition failed for %s: %s", command.verb, err)
        return EXIT_PRECONDITION, failure_report(command, "precondition_failed", err)
    except HomkkError as err:  # pragma: no cover - every subclass is handled above
        logger.exception("Unexpected engine error in %s.", command.verb)
        return EXIT_INVALID, failure_report(command, "invalid_input", err)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = get_env_settings()
    except ValidationError as err:
        print(f"invalid HOMKK_* environment: {err}", file=sys.stderr)
        return EXIT_INVALID
    level = {0: settings.log_level, 1: "INFO"}.get(args.verbose, "DEBUG")
    configure_logging(level)

    profile = load_profile(args.profile)
    command = COMMANDS[args.verb](profile, RunOptions(seed=args.seed, max_n=args.max_n, generate=args.generate))
    with max_n_override(args.max_n):
        status, report = run(command, list(args.inputs))

    text = render(command, report, args.format)
    if args.output is not None:
        args.output.parent.mkdir(parents=True, exist_ok=True)
        args.output.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
