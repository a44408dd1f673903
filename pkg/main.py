import argparse
import logging
import re
import sys
import time
import types
import typing
from typing import Literal, Union

from pydantic import ValidationError

from configs import LOG_FORMAT, get_settings
from functions import COMMANDS, Command, parse_complex
from reports import render

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE = 0, 1, 2

_NUMBER = r"(?:\d+\.?\d*|\.\d+)(?:e[+-]?\d+)?"
# values such as -2, -2.5i or -0.5+1i; argparse would take them for flags
NEGATIVE_VALUE = re.compile(rf"-(?:inf|nan|[ij]|{_NUMBER}(?:[ij]|[+-](?:{_NUMBER})?[ij])?)$", re.IGNORECASE)


def _unwrap_optional(annotation):
    if typing.get_origin(annotation) in (Union, types.UnionType):
        args = [arg for arg in typing.get_args(annotation) if arg is not type(None)]
        if len(args) == 1:
            return args[0]
    return annotation


def _scalar_options(annotation) -> dict:
    if typing.get_origin(annotation) is Literal:
        return {"choices": list(typing.get_args(annotation))}
    if annotation is complex:
        return {"type": parse_complex}
    return {"type": annotation}


def _add_flags(parser: argparse.ArgumentParser, model: type[Command]) -> None:
    """One flag per model field, documented by the field description."""
    for name, field in model.model_fields.items():
        flag = "--" + name.replace("_", "-")
        annotation = _unwrap_optional(field.annotation)
        options = {"dest": name, "help": field.description, "default": argparse.SUPPRESS}
        if annotation is bool:
            options["action"] = "store_true"
        elif typing.get_origin(annotation) is list:
            options.update(_scalar_options(typing.get_args(annotation)[0]), nargs="+")
        else:
            options.update(_scalar_options(annotation))
        if field.is_required():
            options["required"] = True
        parser.add_argument(flag, **options)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zetaquant",
        description="Regularized determinants, reconstructions and their verification reports.",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)
    for name, model in COMMANDS.items():
        summary = (model.__doc__ or "").strip().split("\n\n")[0]
        subparser = subparsers.add_parser(name, help=" ".join(summary.split()), description=summary)
        subparser._negative_number_matcher = NEGATIVE_VALUE
        _add_flags(subparser, model)
    parser._negative_number_matcher = NEGATIVE_VALUE
    return parser


def run(argv: list[str] | None = None) -> int:
    """
    Runs one subcommand and writes its report to stdout.

    Exit codes: 0 when every checked row passes, 1 when a check fails, 2 for
    usage errors and invalid input.
    """
    parser = build_parser()
    try:
        namespace = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK

    settings = get_settings()
    logging.basicConfig(level=settings.log_level, format=LOG_FORMAT, stream=sys.stderr)

    arguments = vars(namespace)
    name = arguments.pop("command")
    start = time.perf_counter()
    try:
        command = COMMANDS[name](**arguments)
        report = command.run()
    except (ValidationError, ValueError, OSError) as exc:
        logger.debug("%s failed", name, exc_info=True)
        print(f"zetaquant {name}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    report.runtime_ms = 0.0 if command.no_timing else (time.perf_counter() - start) * 1000.0
    sys.stdout.write(render(report, command.format))
    logger.info("%s finished: %s", name, "pass" if report.passed else "FAIL")
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(run())
