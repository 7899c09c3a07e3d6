"""rayclass command line: field-report, check, scan, density, verify, candidates."""

import argparse
import asyncio
import logging
import sys
from typing import List, Optional

from rayclass.cli.commands import (
    cmd_candidates,
    cmd_check,
    cmd_density,
    cmd_field_report,
    cmd_scan,
    cmd_verify,
    write_output,
)
from rayclass.cli.config import RunConfig, load_run_config
from rayclass.cli.render import render
from rayclass.types import InputError, InvariantViolation, OutputFormat, RayClassError
from rayclass.utils.cache import ComputationCache

logger = logging.getLogger(__name__)

COMMANDS = ("field-report", "check", "scan", "density", "verify", "candidates")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="rayclass",
        description="Ray class fields of conductor p over real multiquadratic fields.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--field", help='comma-separated radicals, e.g. "5,13"')
    parser.add_argument("--prime", type=int)
    parser.add_argument("--num-primes", type=int, help="scan the first N primes")
    parser.add_argument("--cutoff", type=int, help="largest prime in the truncated density product")
    parser.add_argument("--bound", type=int, help="prime bound for verify, radical bound for candidates")
    parser.add_argument("--m", type=int, help="number of radicals for candidates")
    parser.add_argument("--out", help="output path, - for stdout")
    parser.add_argument("--format", choices=[f.value for f in OutputFormat])
    parser.add_argument("--workers", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--precision", type=int, help="bits for the density product")
    parser.add_argument("--config", help="key=value file mirroring the flags")
    parser.add_argument("--log-level")
    return parser


async def dispatch(config: RunConfig):
    if config.command == "field-report":
        return cmd_field_report(config)
    if config.command == "check":
        return cmd_check(config)
    if config.command == "scan":
        return await cmd_scan(config)
    if config.command == "density":
        return await cmd_density(config)
    if config.command == "verify":
        return cmd_verify(config)
    return cmd_candidates(config)


async def run(config: RunConfig) -> int:
    result = await dispatch(config)
    fmt = config.format
    if config.command == "scan" and fmt == OutputFormat.TEXT:
        fmt = OutputFormat.CSV
    await write_output(config.out, render(result, fmt))
    logger.debug(f"cache: {ComputationCache().stats()}")
    if config.command == "verify" and result.mismatches:
        raise InvariantViolation(f"{result.mismatches} primes disagree with the image order")
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    fmt = OutputFormat.TEXT
    try:
        args = build_parser().parse_args(argv)
        flags = {k: v for k, v in vars(args).items() if k not in ("command", "config")}
        config = load_run_config(args.command, flags, args.config)
        fmt = config.format
        logging.basicConfig(level=config.log_level, stream=sys.stderr)
        return asyncio.run(run(config))
    except RayClassError as e:
        logger.debug("command failed", exc_info=True)
        if fmt == OutputFormat.JSON:
            print(e.to_report().model_dump_json(), file=sys.stderr)
        else:
            print(f"error: {e.message}", file=sys.stderr)
        return e.exit_code
