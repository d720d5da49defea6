# app/cli.py
import argparse
import sys
from typing import List, Optional

from pydantic import ValidationError

from app.commands import COMMANDS
from app.commands.common import CommandOutput
from app.core.config import DEFAULT_JOBS, DEFAULT_SEED, LOG_LEVEL
from app.core.errors import BudgetExceededError, UsageError, WorkbenchError
from app.schemas.run_schemas import RunConfig
from app.utils.logger import get_logger, set_level

logger = get_logger(__name__)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, default=DEFAULT_JOBS, help="Workers for orbit-ball expansion")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="Seed for randomized suites")
    common.add_argument("--log-level", default=LOG_LEVEL, help="DEBUG, INFO, WARNING or ERROR")

    parser = argparse.ArgumentParser(
        prog="workbench",
        description="Orbit decisions, Θ formulas and d-Σ2 Scott sentences for computable structures",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="command")
    subparsers.required = True
    for module in COMMANDS:
        module.register(subparsers, [common])
    return parser


def _run_config(args: argparse.Namespace) -> RunConfig:
    fields = {
        name: value
        for name, value in vars(args).items()
        if name in RunConfig.model_fields and value is not None
    }
    try:
        return RunConfig(**fields)
    except ValidationError as e:
        first = e.errors()[0]
        raise UsageError(f"--{str(first['loc'][0]).replace('_', '-')}: {first['msg']}")


def run(argv: Optional[List[str]] = None) -> int:
    """Exit code 0 on success, 1 on a domain error, 2 on a usage error."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    try:
        set_level(args.log_level)
    except ValueError:
        print(f"error: unknown log level '{args.log_level}'", file=sys.stderr)
        return UsageError.exit_code

    try:
        cfg = _run_config(args)
        output: CommandOutput = args.handler(cfg)
    except BudgetExceededError as e:
        print(f"budget exceeded: {e.detail}", file=sys.stderr)
        return e.exit_code
    except WorkbenchError as e:
        print(f"error: {e.detail}", file=sys.stderr)
        return e.exit_code

    if output.text:
        print(output.text)
    return output.exit_code
