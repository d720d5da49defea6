# app/commands/common.py
import argparse
from dataclasses import dataclass
from typing import Tuple

from app.core.errors import UsageError
from app.core.loader import load_structure
from app.models.automorphism_models import AutPresentation
from app.models.structure_models import GeneratorTuple, StructureHandle
from app.schemas.run_schemas import RunConfig
from app.services.structure_service import parse_tuple


@dataclass(frozen=True)
class CommandOutput:
    text: str
    exit_code: int = 0


def add_structure_argument(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument("--structure", required=required, help="Path to a structure config (JSON)")


def add_output_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--output", help="Write the artifact here instead of standard output")


def require(cfg: RunConfig, field: str, flag: str) -> str:
    value = getattr(cfg, field)
    if value is None:
        raise UsageError(f"{cfg.command} needs {flag}")
    return value


def load(cfg: RunConfig) -> Tuple[StructureHandle, AutPresentation]:
    return load_structure(require(cfg, "structure", "--structure"))


def read_tuple(s: StructureHandle, cfg: RunConfig) -> GeneratorTuple:
    return parse_tuple(s, require(cfg, "tuple_text", "--tuple"))
