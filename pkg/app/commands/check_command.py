# app/commands/check_command.py
from app.commands.common import CommandOutput, add_structure_argument, load, read_tuple
from app.core.loader import build_structure, read_config
from app.models.scott_models import Verdict
from app.models.structure_models import StructureHandle
from app.schemas.artifact_schemas import CheckResult
from app.schemas.run_schemas import RunConfig
from app.services.artifact_service import read_formula
from app.services.scott_service import build_theta, check_bounded, confirm_in_orbit
from app.utils.command_guard import guarded

NAME = "check"


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser(NAME, parents=parents, help="Model-check a formula prefix at a tuple")
    add_structure_argument(parser)
    parser.add_argument("--tuple", dest="tuple_text", required=True, help="Assignment to x1..xn")
    parser.add_argument("--formula", help="Formula document or artifact; defaults to Θ of the structure")
    parser.add_argument("--target", help="Structure config to evaluate in; defaults to --structure")
    parser.add_argument("--max-conjuncts", type=int, default=10, help="Θ conjuncts when no --formula is given")
    parser.add_argument("--depth", type=int, default=4, help="Element length bounding the quantifiers")
    parser.set_defaults(handler=handle)


def describe(s: StructureHandle, verdict: Verdict) -> str:
    result = CheckResult(
        verdict=verdict.kind.value,
        depth=verdict.depth,
        conjunct=verdict.conjunct,
        witness=[s.encode(x) for x in verdict.witness] if verdict.witness is not None else None,
        unresolved=list(verdict.unresolved),
    )
    parts = [result.verdict.upper()]
    if result.conjunct is not None:
        parts.append(f"conjunct={result.conjunct}")
    if result.witness is not None:
        parts.append(f"witness=({', '.join(result.witness)})")
    if result.depth is not None:
        parts.append(f"depth={result.depth}")
    if result.unresolved:
        parts.append(f"unresolved={result.unresolved}")
    return " ".join(parts)


@guarded(NAME)
def handle(cfg: RunConfig) -> CommandOutput:
    s, ap = load(cfg)
    target = build_structure(read_config(cfg.target)) if cfg.target else s
    if cfg.formula:
        f = read_formula(cfg.formula, s.signature, s.presentation.generator_count)
    else:
        f = build_theta(s, ap, cfg.max_conjuncts, jobs=cfg.jobs).formula
    b = read_tuple(target, cfg)
    if target is s and not cfg.formula:
        verdict = confirm_in_orbit(s, ap, f, b, cfg.depth, jobs=cfg.jobs)
    else:
        verdict = check_bounded(f, target, cfg.depth, b)
    return CommandOutput(describe(target, verdict))
