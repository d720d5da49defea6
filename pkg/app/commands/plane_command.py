# app/commands/plane_command.py
import re

from app.commands.common import CommandOutput, add_structure_argument
from app.core.errors import ParseError, UsageError
from app.core.loader import build_structure, read_config
from app.schemas.run_schemas import RunConfig
from app.services.free_plane_service import FreePlane, census, free_plane, incident
from app.utils.command_guard import guarded

NAME = "plane"
QUERY = re.compile(r"^\s*(stage|kind|incident|census|element)\s*\((.*)\)\s*$", re.DOTALL)


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser(NAME, parents=parents, help="Stage, incidence and census queries on π⁴")
    add_structure_argument(parser, required=False)
    parser.add_argument(
        "--query",
        required=True,
        help="stage(X) | kind(X) | element(X) | incident(X, Y) | census(k)",
    )
    parser.set_defaults(handler=handle)


def _split_pair(text: str):
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            return text[:i], text[i + 1:]
    raise ParseError("incident() takes two elements separated by a comma")


@guarded(NAME)
def handle(cfg: RunConfig) -> CommandOutput:
    plane = build_structure(read_config(cfg.structure)) if cfg.structure else free_plane()
    if not isinstance(plane, FreePlane):
        raise UsageError("plane queries need a free_plane_4 structure")
    match = QUERY.match(cfg.query or "")
    if not match:
        raise ParseError(f"Unrecognized plane query '{cfg.query}'")
    op, argument = match.group(1), match.group(2)

    if op == "census":
        try:
            k = int(argument)
        except ValueError:
            raise ParseError(f"census() takes a stage number, got '{argument}'")
        rows = census(plane, k)
        return CommandOutput("\n".join(f"stage {r['stage']}: {r['points']} points, {r['lines']} lines" for r in rows))
    if op == "incident":
        first, second = (plane.parse_element(x) for x in _split_pair(argument))
        return CommandOutput("true" if incident(plane.store, first, second) else "false")

    x = plane.parse_element(argument)
    if op == "stage":
        return CommandOutput(str(x.stage))
    if op == "kind":
        return CommandOutput("point" if x.is_point else "line" if x.is_line else x.kind.value)
    return CommandOutput(plane.encode(x))
