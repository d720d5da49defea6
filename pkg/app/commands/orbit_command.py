# app/commands/orbit_command.py
from app.commands.common import CommandOutput, add_structure_argument, load, read_tuple
from app.schemas.run_schemas import RunConfig
from app.services.orbit_service import orbit_decide
from app.utils.command_guard import guarded

NAME = "orbit"


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser(NAME, parents=parents, help="Decide whether a tuple lies in the orbit of ā")
    add_structure_argument(parser)
    parser.add_argument("--tuple", dest="tuple_text", required=True, help="Comma-separated elements")
    parser.set_defaults(handler=handle)


@guarded(NAME)
def handle(cfg: RunConfig) -> CommandOutput:
    s, ap = load(cfg)
    verdict = orbit_decide(s, ap, read_tuple(s, cfg), jobs=cfg.jobs)
    if verdict.in_orbit:
        return CommandOutput(f"IN-ORBIT witness={verdict.witness.render(ap.names)}")
    return CommandOutput(f"NOT-IN-ORBIT bound={verdict.bound} searched={verdict.searched}")
