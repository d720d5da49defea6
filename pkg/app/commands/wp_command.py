# app/commands/wp_command.py
from app.commands.common import CommandOutput, add_structure_argument, require
from app.core.loader import build_structure, read_config
from app.schemas.run_schemas import RunConfig
from app.utils.command_guard import guarded

NAME = "wp"


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser(NAME, parents=parents, help="Normal form and length of a word")
    add_structure_argument(parser)
    parser.add_argument("--word", required=True, help="Element text, e.g. 'a b a' or 'e'")
    parser.set_defaults(handler=handle)


@guarded(NAME)
def handle(cfg: RunConfig) -> CommandOutput:
    s = build_structure(read_config(require(cfg, "structure", "--structure")))
    element = s.parse_element(require(cfg, "word", "--word"))
    return CommandOutput(f"{s.encode(element)}, length {s.element_length(element)}")
