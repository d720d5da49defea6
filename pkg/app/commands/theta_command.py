# app/commands/theta_command.py
from app.commands.common import CommandOutput, add_output_argument, add_structure_argument, load
from app.schemas.run_schemas import RunConfig
from app.services.artifact_service import render, theta_artifact, write_artifact
from app.services.scott_service import build_theta
from app.utils.command_guard import guarded

NAME = "theta"


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser(NAME, parents=parents, help="Write the Θ orbit formula prefix")
    add_structure_argument(parser)
    parser.add_argument("--max-conjuncts", type=int, default=10)
    add_output_argument(parser)
    parser.set_defaults(handler=handle)


@guarded(NAME)
def handle(cfg: RunConfig) -> CommandOutput:
    s, ap = load(cfg)
    document = theta_artifact(s, build_theta(s, ap, cfg.max_conjuncts, jobs=cfg.jobs))
    if cfg.output:
        path = write_artifact(cfg.output, document)
        return CommandOutput(f"{document['message']} written to {path}")
    return CommandOutput(render(document).rstrip("\n"))
