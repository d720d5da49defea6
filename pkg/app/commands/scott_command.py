# app/commands/scott_command.py
from app.commands.common import CommandOutput, add_output_argument, add_structure_argument, load
from app.schemas.run_schemas import RunConfig
from app.services.artifact_service import render, scott_artifact, write_artifact
from app.services.scott_service import assemble_scott
from app.utils.command_guard import guarded

NAME = "scott"


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser(NAME, parents=parents, help="Write a d-Σ2 Scott sentence prefix")
    add_structure_argument(parser)
    parser.add_argument("--max-conjuncts", type=int, default=10)
    parser.add_argument("--max-terms", type=int, default=10, help="Materialized disjuncts of the Π2 part")
    add_output_argument(parser)
    parser.set_defaults(handler=handle)


@guarded(NAME)
def handle(cfg: RunConfig) -> CommandOutput:
    s, ap = load(cfg)
    sentence = assemble_scott(s, ap, cfg.max_conjuncts, cfg.max_terms, jobs=cfg.jobs)
    document = scott_artifact(s, sentence)
    if cfg.output:
        path = write_artifact(cfg.output, document)
        return CommandOutput(f"{document['message']} written to {path}")
    return CommandOutput(render(document).rstrip("\n"))
