# app/commands/xstar_command.py
from itertools import islice

from app.commands.common import CommandOutput, add_structure_argument, load
from app.schemas.artifact_schemas import XStarRow
from app.schemas.run_schemas import RunConfig
from app.services.orbit_service import enumerate_xstar
from app.services.term_service import display_term
from app.utils.command_guard import guarded

NAME = "xstar"


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser(NAME, parents=parents, help="List X_* tuples with their terms")
    add_structure_argument(parser)
    parser.add_argument("--budget", type=int, help="Largest element length to scan")
    parser.add_argument("--max-conjuncts", type=int, default=10, help="How many tuples to list")
    parser.set_defaults(handler=handle)


@guarded(NAME)
def handle(cfg: RunConfig) -> CommandOutput:
    s, ap = load(cfg)
    rows = [
        XStarRow(
            index=entry.index,
            elements=[s.encode(x) for x in entry.elements],
            terms=[display_term(t, s.signature) for t in entry.terms],
        )
        for entry in islice(enumerate_xstar(s, ap, budget=cfg.budget, jobs=cfg.jobs), cfg.max_conjuncts)
    ]
    lines = [f"{r.index}: ({', '.join(r.elements)}) terms=({', '.join(r.terms)})" for r in rows]
    return CommandOutput("\n".join(lines))
