# app/commands/selftest_command.py
from app.commands.common import CommandOutput
from app.schemas.run_schemas import RunConfig
from app.services.selftest_service import SUITES, run_suites
from app.utils.command_guard import guarded

NAME = "selftest"


def register(subparsers, parents) -> None:
    parser = subparsers.add_parser(NAME, parents=parents, help="Run the oracle-equivalence suites")
    parser.add_argument("--suite", choices=sorted(SUITES), help="Run a single suite")
    parser.add_argument("--quick", action="store_true", help="Shrink every range")
    parser.set_defaults(handler=handle)


@guarded(NAME)
def handle(cfg: RunConfig) -> CommandOutput:
    results = run_suites([cfg.suite] if cfg.suite else [], quick=cfg.quick, seed=cfg.seed, jobs=cfg.jobs)
    lines = []
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        lines.append(f"{status} {r.suite} {r.passed}/{r.passed + r.failed}")
        lines.extend(f"  {failure}" for failure in r.failures)
    failed = sum(1 for r in results if not r.ok)
    return CommandOutput("\n".join(lines), exit_code=1 if failed else 0)
