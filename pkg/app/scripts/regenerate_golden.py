"""Regenerate the golden artifacts compared by the determinism tests."""
import argparse
from pathlib import Path

from app.core.loader import build_structure, default_presentation
from app.services.artifact_service import scott_artifact, theta_artifact, write_artifact
from app.services.scott_service import assemble_scott, build_theta
from app.services.selftest_service import DINF

DEFAULT_GOLDEN_DIR = Path("tests") / "golden"

# (file name, conjuncts, terms); terms None means a Θ artifact
GOLDEN_ARTIFACTS = [
    ("dinf_theta_12.json", 12, None),
    ("dinf_scott_4_6.json", 4, 6),
]


def regenerate(directory: Path) -> None:
    s = build_structure(DINF)
    ap = default_presentation(s)
    for name, conjuncts, terms in GOLDEN_ARTIFACTS:
        if terms is None:
            document = theta_artifact(s, build_theta(s, ap, conjuncts))
        else:
            document = scott_artifact(s, assemble_scott(s, ap, conjuncts, terms))
        write_artifact(directory / name, document)


def main() -> None:
    parser = argparse.ArgumentParser(description="Regenerate golden artifacts.")
    parser.add_argument(
        "-o", "--output",
        default=str(DEFAULT_GOLDEN_DIR),
        help="Directory to write the artifacts to (default: %(default)r).",
    )
    args = parser.parse_args()
    regenerate(Path(args.output))


if __name__ == "__main__":
    main()
