# --------------------------
# File: app/services/artifact_service.py
# Description: Artifact envelopes for Θ prefixes and Scott sentences; reading
#              formula documents back
# --------------------------

import json
from pathlib import Path
from typing import Any, Dict, Optional, Union

from app.core.errors import MalformedDocumentError, WorkbenchError
from app.models.logic_models import Formula, Signature
from app.models.scott_models import ASSEMBLY, ScottSentence, ThetaPrefix
from app.models.structure_models import StructureHandle
from app.schemas.artifact_schemas import ArtifactEnvelope, ArtifactMetadata
from app.services.formula_service import classify, document_to_formula, formula_document
from app.utils.hashing import canonical_json
from app.utils.logger import get_logger

logger = get_logger(__name__)


def _metadata(s: StructureHandle, **fields) -> ArtifactMetadata:
    return ArtifactMetadata(
        config_hash=s.config_hash,
        structure_type=s.kind,
        length_convention=s.length_convention,
        notes=s.notes(),
        **fields,
    )


def theta_artifact(s: StructureHandle, prefix: ThetaPrefix) -> Dict[str, Any]:
    f = prefix.formula
    envelope = ArtifactEnvelope[dict](
        message=f"Θ prefix with {prefix.cursor} conjunct(s)",
        metadata=_metadata(s, cursor=prefix.cursor, classification=classify(f).tag),
        data=formula_document(f),
    )
    return envelope.model_dump(mode="json", exclude_none=True)


def scott_artifact(s: StructureHandle, sentence: ScottSentence) -> Dict[str, Any]:
    f = sentence.formula
    envelope = ArtifactEnvelope[dict](
        message=f"d-Σ2 Scott sentence over {sentence.theta.cursor} Θ conjunct(s)",
        metadata=_metadata(
            s,
            cursor=sentence.theta.cursor,
            term_cursor=sentence.term_cursor,
            assembly=ASSEMBLY,
            classification=classify(f).tag,
        ),
        data=formula_document(f),
    )
    return envelope.model_dump(mode="json", exclude_none=True)


def render(document: Dict[str, Any]) -> str:
    return canonical_json(document)


def write_artifact(path: Union[str, Path], document: Dict[str, Any]) -> Path:
    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(render(document), encoding="utf-8")
    except OSError as e:
        raise WorkbenchError(f"Cannot write artifact '{path}': {e.strerror}")
    logger.info(f"Artifact written to {target}")
    return target


def read_formula(
    path: Union[str, Path], sig: Optional[Signature] = None, variable_count: Optional[int] = None
) -> Formula:
    """A bare formula document or the `data` of an artifact envelope."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise WorkbenchError(f"Cannot read formula document '{path}': {e.strerror}")
    except json.JSONDecodeError as e:
        raise MalformedDocumentError(f"Formula document '{path}' is not JSON: {e}")
    if isinstance(data, dict) and "metadata" in data and "data" in data:
        data = data["data"]
    return document_to_formula(data, sig, variable_count)
