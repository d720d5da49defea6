# app/core/loader.py
"""
Structure configs to structure handles and their default automorphism presentations.
"""
import json
from pathlib import Path
from typing import Any, Dict, List, Tuple, Union

from pydantic import ValidationError

from app.core.errors import ConfigError, WorkbenchError
from app.models.automorphism_models import AutomorphismSpec, AutPresentation
from app.models.graph_product_models import GPGraph
from app.models.structure_models import StructureHandle
from app.schemas.config_schemas import (
    CosetRepConfig, FreeAbelianConfig, FreeGroupConfig, FreePlaneConfig, GraphProductConfig, StructureConfig,
    StructureDocument,
)
from app.services.classical_group_service import (
    FreeAbelianGroup, FreeGroup, abelian_aut_presentation, free_abelian, free_group, nielsen_aut_presentation,
)
from app.services.free_plane_service import FreePlane, free_plane, plane_aut_presentation
from app.services.graph_product_service import GraphProductGroup, gp_aut_presentation
from app.services.orbit_service import make_inner_plus_finite
from app.utils.logger import get_logger

logger = get_logger(__name__)


def read_config(path: Union[str, Path]) -> Dict[str, Any]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"Cannot read structure config '{path}': {e.strerror}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"Structure config '{path}' is not JSON: {e}")


def _validate(data: Dict[str, Any]) -> StructureConfig:
    try:
        return StructureDocument.model_validate({"structure": data}).structure
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(p) for p in first["loc"][1:])
        raise ConfigError(f"Invalid structure config at '{where}': {first['msg']}")


def build_structure(data: Dict[str, Any]) -> StructureHandle:
    config = _validate(data)

    if isinstance(config, GraphProductConfig):
        graph = GPGraph.build({v.name: v.order for v in config.vertices}, config.edges)
        structure = GraphProductGroup(graph)
    elif isinstance(config, FreeAbelianConfig):
        structure = free_abelian(config.rank)
    elif isinstance(config, FreeGroupConfig):
        structure = free_group(config.rank)
    elif isinstance(config, FreePlaneConfig):
        structure = free_plane()
    else:
        raise ConfigError(f"Unsupported structure type '{data.get('type')}'")
    logger.debug(f"Built {structure.kind} structure {structure.config_hash}")
    return structure


def default_presentation(structure: StructureHandle) -> AutPresentation:
    if isinstance(structure, GraphProductGroup):
        return gp_aut_presentation(structure)
    if isinstance(structure, FreeAbelianGroup):
        return abelian_aut_presentation(structure)
    if isinstance(structure, FreeGroup):
        return nielsen_aut_presentation(structure)
    if isinstance(structure, FreePlane):
        return plane_aut_presentation(structure)
    raise ConfigError(f"No automorphism presentation for {structure.kind}")


def coset_representatives(structure: StructureHandle, reps: List[CosetRepConfig]) -> List[AutomorphismSpec]:
    n = len(structure.generators)
    specs = []
    for rep in reps:
        if len(rep.images) != n:
            raise ConfigError(f"Coset representative '{rep.name}' needs {n} images, got {len(rep.images)}")
        try:
            images = tuple(structure.parse_element(text) for text in rep.images)
            inverse_images = tuple(structure.parse_element(text) for text in rep.inverse_images)
        except WorkbenchError as e:
            raise ConfigError(f"Coset representative '{rep.name}': {e}")
        specs.append(AutomorphismSpec(rep.name, images, inverse_images))
    return specs


def presentation_for(structure: StructureHandle, data: Dict[str, Any]) -> AutPresentation:
    """
    Inner automorphisms plus the listed coset representatives when the config has
    `coset_reps`; the structure's own presentation otherwise.
    """
    reps = getattr(_validate(data), "coset_reps", None)
    if reps is None:
        return default_presentation(structure)
    return make_inner_plus_finite(structure, coset_representatives(structure, reps))


def load_structure(path: Union[str, Path]) -> Tuple[StructureHandle, AutPresentation]:
    data = read_config(path)
    structure = build_structure(data)
    return structure, presentation_for(structure, data)
