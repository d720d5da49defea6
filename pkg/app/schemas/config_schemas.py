# app/schemas/config_schemas.py

from typing import Annotated, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from sympy import factorint


# -----------------------------
# Structure configs
# -----------------------------
class VertexConfig(BaseModel):
    """One vertex of Γ with the order of its cyclic group"""
    model_config = ConfigDict(extra="forbid")

    name: str = Field(pattern=r"^[A-Za-z][A-Za-z0-9_]*$")
    order: int

    @field_validator("name")
    @classmethod
    def name_not_identity(cls, v: str) -> str:
        if v == "e":
            raise ValueError("'e' is reserved for the identity")
        return v

    @field_validator("order")
    @classmethod
    def prime_power(cls, v: int) -> int:
        if v < 2 or len(factorint(v)) != 1:
            raise ValueError(f"vertex order must be a prime power, got {v}")
        return v


class CosetRepConfig(BaseModel):
    """A coset representative of the inner automorphisms: images of the generators under it and its inverse"""
    model_config = ConfigDict(extra="forbid")

    name: str = Field(pattern=r"^[A-Za-z][A-Za-z0-9_]*$")
    images: List[str] = Field(min_length=1)
    inverse_images: List[str] = Field(min_length=1)

    @model_validator(mode="after")
    def same_arity(self):
        if len(self.images) != len(self.inverse_images):
            raise ValueError("images and inverse_images need the same length")
        return self


class GraphProductConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    type: Literal["graph_product"]
    vertices: List[VertexConfig] = Field(min_length=1)
    edges: List[List[str]] = Field(default_factory=list)
    coxeter: Optional[bool] = None
    coset_reps: Optional[List[CosetRepConfig]] = None

    @model_validator(mode="after")
    def edges_and_labels(self):
        names = [v.name for v in self.vertices]
        if len(set(names)) != len(names):
            raise ValueError("vertex names must be unique")
        seen = set()
        for edge in self.edges:
            if len(edge) != 2 or edge[0] == edge[1]:
                raise ValueError(f"edge {edge} must join two distinct vertices")
            for v in edge:
                if v not in names:
                    raise ValueError(f"edge {edge} uses unknown vertex '{v}'")
            key = frozenset(edge)
            if key in seen:
                raise ValueError(f"edge {edge} is listed twice")
            seen.add(key)
        if self.coxeter and any(v.order != 2 for v in self.vertices):
            raise ValueError("a right-angled Coxeter config needs every order to be 2")
        return self


class FreeAbelianConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    type: Literal["free_abelian"]
    rank: int = Field(ge=1, le=8)
    coset_reps: Optional[List[CosetRepConfig]] = None


class FreeGroupConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    type: Literal["free_group"]
    rank: int = Field(ge=1, le=8)
    coset_reps: Optional[List[CosetRepConfig]] = None


class FreePlaneConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    type: Literal["free_plane_4"]


StructureConfig = Annotated[
    Union[GraphProductConfig, FreeAbelianConfig, FreeGroupConfig, FreePlaneConfig],
    Field(discriminator="type"),
]


class StructureDocument(BaseModel):
    """Wrapper so the discriminated union can be validated from a bare dict"""
    structure: StructureConfig
