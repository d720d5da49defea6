# app/schemas/artifact_schemas.py
from typing import Any, Generic, List, Optional, TypeVar

from pydantic import BaseModel

T = TypeVar("T")


class ArtifactMetadata(BaseModel):
    config_hash: str
    structure_type: str
    length_convention: str
    cursor: Optional[int] = None
    term_cursor: Optional[int] = None
    assembly: Optional[str] = None
    classification: Optional[str] = None
    notes: List[str] = []


class ArtifactEnvelope(BaseModel, Generic[T]):
    message: str
    metadata: ArtifactMetadata
    data: Optional[T] = None


class XStarRow(BaseModel):
    index: int
    elements: List[str]
    terms: List[str]


class OrbitResult(BaseModel):
    verdict: str
    bound: int
    witness: Optional[str] = None
    searched: int


class CheckResult(BaseModel):
    verdict: str
    depth: Optional[int] = None
    conjunct: Optional[int] = None
    witness: Optional[List[str]] = None
    unresolved: List[int] = []


class SuiteResult(BaseModel):
    suite: str
    passed: int
    failed: int
    failures: List[Any] = []

    @property
    def ok(self) -> bool:
        return self.failed == 0
