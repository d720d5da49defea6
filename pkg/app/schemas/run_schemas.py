# app/schemas/run_schemas.py

from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from app.core.config import DEFAULT_JOBS, DEFAULT_SEED


class RunConfig(BaseModel):
    """One CLI invocation after argument parsing"""
    model_config = ConfigDict(extra="forbid")

    command: str
    structure: Optional[str] = None
    word: Optional[str] = None
    tuple_text: Optional[str] = None
    query: Optional[str] = None
    target: Optional[str] = None
    formula: Optional[str] = None
    suite: Optional[str] = None
    quick: bool = False
    budget: Optional[int] = Field(default=None, ge=0)
    max_conjuncts: int = Field(default=10, ge=0)
    max_terms: int = Field(default=0, ge=0)
    depth: int = Field(default=4, ge=0)
    output: Optional[str] = None
    seed: int = DEFAULT_SEED
    jobs: int = Field(default=DEFAULT_JOBS, ge=1)
