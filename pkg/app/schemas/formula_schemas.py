# app/schemas/formula_schemas.py

from typing import List, Optional

from pydantic import BaseModel, ConfigDict, model_validator

from app.models.logic_models import FormulaKind


# --------------------------
# JSON AST node for formula documents
# --------------------------
class FormulaNode(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: FormulaKind
    relation: Optional[str] = None
    terms: Optional[List[str]] = None
    variables: Optional[List[int]] = None
    producer: Optional[str] = None
    cursor: Optional[int] = None
    children: Optional[List["FormulaNode"]] = None

    @model_validator(mode="after")
    def fields_match_kind(self):
        """
        Each kind carries exactly the fields it needs.
        """
        if self.kind == FormulaKind.atomic:
            if self.relation is None or not self.terms:
                raise ValueError("atomic nodes need 'relation' and 'terms'")
        elif self.kind in (FormulaKind.exists, FormulaKind.forall):
            if not self.variables or not self.children or len(self.children) != 1:
                raise ValueError(f"{self.kind.value} nodes need 'variables' and one child")
        elif self.kind in (FormulaKind.ce_and, FormulaKind.ce_or):
            if self.producer is None or self.cursor is None:
                raise ValueError(f"{self.kind.value} nodes need 'producer' and 'cursor'")
            if self.cursor != len(self.children or []):
                raise ValueError("cursor must equal the number of materialized children")
        elif self.kind == FormulaKind.negation:
            if not self.children or len(self.children) != 1:
                raise ValueError("not nodes need exactly one child")
        return self


FormulaNode.model_rebuild()
