# --------------------------
# File: app/services/formula_service.py
# Description: Formula classification, prefix materialization and the JSON document codec
# --------------------------

import json
from typing import FrozenSet, Optional

from pydantic import ValidationError

from app.core.errors import MalformedDocumentError, WorkbenchError
from app.models.logic_models import (
    CE_KINDS, AtomicFormula, Formula, FormulaClass, FormulaKind, Signature,
)
from app.schemas.formula_schemas import FormulaNode
from app.services.term_service import format_term, parse_term
from app.utils.hashing import canonical_json


# --------------------------
# Classification
# --------------------------
def _levels(f: Formula):
    kind = f.kind
    if f.is_quantifier_free:
        return 0, 0
    if kind == FormulaKind.negation:
        sigma, pi = _levels(f.body)
        return pi, sigma
    if kind in (FormulaKind.conjunction, FormulaKind.disjunction):
        levels = [_levels(c) for c in f.children]
        return max(s for s, _ in levels), max(p for _, p in levels)
    if kind == FormulaKind.ce_and:
        pi = max([1] + [_levels(c)[1] for c in f.children])
        return pi + 1, pi
    if kind == FormulaKind.ce_or:
        sigma = max([1] + [_levels(c)[0] for c in f.children])
        return sigma, sigma + 1
    sigma, pi = _levels(f.body)
    if kind == FormulaKind.exists:
        level = max(1, min(sigma, pi + 1))
        return level, level + 1
    level = max(1, min(pi, sigma + 1))
    return level + 1, level


def classify(f: Formula) -> FormulaClass:
    """
    Least Σₙ/Πₙ levels by shape. A conjunction of a Σₙ and a Πₙ formula is tagged
    d-Σₙ.
    """
    sigma, pi = _levels(f)
    if sigma == 0 and pi == 0:
        tag = "Σ0/Π0"
    elif sigma < pi:
        tag = f"Σ{sigma}"
    elif pi < sigma:
        tag = f"Π{pi}"
    else:
        tag = f"Δ{sigma}"
        if f.kind == FormulaKind.conjunction:
            parts = [_levels(c) for c in f.children]
            n = sigma - 1
            if all(s <= n or p <= n for s, p in parts):
                tag = f"d-Σ{n}"
    return FormulaClass(sigma=sigma, pi=pi, tag=tag)


def is_pi1(f: Formula) -> bool:
    return _levels(f)[1] <= 1


# --------------------------
# Prefix materialization
# --------------------------
def materialize(f: Formula) -> Formula:
    """
    Replace every c.e. node by the finite and/or of its materialized prefix and
    collapse the resulting trivial members (`φ ∧ true` is φ).
    """
    if f.kind == FormulaKind.atomic or (not f.children and f.kind not in CE_KINDS):
        return f
    children = [materialize(c) for c in f.children]
    if f.kind in CE_KINDS or f.kind in (FormulaKind.conjunction, FormulaKind.disjunction):
        conj = f.kind in (FormulaKind.ce_and, FormulaKind.conjunction)
        unit = FormulaKind.true if conj else FormulaKind.false
        kept = [c for c in children if c.kind != unit]
        if len(kept) == 1:
            return kept[0]
        return Formula.conjunction(*kept) if conj else Formula.disjunction(*kept)
    if f.kind == FormulaKind.negation:
        return Formula.negation(children[0])
    if f.kind == FormulaKind.exists:
        return Formula.exists(f.variables, children[0])
    return Formula.forall(f.variables, children[0])


# --------------------------
# JSON document codec
# --------------------------
def formula_to_node(f: Formula) -> FormulaNode:
    if f.kind == FormulaKind.atomic:
        return FormulaNode(
            kind=f.kind,
            relation=f.atom.relation,
            terms=[format_term(t) for t in f.atom.terms],
        )
    if f.kind in (FormulaKind.true, FormulaKind.false):
        return FormulaNode(kind=f.kind)
    fields = {"children": [formula_to_node(c) for c in f.children]}
    if f.kind in (FormulaKind.exists, FormulaKind.forall):
        fields["variables"] = list(f.variables)
    if f.kind in CE_KINDS:
        fields["producer"] = f.producer
        fields["cursor"] = f.cursor
    return FormulaNode(kind=f.kind, **fields)


def node_to_formula(
    node: FormulaNode,
    sig: Optional[Signature] = None,
    variable_count: Optional[int] = None,
    bound: FrozenSet[int] = frozenset(),
) -> Formula:
    kind = node.kind
    if kind == FormulaKind.true:
        return Formula.top()
    if kind == FormulaKind.false:
        return Formula.bottom()
    if kind == FormulaKind.atomic:
        terms = tuple(parse_term(t, sig, variable_count, bound) for t in node.terms)
        if sig is not None and node.relation != "=":
            arity = sig.relation_arity(node.relation)
            if arity is None or arity != len(terms):
                raise MalformedDocumentError(f"Bad relation '{node.relation}' with {len(terms)} argument(s)")
        if node.relation == "=" and len(terms) != 2:
            raise MalformedDocumentError("Equality takes exactly two terms")
        return Formula.atomic(AtomicFormula(node.relation, terms))
    if kind in (FormulaKind.exists, FormulaKind.forall):
        bound = bound | frozenset(node.variables)
    children = [node_to_formula(c, sig, variable_count, bound) for c in (node.children or [])]
    if kind == FormulaKind.negation:
        return Formula.negation(children[0])
    if kind == FormulaKind.conjunction:
        return Formula(FormulaKind.conjunction, children=tuple(children)) if children else Formula.top()
    if kind == FormulaKind.disjunction:
        return Formula(FormulaKind.disjunction, children=tuple(children)) if children else Formula.bottom()
    if kind == FormulaKind.exists:
        return Formula.exists(node.variables, children[0])
    if kind == FormulaKind.forall:
        return Formula.forall(node.variables, children[0])
    if kind == FormulaKind.ce_and:
        return Formula.ce_and(node.producer, children)
    return Formula.ce_or(node.producer, children)


def formula_document(f: Formula) -> dict:
    return formula_to_node(f).model_dump(mode="json", exclude_none=True)


def serialize_formula(f: Formula) -> str:
    """Canonical JSON text of the materialized portion; byte-stable across runs."""
    return canonical_json(formula_document(f))


def parse_formula(text: str, sig: Optional[Signature] = None, variable_count: Optional[int] = None) -> Formula:
    try:
        data = json.loads(text)
        return document_to_formula(data, sig, variable_count)
    except json.JSONDecodeError as e:
        raise MalformedDocumentError(f"Formula document is not JSON: {e}")


def document_to_formula(data: dict, sig: Optional[Signature] = None, variable_count: Optional[int] = None) -> Formula:
    """`variable_count` bounds the free variables to x1..x<n>; bound ones are always accepted."""
    try:
        node = FormulaNode.model_validate(data)
        return node_to_formula(node, sig, variable_count)
    except ValidationError as e:
        raise MalformedDocumentError(f"Malformed formula document: {e.errors()[0]['msg']}")
    except MalformedDocumentError:
        raise
    except (WorkbenchError, ValueError) as e:
        raise MalformedDocumentError(f"Malformed formula document: {e}")
