# --------------------------
# File: app/services/structure_service.py
# Description: Term evaluation, quantifier-free truth, lengths, element enumeration and term search
# --------------------------

from itertools import product
from typing import Dict, List, Sequence, Tuple

from app.core.config import ENUMERATION_MAX_ELEMENTS, TERM_SEARCH_MAX_SIZE, TERM_SEARCH_MAX_VALUES
from app.core.errors import ArityError, BudgetExceededError, PreconditionError, UnknownSymbolError
from app.models.logic_models import AtomicFormula, Formula, FormulaKind, Term, TermKind
from app.models.structure_models import ElementId, GeneratorTuple, StructureHandle
from app.services.term_service import _compositions, build_psi
from app.utils.logger import get_logger

logger = get_logger(__name__)


# --------------------------
# Evaluation
# --------------------------
def eval_term(s: StructureHandle, t: Term, assignment: Sequence[ElementId]) -> ElementId:
    if t.kind == TermKind.variable:
        if t.index > len(assignment):
            raise ArityError(f"Variable x{t.index} outside an assignment of arity {len(assignment)}")
        return assignment[t.index - 1]
    if t.kind == TermKind.constant:
        return s.constant(t.name)
    arity = s.signature.function_arity(t.name)
    if arity is None:
        raise UnknownSymbolError(f"Unknown function symbol '{t.name}'")
    if arity != len(t.children):
        raise ArityError(f"Function '{t.name}' takes {arity} argument(s), got {len(t.children)}")
    return s.apply(t.name, [eval_term(s, c, assignment) for c in t.children])


def holds_atom(s: StructureHandle, atom: AtomicFormula, assignment: Sequence[ElementId]) -> bool:
    values = [eval_term(s, t, assignment) for t in atom.terms]
    if atom.is_equality:
        return s.equal(values[0], values[1])
    arity = s.signature.relation_arity(atom.relation)
    if arity is None:
        raise UnknownSymbolError(f"Unknown relation symbol '{atom.relation}'")
    if arity != len(values):
        raise ArityError(f"Relation '{atom.relation}' takes {arity} argument(s), got {len(values)}")
    return s.relation(atom.relation, values)


def holds(s: StructureHandle, f: Formula, assignment: Sequence[ElementId]) -> bool:
    """Truth of a quantifier-free formula under `assignment` (x1 ↦ assignment[0], ...)."""
    if not f.is_quantifier_free:
        raise PreconditionError("holds() only evaluates quantifier-free formulas")
    kind = f.kind
    if kind == FormulaKind.true:
        return True
    if kind == FormulaKind.false:
        return False
    if kind == FormulaKind.atomic:
        return holds_atom(s, f.atom, assignment)
    if kind == FormulaKind.negation:
        return not holds(s, f.body, assignment)
    if kind == FormulaKind.conjunction:
        return all(holds(s, c, assignment) for c in f.children)
    return any(holds(s, c, assignment) for c in f.children)


def satisfies_psi(s: StructureHandle, b: Sequence[ElementId]) -> bool:
    if len(b) != s.presentation.generator_count:
        raise ArityError(f"Expected a {s.presentation.generator_count}-tuple, got {len(b)} element(s)")
    return holds(s, build_psi(s.presentation), b)


def relators_hold(s: StructureHandle, images: Sequence[ElementId]) -> bool:
    return all(holds_atom(s, r, images) for r in s.presentation.relators)


# --------------------------
# Length and enumeration
# --------------------------
def element_length(s: StructureHandle, e: ElementId) -> int:
    return s.element_length(e)


def tuple_lengths(s: StructureHandle, b: Sequence[ElementId]) -> List[int]:
    return [s.element_length(x) for x in b]


def enumerate_elements(s: StructureHandle, max_length: int) -> List[ElementId]:
    """
    Elements of length <= max_length, each once, in length-lexicographic order of
    their canonical encodings.
    """
    elements = s.ball(max_length)
    if len(elements) > ENUMERATION_MAX_ELEMENTS:
        logger.warning(f"Enumeration to length {max_length} has {len(elements)} elements")
        raise BudgetExceededError(
            f"Enumeration to length {max_length} exceeds {ENUMERATION_MAX_ELEMENTS} elements"
        )
    return sorted(elements, key=s.sort_key)


def parse_tuple(s: StructureHandle, text: str) -> GeneratorTuple:
    """Comma-separated elements; vector syntax keeps its inner commas."""
    parts, depth, current = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
            continue
        current.append(ch)
    parts.append("".join(current))
    return tuple(s.parse_element(p.strip()) for p in parts)


def format_tuple(s: StructureHandle, b: Sequence[ElementId]) -> str:
    return "(" + ", ".join(s.encode(x) for x in b) + ")"


# --------------------------
# Term search
# --------------------------
def find_terms_for(
    s: StructureHandle,
    b: Sequence[ElementId],
    max_size: int = TERM_SEARCH_MAX_SIZE,
) -> Tuple[Term, ...]:
    """
    Size-minimal terms tᵢ with tᵢ(ā) = bᵢ. Values are grown by term size; each value
    keeps the first term reaching it in the term enumeration order, and larger terms
    are built only from those representatives, so the search stays polynomial in
    the number of values reached.
    """
    sig = s.signature
    wanted = set(b)
    found: Dict[ElementId, Term] = {}
    by_size: List[List[Tuple[ElementId, Term]]] = [[]]

    def record(value: ElementId, term: Term, layer: List[Tuple[ElementId, Term]]) -> None:
        if value not in found:
            found[value] = term
            layer.append((value, term))

    for size in range(1, max_size + 1):
        layer: List[Tuple[ElementId, Term]] = []
        if size == 1:
            for name in sig.constants:
                record(s.constant(name), Term.const(name), layer)
            for i, g in enumerate(s.generators, start=1):
                record(g, Term.var(i), layer)
        for name, arity in sig.functions:
            for sizes in _compositions(size - 1, arity):
                pools = [by_size[k] for k in sizes]
                for combo in product(*pools):
                    value = s.apply(name, [v for v, _ in combo])
                    record(value, Term.apply(name, *(t for _, t in combo)), layer)
        by_size.append(layer)
        if wanted.issubset(found):
            logger.debug(f"Term search finished at size {size} with {len(found)} values")
            return tuple(found[x] for x in b)
        if len(found) > TERM_SEARCH_MAX_VALUES:
            break

    logger.warning(f"Term search gave up with {len(found)} values")
    raise BudgetExceededError(
        f"No terms found for {[s.encode(x) for x in b]} within size {max_size} "
        f"and {TERM_SEARCH_MAX_VALUES} values"
    )
