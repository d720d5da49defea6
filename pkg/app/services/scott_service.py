# --------------------------
# File: app/services/scott_service.py
# Description: Θ construction, d-Σ₂ assembly and model checking of formula prefixes
# --------------------------

from itertools import islice, product
from typing import Dict, List, Optional, Sequence, Tuple

from app.core.config import DEFAULT_JOBS, TERM_SEARCH_MAX_SIZE
from app.core.errors import NotFiniteError, PreconditionError
from app.models.automorphism_models import AutPresentation
from app.models.logic_models import AtomicFormula, Formula, FormulaKind, Term
from app.models.scott_models import (
    ASSEMBLY, TERMS_PRODUCER, CheckKind, ScottSentence, ThetaConjunct, ThetaPrefix, Verdict,
)
from app.models.structure_models import ElementId, GeneratorTuple, StructureHandle
from app.services.formula_service import classify, is_pi1
from app.services.orbit_service import XStarEntry, enumerate_xstar, orbit_decide
from app.services.structure_service import enumerate_elements, holds_atom
from app.services.term_service import build_psi, enumerate_terms, relator_formulas
from app.utils.logger import get_logger

logger = get_logger(__name__)


# --------------------------
# Θ
# --------------------------
def conjunct_formula(s: StructureHandle, terms: Sequence[Term]) -> Formula:
    """∀ȳ ¬(⋀ relators(ȳ) ∧ ⋀ xᵢ = tᵢ(ȳ)), ȳ = x_{n+1}..x_{2n}."""
    n = s.presentation.generator_count
    equations = [
        Formula.atomic(AtomicFormula.equality(Term.var(i), t.shift(n)))
        for i, t in enumerate(terms, start=1)
    ]
    body = Formula.conjunction(*relator_formulas(s.presentation, offset=n), *equations)
    return Formula.forall(range(n + 1, 2 * n + 1), Formula.negation(body))


def theta_conjunct(s: StructureHandle, entry: XStarEntry) -> ThetaConjunct:
    return ThetaConjunct(
        index=entry.index,
        elements=entry.elements,
        terms=entry.terms,
        formula=conjunct_formula(s, entry.terms),
    )


def build_theta(
    s: StructureHandle,
    ap: AutPresentation,
    max_conjuncts: int,
    resume: Optional[ThetaPrefix] = None,
    budget: Optional[int] = None,
    jobs: int = DEFAULT_JOBS,
) -> ThetaPrefix:
    """
    ψ followed by the conjuncts of the first `max_conjuncts` X_* tuples. A prefix
    passed as `resume` is extended from its cursor.
    """
    prefix = resume or ThetaPrefix(psi=build_psi(s.presentation))
    wanted = max_conjuncts - prefix.cursor
    if wanted <= 0:
        return ThetaPrefix(prefix.psi, prefix.conjuncts[:max_conjuncts])
    stream = enumerate_xstar(s, ap, budget=budget, start=prefix.cursor, jobs=jobs)
    added = tuple(theta_conjunct(s, entry) for entry in islice(stream, wanted))
    logger.info(f"Θ prefix extended from {prefix.cursor} to {prefix.cursor + len(added)} conjuncts")
    return ThetaPrefix(prefix.psi, prefix.conjuncts + added)


def assemble_scott(
    s: StructureHandle,
    ap: AutPresentation,
    max_conjuncts: int = 0,
    max_terms: int = 0,
    resume: Optional[ThetaPrefix] = None,
    jobs: int = DEFAULT_JOBS,
) -> ScottSentence:
    """
    σ = ∃x̄ Θ(x̄) ∧ ∀x̄∀y (¬Θ(x̄) ∨ ⋁_t y = t(x̄)), the disjunction running over
    the term enumeration.
    """
    theta = build_theta(s, ap, max_conjuncts, resume=resume, jobs=jobs)
    n = s.presentation.generator_count
    x_bar = range(1, n + 1)
    y = Term.var(2 * n + 1)
    terms = list(islice(enumerate_terms(s.signature, n, TERM_SEARCH_MAX_SIZE), max_terms))
    closure = Formula.ce_or(
        TERMS_PRODUCER,
        [Formula.atomic(AtomicFormula.equality(y, t)) for t in terms],
    )
    sigma2 = Formula.exists(x_bar, theta.formula)
    pi2 = Formula.forall(
        list(x_bar) + [2 * n + 1],
        Formula.disjunction(Formula.negation(theta.formula), closure),
    )
    sentence = ScottSentence(theta=theta, sigma2=sigma2, pi2=pi2, term_cursor=len(terms))
    logger.info(f"Scott sentence assembled ({ASSEMBLY}), class {classify(sentence.formula).tag}")
    return sentence


# --------------------------
# Model checking
# --------------------------
def _max_variable(f: Formula) -> int:
    found = max(f.atom.variables, default=0) if f.kind == FormulaKind.atomic else 0
    for v in f.variables:
        found = max(found, v)
    for child in f.children:
        found = max(found, _max_variable(child))
    return found


class _Evaluator:
    """Evaluates formulas with quantifiers ranging over a fixed finite domain."""

    def __init__(self, s: StructureHandle, domain: Sequence[ElementId]):
        self.s = s
        self.domain = list(domain)

    def holds(self, f: Formula, env: List[Optional[ElementId]]) -> bool:
        kind = f.kind
        if kind == FormulaKind.true:
            return True
        if kind == FormulaKind.false:
            return False
        if kind == FormulaKind.atomic:
            return holds_atom(self.s, f.atom, env)
        if kind == FormulaKind.negation:
            return not self.holds(f.body, env)
        if kind in (FormulaKind.conjunction, FormulaKind.ce_and):
            return all(self.holds(c, env) for c in f.children)
        if kind in (FormulaKind.disjunction, FormulaKind.ce_or):
            return any(self.holds(c, env) for c in f.children)
        if kind == FormulaKind.exists:
            return self.witness(f, env, True) is not None
        return self.witness(f, env, False) is None

    def witness(self, f: Formula, env: List[Optional[ElementId]], target: bool) -> Optional[GeneratorTuple]:
        """The first assignment of the bound variables giving the body the value `target`."""
        saved = [env[v - 1] for v in f.variables]
        try:
            for values in product(self.domain, repeat=len(f.variables)):
                for v, value in zip(f.variables, values):
                    env[v - 1] = value
                if self.holds(f.body, env) == target:
                    return values
            return None
        finally:
            for v, value in zip(f.variables, saved):
                env[v - 1] = value


def _members(f: Formula) -> List[Tuple[Optional[int], Formula]]:
    """Top-level conjunction members; c.e. members carry their stream index."""
    if f.kind == FormulaKind.conjunction:
        found = []
        for child in f.children:
            found.extend(_members(child))
        return found
    if f.kind == FormulaKind.ce_and:
        return [(k, child) for k, child in enumerate(f.children)]
    return [(None, f)]


def _environment(f: Formula, assignment: Sequence[ElementId]) -> List[Optional[ElementId]]:
    env: List[Optional[ElementId]] = list(assignment)
    env.extend([None] * max(0, _max_variable(f) - len(env)))
    return env


def _check(s: StructureHandle, f: Formula, domain, assignment, exact: bool, depth: Optional[int]) -> Verdict:
    evaluator = _Evaluator(s, domain)
    env = _environment(f, assignment)
    unresolved = []
    for position, (index, member) in enumerate(_members(f)):
        if evaluator.holds(member, env):
            continue
        witness = None
        if member.kind == FormulaKind.forall:
            witness = evaluator.witness(member, env, False)
        if exact or is_pi1(member):
            kind = CheckKind.refuted if (witness is not None or member.is_quantifier_free) else CheckKind.exact_false
            return Verdict(kind, depth=depth, conjunct=index, witness=witness if witness is not None else ())
        unresolved.append(position)
    if exact:
        return Verdict(CheckKind.exact_true, depth=depth)
    return Verdict(CheckKind.holds_so_far, depth=depth, unresolved=tuple(unresolved))


def check_bounded(
    f: Formula,
    target: StructureHandle,
    depth: int,
    assignment: Sequence[ElementId] = (),
) -> Verdict:
    """
    Quantifiers range over the elements of length <= depth. A failing Π₁ member
    is a genuine refutation; other failures stay unresolved. When the depth covers
    a finite target the verdict is exact.
    """
    domain = enumerate_elements(target, depth)
    exact = target.is_finite() and len(domain) == len(target.all_elements())
    return _check(target, f, domain, assignment, exact, depth)


def eval_on_finite(f: Formula, target: StructureHandle, assignment: Sequence[ElementId] = ()) -> bool:
    if not target.is_finite():
        raise NotFiniteError(f"{target.kind} target is infinite; use bounded checking")
    domain = sorted(target.all_elements(), key=target.sort_key)
    return _Evaluator(target, domain).holds(f, _environment(f, assignment))


def confirm_in_orbit(
    s: StructureHandle,
    ap: AutPresentation,
    f: Formula,
    b: Sequence[ElementId],
    depth: int,
    jobs: int = DEFAULT_JOBS,
) -> Verdict:
    """A bounded check of Θ at b̄ upgraded to exact-true when b̄ lies in the orbit of ā."""
    verdict = check_bounded(f, s, depth, b)
    if verdict.kind != CheckKind.holds_so_far:
        return verdict
    if orbit_decide(s, ap, b, jobs=jobs).in_orbit:
        return Verdict(CheckKind.exact_true, depth=depth)
    return verdict


def refutes_with(s: StructureHandle, conjunct: ThetaConjunct, x: Sequence[ElementId], y: Sequence[ElementId]) -> bool:
    """The conjunct fails at x̄ with ȳ witnessing the failure."""
    if conjunct.formula.kind != FormulaKind.forall:
        raise PreconditionError("Θ conjuncts are universal formulas")
    evaluator = _Evaluator(s, [])
    env = _environment(conjunct.formula, list(x) + list(y))
    return evaluator.holds(conjunct.formula.body.body, env)
