# app/models/scott_models.py
import enum
from dataclasses import dataclass, field
from typing import Optional, Tuple

from app.models.logic_models import Formula, Term
from app.models.structure_models import GeneratorTuple

XSTAR_PRODUCER = "xstar"
TERMS_PRODUCER = "terms"
ASSEMBLY = "alvir-adopted"


@dataclass(frozen=True)
class ThetaConjunct:
    """∀ȳ ¬(⋀ relators(ȳ) ∧ ⋀ xᵢ = tᵢ(ȳ)) for one X_* tuple."""
    index: int
    elements: GeneratorTuple
    terms: Tuple[Term, ...]
    formula: Formula


@dataclass(frozen=True)
class ThetaPrefix:
    psi: Formula
    conjuncts: Tuple[ThetaConjunct, ...] = ()

    @property
    def cursor(self) -> int:
        return len(self.conjuncts)

    @property
    def formula(self) -> Formula:
        """Θ(x̄) = ψ(x̄) ∧ ⋀ conjuncts, the conjunction kept as a c.e. node."""
        return Formula.conjunction(
            self.psi,
            Formula.ce_and(XSTAR_PRODUCER, [c.formula for c in self.conjuncts]),
        )


@dataclass(frozen=True)
class ScottSentence:
    theta: ThetaPrefix
    sigma2: Formula
    pi2: Formula
    term_cursor: int

    @property
    def formula(self) -> Formula:
        return Formula.conjunction(self.sigma2, self.pi2)


class CheckKind(str, enum.Enum):
    holds_so_far = "holds-so-far"
    refuted = "refuted"
    exact_true = "exact-true"
    exact_false = "exact-false"


@dataclass(frozen=True)
class Verdict:
    kind: CheckKind
    depth: Optional[int] = None
    conjunct: Optional[int] = None          # X_* index of the failing conjunct; None for ψ or a non-Θ member
    witness: Optional[GeneratorTuple] = None
    unresolved: Tuple[int, ...] = field(default_factory=tuple)

    @property
    def refuted(self) -> bool:
        return self.kind in (CheckKind.refuted, CheckKind.exact_false)
