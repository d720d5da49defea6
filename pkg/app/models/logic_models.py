# app/models/logic_models.py
"""
Finite signatures, terms, atomic formulas, presentations and the infinitary
formula AST. Every value here is immutable once built.
"""
import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Optional, Tuple

EQUALITY = "="


# --------------------------
# Signature
# --------------------------
@dataclass(frozen=True)
class Signature:
    constants: Tuple[str, ...] = ()
    functions: Tuple[Tuple[str, int], ...] = ()
    relations: Tuple[Tuple[str, int], ...] = ()

    def __post_init__(self):
        names = list(self.constants) + [n for n, _ in self.functions] + [n for n, _ in self.relations]
        if len(names) != len(set(names)):
            raise ValueError(f"Signature symbol names must be unique: {names}")
        if EQUALITY in names:
            raise ValueError("Equality is a logical symbol and cannot be declared")
        for name, arity in list(self.functions) + list(self.relations):
            if arity < 1:
                raise ValueError(f"Symbol '{name}' must have arity >= 1")

    def function_arity(self, name: str) -> Optional[int]:
        return dict(self.functions).get(name)

    def relation_arity(self, name: str) -> Optional[int]:
        return dict(self.relations).get(name)

    def has_constant(self, name: str) -> bool:
        return name in self.constants


GROUP_SIGNATURE = Signature(constants=("e",), functions=(("mul", 2), ("inv", 1)))


# --------------------------
# Terms
# --------------------------
class TermKind(str, enum.Enum):
    variable = "variable"
    constant = "constant"
    apply = "apply"


@dataclass(frozen=True)
class Term:
    kind: TermKind
    index: int = 0
    name: str = ""
    children: Tuple["Term", ...] = ()

    @classmethod
    def var(cls, index: int) -> "Term":
        if index < 1:
            raise ValueError("Variable indices start at 1")
        return cls(TermKind.variable, index=index)

    @classmethod
    def const(cls, name: str) -> "Term":
        return cls(TermKind.constant, name=name)

    @classmethod
    def apply(cls, name: str, *children: "Term") -> "Term":
        return cls(TermKind.apply, name=name, children=tuple(children))

    @cached_property
    def size(self) -> int:
        """lg(t): the node count."""
        return 1 + sum(child.size for child in self.children)

    @cached_property
    def variables(self) -> FrozenSet[int]:
        if self.kind == TermKind.variable:
            return frozenset((self.index,))
        found = frozenset()
        for child in self.children:
            found = found | child.variables
        return found

    def shift(self, offset: int) -> "Term":
        """Rename every variable x_i to x_{i+offset}."""
        if offset == 0:
            return self
        if self.kind == TermKind.variable:
            return Term.var(self.index + offset)
        if self.kind == TermKind.constant:
            return self
        return Term.apply(self.name, *(c.shift(offset) for c in self.children))

    def substitute(self, mapping: Dict[int, "Term"]) -> "Term":
        if self.kind == TermKind.variable:
            return mapping.get(self.index, self)
        if self.kind == TermKind.constant:
            return self
        return Term.apply(self.name, *(c.substitute(mapping) for c in self.children))

    def __repr__(self):
        if self.kind == TermKind.variable:
            return f"x{self.index}"
        if self.kind == TermKind.constant:
            return self.name
        return f"{self.name}({','.join(repr(c) for c in self.children)})"


# --------------------------
# Atomic formulas and presentations
# --------------------------
@dataclass(frozen=True)
class AtomicFormula:
    relation: str
    terms: Tuple[Term, ...]

    @classmethod
    def equality(cls, left: Term, right: Term) -> "AtomicFormula":
        return cls(EQUALITY, (left, right))

    @property
    def is_equality(self) -> bool:
        return self.relation == EQUALITY

    @property
    def variables(self) -> FrozenSet[int]:
        found = frozenset()
        for term in self.terms:
            found = found | term.variables
        return found

    def shift(self, offset: int) -> "AtomicFormula":
        return AtomicFormula(self.relation, tuple(t.shift(offset) for t in self.terms))


@dataclass(frozen=True)
class Presentation:
    signature: Signature
    generator_count: int
    relators: Tuple[AtomicFormula, ...] = ()

    def __post_init__(self):
        if self.generator_count < 1:
            raise ValueError("A presentation needs at least one generator")
        for relator in self.relators:
            bad = [i for i in relator.variables if i > self.generator_count]
            if bad:
                raise ValueError(
                    f"Relator uses variables {sorted(bad)} outside x1..x{self.generator_count}"
                )


# --------------------------
# Infinitary formulas
# --------------------------
class FormulaKind(str, enum.Enum):
    true = "true"
    false = "false"
    atomic = "atomic"
    negation = "not"
    conjunction = "and"
    disjunction = "or"
    exists = "exists"
    forall = "forall"
    ce_and = "ce_and"
    ce_or = "ce_or"


QUANTIFIERS = (FormulaKind.exists, FormulaKind.forall)
CE_KINDS = (FormulaKind.ce_and, FormulaKind.ce_or)


@dataclass(frozen=True)
class Formula:
    kind: FormulaKind
    atom: Optional[AtomicFormula] = None
    children: Tuple["Formula", ...] = ()
    variables: Tuple[int, ...] = ()
    producer: str = ""
    cursor: int = 0

    def __post_init__(self):
        if self.kind in CE_KINDS and self.cursor != len(self.children):
            raise ValueError("A c.e. node's cursor must equal its materialized prefix length")
        if self.kind in QUANTIFIERS and (not self.variables or len(self.children) != 1):
            raise ValueError("A quantifier binds at least one variable over exactly one body")

    @classmethod
    def top(cls) -> "Formula":
        return cls(FormulaKind.true)

    @classmethod
    def bottom(cls) -> "Formula":
        return cls(FormulaKind.false)

    @classmethod
    def atomic(cls, atom: AtomicFormula) -> "Formula":
        return cls(FormulaKind.atomic, atom=atom)

    @classmethod
    def negation(cls, body: "Formula") -> "Formula":
        return cls(FormulaKind.negation, children=(body,))

    @classmethod
    def conjunction(cls, *members: "Formula") -> "Formula":
        if not members:
            return cls.top()
        return cls(FormulaKind.conjunction, children=tuple(members))

    @classmethod
    def disjunction(cls, *members: "Formula") -> "Formula":
        if not members:
            return cls.bottom()
        return cls(FormulaKind.disjunction, children=tuple(members))

    @classmethod
    def exists(cls, variables: Iterable[int], body: "Formula") -> "Formula":
        return cls(FormulaKind.exists, children=(body,), variables=tuple(variables))

    @classmethod
    def forall(cls, variables: Iterable[int], body: "Formula") -> "Formula":
        return cls(FormulaKind.forall, children=(body,), variables=tuple(variables))

    @classmethod
    def ce_and(cls, producer: str, prefix: Iterable["Formula"] = ()) -> "Formula":
        prefix = tuple(prefix)
        return cls(FormulaKind.ce_and, children=prefix, producer=producer, cursor=len(prefix))

    @classmethod
    def ce_or(cls, producer: str, prefix: Iterable["Formula"] = ()) -> "Formula":
        prefix = tuple(prefix)
        return cls(FormulaKind.ce_or, children=prefix, producer=producer, cursor=len(prefix))

    @property
    def body(self) -> "Formula":
        return self.children[0]

    def materialized(self) -> "Formula":
        """The finite and/or of a c.e. node's first `cursor` members."""
        if self.kind == FormulaKind.ce_and:
            return Formula.conjunction(*self.children)
        if self.kind == FormulaKind.ce_or:
            return Formula.disjunction(*self.children)
        return self

    @cached_property
    def is_quantifier_free(self) -> bool:
        if self.kind in QUANTIFIERS or self.kind in CE_KINDS:
            return False
        return all(child.is_quantifier_free for child in self.children)

    @cached_property
    def free_variables(self) -> FrozenSet[int]:
        if self.kind == FormulaKind.atomic:
            return self.atom.variables
        found = frozenset()
        for child in self.children:
            found = found | child.free_variables
        if self.kind in QUANTIFIERS:
            found = found - frozenset(self.variables)
        return found


@dataclass(frozen=True)
class FormulaClass:
    """Least Σ and Π levels of a formula; 0 means quantifier-free."""
    sigma: int
    pi: int
    tag: str = field(default="")
