# app/models/automorphism_models.py
import enum
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from app.models.structure_models import GeneratorTuple

Letter = Tuple[int, int]


@dataclass(frozen=True)
class AutomorphismSpec:
    """An automorphism given by the images of ā and the images of ā under its inverse."""
    name: str
    images: GeneratorTuple
    inverse_images: GeneratorTuple

    def is_identity_on(self, generators: GeneratorTuple) -> bool:
        return tuple(self.images) == tuple(generators)


@dataclass(frozen=True)
class AffineBound:
    """F(m̄) = c₀ + Σ cᵢmᵢ"""
    constant: int
    coefficients: Tuple[int, ...]

    def __post_init__(self):
        if self.constant < 0 or any(c < 0 for c in self.coefficients):
            raise ValueError("Bound coefficients must be non-negative")
        if self.constant == 0 and not any(self.coefficients):
            raise ValueError("Bound coefficients cannot all be zero")

    @classmethod
    def uniform(cls, constant: int, coefficient: int, arity: int) -> "AffineBound":
        return cls(constant, (coefficient,) * arity)

    def __call__(self, lengths: Sequence[int]) -> int:
        if len(lengths) != len(self.coefficients):
            raise ValueError(f"Bound takes {len(self.coefficients)} lengths, got {len(lengths)}")
        return self.constant + sum(c * m for c, m in zip(self.coefficients, lengths))

    def describe(self) -> str:
        terms = [str(self.constant)] if self.constant else []
        terms += [f"{c}*m{i}" for i, c in enumerate(self.coefficients, start=1) if c]
        return " + ".join(terms)


@dataclass(frozen=True)
class AutPresentation:
    """
    A finite generating set X of Aut(A) with the bound F of condition (⋆).
    `length_monotone` declares that every orbit tuple is reachable from ā through
    tuples whose maximal element length stays within the target's.
    """
    gens: Tuple[AutomorphismSpec, ...]
    bound: AffineBound
    length_monotone: bool = False

    def __post_init__(self):
        if not self.gens:
            raise ValueError("An automorphism presentation needs at least one generator")

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(g.name for g in self.gens)


@dataclass(frozen=True)
class AutomorphismWord:
    """α₁^{±1} ∘ ⋯ ∘ α_m^{±1} as (generator index, ±1) letters."""
    letters: Tuple[Letter, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    def extended(self, letter: Letter) -> "AutomorphismWord":
        return AutomorphismWord(self.letters + (letter,))

    def render(self, names: Sequence[str]) -> str:
        parts = [names[i] if sign > 0 else f"{names[i]}^-1" for i, sign in self.letters]
        return "[" + ", ".join(parts) + "]"


class VerdictKind(str, enum.Enum):
    in_orbit = "in-orbit"
    not_in_orbit = "not-in-orbit"


@dataclass(frozen=True)
class OrbitVerdict:
    kind: VerdictKind
    bound: int
    witness: Optional[AutomorphismWord] = None
    searched: int = 0

    @property
    def in_orbit(self) -> bool:
        return self.kind == VerdictKind.in_orbit
