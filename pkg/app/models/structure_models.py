# app/models/structure_models.py
import threading
from abc import ABC, abstractmethod
from typing import Any, Dict, Hashable, List, Sequence, Tuple

from app.core.config import ENUMERATION_MAX_ELEMENTS
from app.core.errors import BudgetExceededError, NotFiniteError, UnknownSymbolError
from app.models.logic_models import GROUP_SIGNATURE, Presentation, Signature
from app.utils.hashing import config_hash

# Canonical element encodings: equal elements are equal (and equally hashed) values.
ElementId = Hashable
GeneratorTuple = Tuple[ElementId, ...]


class StructureHandle(ABC):
    """
    A computable structure: canonical elements, total operations, decidable
    equality, a generating tuple ā and a length function.
    """
    kind: str = ""
    length_convention: str = ""

    def __init__(self, config: Dict[str, Any]):
        self.config = config

    # --------------------------
    # Shape
    # --------------------------
    @property
    @abstractmethod
    def signature(self) -> Signature: ...

    @property
    @abstractmethod
    def presentation(self) -> Presentation: ...

    @property
    @abstractmethod
    def generators(self) -> GeneratorTuple: ...

    @property
    def config_hash(self) -> str:
        return config_hash(self.config)

    def generator_names(self) -> List[str]:
        return [self.encode(g) for g in self.generators]

    # --------------------------
    # Interpretation
    # --------------------------
    @abstractmethod
    def constant(self, name: str) -> ElementId: ...

    @abstractmethod
    def apply(self, name: str, args: Sequence[ElementId]) -> ElementId: ...

    def relation(self, name: str, args: Sequence[ElementId]) -> bool:
        raise UnknownSymbolError(f"Unknown relation symbol '{name}'")

    def equal(self, x: ElementId, y: ElementId) -> bool:
        return x == y

    @abstractmethod
    def substitute(self, images: Sequence[ElementId], element: ElementId) -> ElementId:
        """Apply the homomorphism determined by aᵢ ↦ imagesᵢ to `element`."""

    # --------------------------
    # Length and enumeration
    # --------------------------
    @abstractmethod
    def element_length(self, element: ElementId) -> int: ...

    @abstractmethod
    def ball(self, max_length: int) -> List[ElementId]:
        """Every element of length <= max_length, each once, in any order."""

    def is_finite(self) -> bool:
        return False

    def all_elements(self) -> List[ElementId]:
        raise NotFiniteError(f"{self.kind} structure is infinite")

    # --------------------------
    # Text
    # --------------------------
    @abstractmethod
    def encode(self, element: ElementId) -> str:
        """Canonical text of an element; the tie-breaker of the element order."""

    @abstractmethod
    def parse_element(self, text: str) -> ElementId: ...

    def sort_key(self, element: ElementId):
        return self.element_length(element), self.encode(element)

    def notes(self) -> List[str]:
        return []


class GroupStructure(StructureHandle):
    """
    Groups in the signature (e, mul, inv). Subclasses give canonical normal forms
    and a spelling of each element over the generators; lengths and balls default
    to breadth-first growth over S ∪ S⁻¹.
    """
    length_convention = "geodesic word length over generators and inverses"

    def __init__(self, config: Dict[str, Any]):
        super().__init__(config)
        self._layers: List[List[ElementId]] = []
        self._depth: Dict[ElementId, int] = {}
        self._ball_lock = threading.Lock()

    @property
    def signature(self) -> Signature:
        return GROUP_SIGNATURE

    @abstractmethod
    def identity(self) -> ElementId: ...

    @abstractmethod
    def multiply(self, x: ElementId, y: ElementId) -> ElementId: ...

    @abstractmethod
    def inverse(self, x: ElementId) -> ElementId: ...

    @abstractmethod
    def letters(self, element: ElementId) -> List[Tuple[int, int]]:
        """A spelling of `element` as (generator index from 0, ±1) letters."""

    def power(self, x: ElementId, k: int) -> ElementId:
        result = self.identity()
        base = x if k >= 0 else self.inverse(x)
        for _ in range(abs(k)):
            result = self.multiply(result, base)
        return result

    def conjugate(self, s: ElementId, t: ElementId) -> ElementId:
        """s t s⁻¹"""
        return self.multiply(self.multiply(s, t), self.inverse(s))

    def constant(self, name: str) -> ElementId:
        if name != "e":
            raise UnknownSymbolError(f"Unknown constant '{name}'")
        return self.identity()

    def apply(self, name: str, args: Sequence[ElementId]) -> ElementId:
        if name == "mul":
            return self.multiply(args[0], args[1])
        if name == "inv":
            return self.inverse(args[0])
        raise UnknownSymbolError(f"Unknown function symbol '{name}'")

    def substitute(self, images: Sequence[ElementId], element: ElementId) -> ElementId:
        result = self.identity()
        inverses: Dict[int, ElementId] = {}
        for index, sign in self.letters(element):
            if sign > 0:
                factor = images[index]
            else:
                if index not in inverses:
                    inverses[index] = self.inverse(images[index])
                factor = inverses[index]
            result = self.multiply(result, factor)
        return result

    # --------------------------
    # Breadth-first balls
    # --------------------------
    def _grow(self, radius: int) -> None:
        with self._ball_lock:
            if not self._layers:
                e = self.identity()
                self._layers.append([e])
                self._depth[e] = 0
            steps = list(self.generators) + [self.inverse(g) for g in self.generators]
            while len(self._layers) <= radius and self._layers[-1]:
                layer = []
                for x in self._layers[-1]:
                    for step in steps:
                        y = self.multiply(x, step)
                        if y not in self._depth:
                            self._depth[y] = len(self._layers)
                            layer.append(y)
                if len(self._depth) > ENUMERATION_MAX_ELEMENTS:
                    raise BudgetExceededError(
                        f"Ball of radius {len(self._layers)} exceeds {ENUMERATION_MAX_ELEMENTS} elements"
                    )
                self._layers.append(layer)

    def ball(self, max_length: int) -> List[ElementId]:
        self._grow(max_length)
        found = []
        for layer in self._layers[: max_length + 1]:
            found.extend(layer)
        return found

    def bfs_length(self, element: ElementId) -> int:
        """Geodesic length by ball growth; terminates because S generates."""
        radius = 0
        while True:
            self._grow(radius)
            if element in self._depth:
                return self._depth[element]
            if not self._layers[-1]:
                raise ValueError(f"{self.encode(element)} is not in the group")
            radius += 1

    def element_length(self, element: ElementId) -> int:
        return self.bfs_length(element)

    def all_elements(self) -> List[ElementId]:
        if not self.is_finite():
            raise NotFiniteError(f"{self.kind} structure is infinite")
        while not self._layers or self._layers[-1]:
            self._grow(len(self._layers))
        return self.ball(len(self._layers) - 1)
