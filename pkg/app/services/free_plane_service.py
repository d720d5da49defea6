# --------------------------
# File: app/services/free_plane_service.py
# Description: The free projective plane over four points: lattice operations,
#              incidence, staged materialization and collineations
# --------------------------

import re
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

from app.core.config import PLANE_MAX_STAGE
from app.core.errors import (
    BudgetExceededError, DegenerateImagesError, ParseError, UnknownSymbolError,
)
from app.models.automorphism_models import AffineBound, AutomorphismSpec, AutPresentation
from app.models.logic_models import AtomicFormula, Presentation, Signature, Term
from app.models.plane_models import BASE_POINTS, PlaneKind, PlaneNode, PlaneStore
from app.models.structure_models import StructureHandle
from app.services.orbit_service import validate_automorphism
from app.utils.logger import get_logger

logger = get_logger(__name__)

PLANE_SIGNATURE = Signature(
    constants=("zero", "one"),
    functions=(("join", 2), ("meet", 2)),
    relations=(("S1", 1), ("S2", 1), ("I", 2)),
)


# --------------------------
# Lattice operations
# --------------------------
def incident(store: PlaneStore, x: PlaneNode, y: PlaneNode) -> bool:
    """A point and a line, one created from the other."""
    if not ((x.is_point and y.is_line) or (x.is_line and y.is_point)):
        return False
    return y in store.incident_with(x)


def join(store: PlaneStore, x: PlaneNode, y: PlaneNode) -> PlaneNode:
    if x is y:
        return x
    if x.kind == PlaneKind.bottom:
        return y
    if y.kind == PlaneKind.bottom:
        return x
    if PlaneKind.top in (x.kind, y.kind):
        return store.top
    if x.is_point and y.is_point:
        with store.lock:
            line = store.common(x, y)
            return line if line is not None else store.create(PlaneKind.join, x, y)
    if x.is_line and y.is_line:
        return store.top
    point, line = (x, y) if x.is_point else (y, x)
    return line if incident(store, point, line) else store.top


def meet(store: PlaneStore, x: PlaneNode, y: PlaneNode) -> PlaneNode:
    if x is y:
        return x
    if x.kind == PlaneKind.top:
        return y
    if y.kind == PlaneKind.top:
        return x
    if PlaneKind.bottom in (x.kind, y.kind):
        return store.bottom
    if x.is_line and y.is_line:
        with store.lock:
            point = store.common(x, y)
            return point if point is not None else store.create(PlaneKind.meet, x, y)
    if x.is_point and y.is_point:
        return store.bottom
    point, line = (x, y) if x.is_point else (y, x)
    return point if incident(store, point, line) else store.bottom


def enumerate_stage(store: PlaneStore, k: int) -> List[PlaneNode]:
    """
    Points and lines of stage <= k, materializing the free extension level by
    level: odd stages join every pair of points without a common line, even
    stages meet every pair of lines without a common point.
    """
    if k > PLANE_MAX_STAGE:
        logger.warning(f"Plane stage {k} requested, limit is {PLANE_MAX_STAGE}")
        raise BudgetExceededError(f"Plane materialization is capped at stage {PLANE_MAX_STAGE}")
    elements = list(store.base)
    for stage in range(1, k + 1):
        points = [x for x in elements if x.is_point]
        lines = [x for x in elements if x.is_line]
        pool, op = (points, join) if stage % 2 else (lines, meet)
        created, seen = [], set()
        for x, y in combinations(pool, 2):
            made = op(store, x, y)
            if made.stage == stage and made not in seen:
                seen.add(made)
                created.append(made)
        elements.extend(created)
        logger.debug(f"Plane stage {stage}: {len(created)} new elements")
    return sorted(elements, key=PlaneNode.sort_key)


# --------------------------
# Collineations
# --------------------------
class Collineation:
    """The extension of A1, A2, B1, B2 ↦ images by structural recursion."""

    def __init__(self, store: PlaneStore, images: Sequence[PlaneNode]):
        self.store = store
        self.images = tuple(images)
        self._memo: Dict[PlaneNode, PlaneNode] = {store.bottom: store.bottom, store.top: store.top}
        for base, image in zip(store.base, self.images):
            self._memo[base] = image

    def __call__(self, x: PlaneNode) -> PlaneNode:
        found = self._memo.get(x)
        if found is None:
            first, second = (self(c) for c in x.children)
            op = join if x.kind == PlaneKind.join else meet
            found = op(self.store, first, second)
            self._memo[x] = found
        return found


def check_quadrangle(store: PlaneStore, images: Sequence[PlaneNode]) -> None:
    if len(images) != 4 or not all(x.is_point for x in images):
        raise DegenerateImagesError("A collineation needs four point images")
    if len(set(images)) != 4:
        raise DegenerateImagesError("Point images must be pairwise distinct")
    for a, b, c in combinations(images, 3):
        if incident(store, c, join(store, a, b)):
            raise DegenerateImagesError(f"Images {a}, {b}, {c} are collinear")


def extend_collineation(store: PlaneStore, images: Sequence[PlaneNode]) -> Collineation:
    check_quadrangle(store, images)
    return Collineation(store, images)


# --------------------------
# Element syntax
# --------------------------
TOKEN = re.compile(r"\s*(A1|A2|B1|B2|0|1|v|\^|\(|\))")


def _tokens(text: str) -> List[Tuple[str, int]]:
    found, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = TOKEN.match(text, pos)
        if not match:
            raise ParseError(f"Unexpected input {text[pos:].strip()[:8]!r}", pos)
        found.append((match.group(1), match.start(1)))
        pos = match.end()
    return found


class _ElementParser:
    """`v` is join, `^` is meet and binds tighter; both associate to the left."""

    def __init__(self, plane: "FreePlane", text: str):
        self.plane = plane
        self.text = text
        self.tokens = _tokens(text)
        self.index = 0

    def peek(self):
        return self.tokens[self.index][0] if self.index < len(self.tokens) else None

    def take(self):
        token = self.tokens[self.index]
        self.index += 1
        return token

    def parse(self) -> PlaneNode:
        node = self.joins()
        if self.peek() is not None:
            token, pos = self.tokens[self.index]
            raise ParseError(f"Unexpected trailing {token!r}", pos)
        return node

    def joins(self) -> PlaneNode:
        node = self.meets()
        while self.peek() == "v":
            self.take()
            node = join(self.plane.store, node, self.meets())
        return node

    def meets(self) -> PlaneNode:
        node = self.atom()
        while self.peek() == "^":
            self.take()
            node = meet(self.plane.store, node, self.atom())
        return node

    def atom(self) -> PlaneNode:
        if self.peek() is None:
            raise ParseError("Expression ended early", len(self.text))
        token, pos = self.take()
        if token == "(":
            node = self.joins()
            if self.peek() != ")":
                raise ParseError("Expected ')'", pos)
            self.take()
            return node
        if token in BASE_POINTS:
            return self.plane.store.base[BASE_POINTS.index(token)]
        if token == "0":
            return self.plane.store.bottom
        if token == "1":
            return self.plane.store.top
        raise ParseError(f"Unexpected {token!r}", pos)


# --------------------------
# Structure
# --------------------------
class FreePlane(StructureHandle):
    kind = "free_plane_4"
    length_convention = "stage of first appearance in the free extension"

    def __init__(self):
        super().__init__({"type": "free_plane_4"})
        self.store = PlaneStore()
        relators = tuple(AtomicFormula("S1", (Term.var(i),)) for i in range(1, 5))
        self._presentation = Presentation(PLANE_SIGNATURE, 4, relators)

    @property
    def signature(self) -> Signature:
        return PLANE_SIGNATURE

    @property
    def presentation(self) -> Presentation:
        return self._presentation

    @property
    def generators(self):
        return self.store.base

    def constant(self, name: str) -> PlaneNode:
        if name == "zero":
            return self.store.bottom
        if name == "one":
            return self.store.top
        raise UnknownSymbolError(f"Unknown constant '{name}'")

    def apply(self, name: str, args: Sequence[PlaneNode]) -> PlaneNode:
        if name == "join":
            return join(self.store, args[0], args[1])
        if name == "meet":
            return meet(self.store, args[0], args[1])
        raise UnknownSymbolError(f"Unknown function symbol '{name}'")

    def relation(self, name: str, args: Sequence[PlaneNode]) -> bool:
        if name == "S1":
            return args[0].is_point
        if name == "S2":
            return args[0].is_line
        if name == "I":
            return incident(self.store, args[0], args[1])
        return super().relation(name, args)

    def substitute(self, images: Sequence[PlaneNode], element: PlaneNode) -> PlaneNode:
        return Collineation(self.store, images)(element)

    def element_length(self, element: PlaneNode) -> int:
        return element.stage

    def ball(self, max_length: int) -> List[PlaneNode]:
        return [self.store.bottom, self.store.top] + enumerate_stage(self.store, max_length)

    def sort_key(self, element: PlaneNode):
        return element.sort_key()

    def encode(self, element: PlaneNode) -> str:
        return element.text

    def parse_element(self, text: str) -> PlaneNode:
        return _ElementParser(self, text).parse()

    def notes(self) -> List[str]:
        return [
            "the free projective plane over four points is quasi-Hopfian but not Hopfian",
            "ψ uses the relators S1(x1), ..., S1(x4); the full finite relator set of the lattice language is not listed",
        ]


def free_plane() -> FreePlane:
    return FreePlane()


def diagonal_points(plane: FreePlane) -> Tuple[PlaneNode, PlaneNode]:
    """a1 = (A1 v A2) ^ (B1 v B2) and a2 = (A1 v B2) ^ (A2 v B1)."""
    s = plane.store
    a1_, a2_, b1_, b2_ = s.base
    a1 = meet(s, join(s, a1_, a2_), join(s, b1_, b2_))
    a2 = meet(s, join(s, a1_, b2_), join(s, a2_, b1_))
    return a1, a2


def plane_collineations(plane: FreePlane) -> List[AutomorphismSpec]:
    """θ₁ = (A1 A2), θ₂ = (A1 A2 B1 B2) and the involution φ."""
    A1, A2, B1, B2 = plane.store.base
    a1, a2 = diagonal_points(plane)
    specs = [
        AutomorphismSpec("theta1", (A2, A1, B1, B2), (A2, A1, B1, B2)),
        AutomorphismSpec("theta2", (A2, B1, B2, A1), (B2, A1, A2, B1)),
        AutomorphismSpec("phi", (A1, a1, B1, a2), (A1, a1, B1, a2)),
    ]
    for spec in specs:
        check_quadrangle(plane.store, spec.images)
        validate_automorphism(plane, spec)
    return specs


def plane_aut_presentation(plane: FreePlane) -> AutPresentation:
    """X = {θ₁, θ₂, φ}, F(m̄) = Σ 2(mᵢ + 1)."""
    return AutPresentation(gens=tuple(plane_collineations(plane)), bound=AffineBound.uniform(8, 2, 4))


def census(plane: FreePlane, k: int) -> List[Dict[str, int]]:
    """New points and lines per stage up to k."""
    rows = []
    elements = enumerate_stage(plane.store, k)
    for stage in range(k + 1):
        at = [x for x in elements if x.stage == stage]
        rows.append({
            "stage": stage,
            "points": sum(1 for x in at if x.is_point),
            "lines": sum(1 for x in at if x.is_line),
        })
    return rows
