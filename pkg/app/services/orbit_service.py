# --------------------------
# File: app/services/orbit_service.py
# Description: Automorphism balls, orbit decisions and the X_* enumeration
# --------------------------

import threading
import weakref
from dataclasses import dataclass
from itertools import product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from app.core.config import DEFAULT_JOBS, ORBIT_MAX_TUPLES
from app.core.errors import (
    AutomorphismValidationError, BudgetExceededError, PreconditionError, WorkbenchError,
)
from app.models.automorphism_models import (
    AffineBound, AutomorphismSpec, AutomorphismWord, AutPresentation, Letter, OrbitVerdict, VerdictKind,
)
from app.models.logic_models import Term
from app.models.structure_models import ElementId, GeneratorTuple, GroupStructure, StructureHandle
from app.services.structure_service import (
    enumerate_elements, find_terms_for, relators_hold, satisfies_psi, tuple_lengths,
)
from app.utils.logger import get_logger
from app.utils.parallel import ordered_map

logger = get_logger(__name__)


# --------------------------
# Letters and words
# --------------------------
def letter_images(ap: AutPresentation, letter: Letter) -> GeneratorTuple:
    index, sign = letter
    spec = ap.gens[index]
    return spec.images if sign > 0 else spec.inverse_images


def act(s: StructureHandle, current: GeneratorTuple, images: GeneratorTuple) -> GeneratorTuple:
    """(α ∘ g)(ā) from α(ā) = current and g(ā) = images."""
    return tuple(s.substitute(current, x) for x in images)


def evaluate_word(s: StructureHandle, ap: AutPresentation, word: AutomorphismWord) -> GeneratorTuple:
    current = tuple(s.generators)
    for letter in word.letters:
        current = act(s, current, letter_images(ap, letter))
    return current


def alphabet(ap: AutPresentation) -> List[Letter]:
    letters: List[Letter] = []
    for i, spec in enumerate(ap.gens):
        letters.append((i, 1))
        if spec.inverse_images != spec.images:
            letters.append((i, -1))
    return letters


# --------------------------
# Validation
# --------------------------
def validate_automorphism(s: StructureHandle, spec: AutomorphismSpec) -> AutomorphismSpec:
    """
    Relators hold of the images, and the inverse images invert the map on ā from
    both sides.
    """
    n = len(s.generators)
    if len(spec.images) != n or len(spec.inverse_images) != n:
        raise AutomorphismValidationError(f"'{spec.name}' must give {n} images and {n} inverse images")
    if not relators_hold(s, spec.images):
        raise AutomorphismValidationError(f"'{spec.name}': images violate a relator")
    if not relators_hold(s, spec.inverse_images):
        raise AutomorphismValidationError(f"'{spec.name}': inverse images violate a relator")
    generators = tuple(s.generators)
    if act(s, spec.images, spec.inverse_images) != generators:
        raise AutomorphismValidationError(f"'{spec.name}': inverse images are not a left inverse")
    if act(s, spec.inverse_images, spec.images) != generators:
        raise AutomorphismValidationError(f"'{spec.name}': inverse images are not a right inverse")
    return spec


# --------------------------
# Orbit balls
# --------------------------
class OrbitBall:
    """
    Breadth-first layers of image tuples α(ā) with a shortest witness word each.
    With a threshold, only tuples whose maximal element length is within it are kept.
    """

    def __init__(self, s: StructureHandle, ap: AutPresentation, threshold: Optional[int] = None):
        self.s = s
        self.ap = ap
        self.threshold = threshold
        start = tuple(s.generators)
        self.seen: Dict[GeneratorTuple, AutomorphismWord] = {start: AutomorphismWord()}
        self.layers: List[List[GeneratorTuple]] = [[start]]
        self.letters = alphabet(ap)
        self.lock = threading.Lock()

    @property
    def radius(self) -> int:
        return len(self.layers) - 1

    @property
    def exhausted(self) -> bool:
        return not self.layers[-1]

    def _admissible(self, t: GeneratorTuple) -> bool:
        if self.threshold is None:
            return True
        return max(self.s.element_length(x) for x in t) <= self.threshold

    def _expand(self, chunk: Sequence[GeneratorTuple]) -> List[Tuple[GeneratorTuple, Letter, GeneratorTuple]]:
        steps = []
        for t in chunk:
            for letter in self.letters:
                nxt = act(self.s, t, letter_images(self.ap, letter))
                if self._admissible(nxt):
                    steps.append((t, letter, nxt))
        return steps

    def extend_to(self, radius: int, stop_at: Optional[GeneratorTuple] = None, jobs: int = DEFAULT_JOBS) -> None:
        with self.lock:
            while self.radius < radius and not self.exhausted:
                if stop_at is not None and stop_at in self.seen:
                    return
                steps = ordered_map(self._expand, self.layers[-1], jobs)
                layer = []
                for parent, letter, nxt in steps:
                    if nxt not in self.seen:
                        self.seen[nxt] = self.seen[parent].extended(letter)
                        layer.append(nxt)
                if len(self.seen) > ORBIT_MAX_TUPLES:
                    logger.warning(f"Orbit ball reached {len(self.seen)} tuples at radius {self.radius + 1}")
                    raise BudgetExceededError(
                        f"Orbit search exceeds {ORBIT_MAX_TUPLES} tuples at radius {self.radius + 1}"
                    )
                self.layers.append(layer)
                logger.debug(f"Orbit ball radius {self.radius}: {len(layer)} new tuples")

    def lookup(self, t: GeneratorTuple) -> Optional[AutomorphismWord]:
        return self.seen.get(tuple(t))

    def within(self, radius: int) -> Iterator[Tuple[GeneratorTuple, AutomorphismWord]]:
        for layer in self.layers[: radius + 1]:
            for t in layer:
                yield t, self.seen[t]


_balls: "weakref.WeakKeyDictionary[StructureHandle, Dict[Tuple[AutPresentation, Optional[int]], OrbitBall]]"
_balls = weakref.WeakKeyDictionary()
_balls_lock = threading.Lock()


def orbit_ball(s: StructureHandle, ap: AutPresentation, threshold: Optional[int] = None) -> OrbitBall:
    """The shared ball for (structure, presentation, pruning threshold)."""
    with _balls_lock:
        per_structure = _balls.setdefault(s, {})
        key = (ap, threshold)
        if key not in per_structure:
            per_structure[key] = OrbitBall(s, ap, threshold)
        return per_structure[key]


# --------------------------
# Operations
# --------------------------
def enumerate_automorphisms(
    s: StructureHandle,
    ap: AutPresentation,
    max_len: int,
    jobs: int = DEFAULT_JOBS,
) -> Iterator[Tuple[GeneratorTuple, AutomorphismWord]]:
    """Distinct automorphisms (as images of ā) of word length <= max_len, breadth-first."""
    ball = orbit_ball(s, ap)
    ball.extend_to(max_len, jobs=jobs)
    yield from ball.within(max_len)


def orbit_decide(
    s: StructureHandle,
    ap: AutPresentation,
    b: Sequence[ElementId],
    jobs: int = DEFAULT_JOBS,
) -> OrbitVerdict:
    """
    In-orbit iff some word of length <= k = F(lg b₁, ..., lg bₙ) maps ā to b̄.
    """
    b = tuple(b)
    if not satisfies_psi(s, b):
        raise PreconditionError("orbit_decide needs a tuple satisfying ψ")
    lengths = tuple_lengths(s, b)
    k = ap.bound(lengths)
    threshold = None
    if ap.length_monotone:
        threshold = max(lengths + tuple_lengths(s, s.generators))
    ball = orbit_ball(s, ap, threshold)
    ball.extend_to(k, stop_at=b, jobs=jobs)
    word = ball.lookup(b)
    if word is not None and len(word) <= k:
        if evaluate_word(s, ap, word) != b:
            raise WorkbenchError(f"Unsound witness {word.render(ap.names)} does not reach the queried tuple")
        return OrbitVerdict(VerdictKind.in_orbit, bound=k, witness=word, searched=len(ball.seen))
    return OrbitVerdict(VerdictKind.not_in_orbit, bound=k, searched=len(ball.seen))


@dataclass(frozen=True)
class XStarEntry:
    index: int
    elements: GeneratorTuple
    terms: Tuple[Term, ...]


def candidate_tuples(s: StructureHandle, budget: Optional[int] = None) -> Iterator[GeneratorTuple]:
    """
    n-tuples by increasing maximal element length, lexicographic within a level.
    Without a budget the stream ends only when a level brings no new element.
    """
    n = len(s.generators)
    level = 0
    while budget is None or level <= budget:
        pool = enumerate_elements(s, level)
        lengths = {x: s.element_length(x) for x in pool}
        if level > 0 and level not in lengths.values():
            return
        for t in product(pool, repeat=n):
            if max(lengths[x] for x in t) == level:
                yield t
        level += 1


def enumerate_xstar(
    s: StructureHandle,
    ap: AutPresentation,
    budget: Optional[int] = None,
    start: int = 0,
    jobs: int = DEFAULT_JOBS,
) -> Iterator[XStarEntry]:
    """
    X_* tuples with their fixed terms, by increasing maximal element length (at
    most `budget` when given), in a stable order; `start` resumes at that stream
    index.
    """
    index = 0
    for t in candidate_tuples(s, budget):
        if not satisfies_psi(s, t):
            continue
        if orbit_decide(s, ap, t, jobs=jobs).in_orbit:
            continue
        if index >= start:
            terms = find_terms_for(s, t)
            logger.debug(f"X_* entry {index}: {[s.encode(x) for x in t]}")
            yield XStarEntry(index=index, elements=t, terms=terms)
        index += 1


def make_inner_plus_finite(s: StructureHandle, reps: Sequence[AutomorphismSpec]) -> AutPresentation:
    """
    X = conjugations by each generator together with the supplied coset
    representatives; F(m̄) = Σmᵢ + 1. Trivial and repeated automorphisms are dropped
    among the conjugations.
    """
    if not isinstance(s, GroupStructure):
        raise PreconditionError("Inner automorphisms need a group structure")
    generators = tuple(s.generators)
    names = s.generator_names()
    inner = []
    for name, a in zip(names, generators):
        a_inv = s.inverse(a)
        spec = AutomorphismSpec(
            name=f"inn_{name}",
            images=tuple(s.conjugate(a, x) for x in generators),
            inverse_images=tuple(s.conjugate(a_inv, x) for x in generators),
        )
        if not spec.is_identity_on(generators):
            inner.append(spec)
    for rep in reps:
        validate_automorphism(s, rep)

    gens, seen = [], set()
    for spec in inner:
        if spec.images not in seen:
            seen.add(spec.images)
            gens.append(spec)
    gens.extend(reps)
    if not gens:
        gens = [AutomorphismSpec("id", generators, generators)]
    return AutPresentation(gens=tuple(gens), bound=AffineBound.uniform(1, 1, len(generators)))
