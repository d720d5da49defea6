# --------------------------
# File: app/services/classical_group_service.py
# Description: Free abelian and free groups, their automorphism presentations and
#              the determinant and Nielsen-reduction oracles
# --------------------------

from itertools import permutations, product
from typing import List, Optional, Sequence, Tuple

from sympy import Matrix
from sympy.combinatorics.free_groups import FreeGroupElement, free_group as sympy_free_group

from app.core.errors import ArityError, ParseError, UnknownSymbolError
from app.models.automorphism_models import AffineBound, AutomorphismSpec, AutPresentation
from app.models.logic_models import GROUP_SIGNATURE, AtomicFormula, Presentation
from app.models.structure_models import GroupStructure
from app.services.orbit_service import validate_automorphism
from app.services.term_service import word_term
from app.utils.logger import get_logger
from app.utils.word_syntax import format_syllables, format_vector, parse_syllables, parse_vector

logger = get_logger(__name__)

IntVector = Tuple[int, ...]
FREE_GROUP_LETTERS = "abcdfghijklmnopqrstuvwxyz"


# --------------------------
# ℤⁿ
# --------------------------
class FreeAbelianGroup(GroupStructure):
    kind = "free_abelian"
    length_convention = "L1 norm (geodesic in the standard Cayley graph)"

    def __init__(self, rank: int):
        if rank < 1:
            raise ValueError("Rank must be at least 1")
        super().__init__({"type": "free_abelian", "rank": rank})
        self.rank = rank
        self._generators = tuple(
            tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)
        )
        relators = [
            AtomicFormula.equality(word_term([(i, 1), (j, 1)]), word_term([(j, 1), (i, 1)]))
            for i in range(1, rank + 1)
            for j in range(i + 1, rank + 1)
        ]
        self._presentation = Presentation(GROUP_SIGNATURE, rank, tuple(relators))

    @property
    def presentation(self) -> Presentation:
        return self._presentation

    @property
    def generators(self):
        return self._generators

    def identity(self) -> IntVector:
        return (0,) * self.rank

    def multiply(self, x: IntVector, y: IntVector) -> IntVector:
        return tuple(a + b for a, b in zip(x, y))

    def inverse(self, x: IntVector) -> IntVector:
        return tuple(-a for a in x)

    def letters(self, element: IntVector) -> List[Tuple[int, int]]:
        spelled = []
        for i, a in enumerate(element):
            spelled.extend([(i, 1 if a > 0 else -1)] * abs(a))
        return spelled

    def substitute(self, images: Sequence[IntVector], element: IntVector) -> IntVector:
        result = [0] * self.rank
        for coefficient, image in zip(element, images):
            if coefficient:
                for j, a in enumerate(image):
                    result[j] += coefficient * a
        return tuple(result)

    def element_length(self, element: IntVector) -> int:
        return sum(abs(a) for a in element)

    def ball(self, max_length: int) -> List[IntVector]:
        r = max_length
        return [v for v in product(range(-r, r + 1), repeat=self.rank) if sum(map(abs, v)) <= r]

    def encode(self, element: IntVector) -> str:
        return format_vector(element)

    def parse_element(self, text: str) -> IntVector:
        v = parse_vector(text)
        if len(v) != self.rank:
            raise ParseError(f"Expected {self.rank} coordinates, got '{text}'")
        return v

    def notes(self) -> List[str]:
        return [
            "finitely generated abelian groups are Hopfian",
            "the bound F(m) = n^2 + n^2*sum(m) is range-validated against the determinant, not proven",
        ]


def free_abelian(n: int) -> FreeAbelianGroup:
    return FreeAbelianGroup(n)


def det_oracle(vectors: Sequence[IntVector]) -> bool:
    """b̄ is a basis of ℤⁿ iff its integer matrix has determinant ±1."""
    n = len(vectors)
    if any(len(v) != n for v in vectors):
        raise ArityError(f"Expected {n} vectors of dimension {n}")
    return abs(Matrix([list(v) for v in vectors]).det()) == 1


def abelian_aut_presentation(structure: FreeAbelianGroup) -> AutPresentation:
    """
    Swaps (x1 xi), negation of x1 and the transvection x1 ↦ x1 + x2 generate
    GL_n(ℤ). Pruned search is declared for n <= 2, where Euclidean reduction
    never raises the larger norm.
    """
    n = structure.rank
    e = structure.generators
    gens = []
    for i in range(1, n):
        images = list(e)
        images[0], images[i] = e[i], e[0]
        gens.append(AutomorphismSpec(f"swap_1_{i + 1}", tuple(images), tuple(images)))
    negated = (structure.inverse(e[0]),) + e[1:]
    gens.append(AutomorphismSpec("neg_1", negated, negated))
    if n >= 2:
        forward = (structure.multiply(e[0], e[1]),) + e[1:]
        backward = (structure.multiply(e[0], structure.inverse(e[1])),) + e[1:]
        gens.append(AutomorphismSpec("tv_1_2", forward, backward))
    for spec in gens:
        validate_automorphism(structure, spec)
    return AutPresentation(
        gens=tuple(gens),
        bound=AffineBound.uniform(n * n, n * n, n),
        length_monotone=n <= 2,
    )


# --------------------------
# F_n
# --------------------------
class FreeGroup(GroupStructure):
    kind = "free_group"
    length_convention = "freely reduced word length"

    def __init__(self, rank: int):
        if not 1 <= rank <= len(FREE_GROUP_LETTERS):
            raise ValueError(f"Rank must be between 1 and {len(FREE_GROUP_LETTERS)}")
        super().__init__({"type": "free_group", "rank": rank})
        self.rank = rank
        self.names = tuple(FREE_GROUP_LETTERS[:rank])
        group = sympy_free_group(",".join(self.names))
        self.group = group[0]
        self._generators = tuple(group[1:])
        self._index = {str(g): i for i, g in enumerate(self._generators)}
        self._presentation = Presentation(GROUP_SIGNATURE, rank, ())

    @property
    def presentation(self) -> Presentation:
        return self._presentation

    @property
    def generators(self):
        return self._generators

    def identity(self) -> FreeGroupElement:
        return self.group.identity

    def multiply(self, x: FreeGroupElement, y: FreeGroupElement) -> FreeGroupElement:
        return x * y

    def inverse(self, x: FreeGroupElement) -> FreeGroupElement:
        return x ** -1

    def letters(self, element: FreeGroupElement) -> List[Tuple[int, int]]:
        spelled = []
        for symbol, exponent in element.array_form:
            spelled.extend([(self._index[str(symbol)], 1 if exponent > 0 else -1)] * abs(exponent))
        return spelled

    def element_length(self, element: FreeGroupElement) -> int:
        return len(element)

    def encode(self, element: FreeGroupElement) -> str:
        return format_syllables([(str(symbol), exponent) for symbol, exponent in element.array_form])

    def parse_element(self, text: str) -> FreeGroupElement:
        result = self.identity()
        for name, exponent in parse_syllables(text):
            if name not in self._index:
                raise UnknownSymbolError(f"Unknown generator '{name}' in '{text}'")
            result = result * self._generators[self._index[name]] ** exponent
        return result

    def notes(self) -> List[str]:
        return ["finitely generated free groups are Hopfian"]


def free_group(n: int) -> FreeGroup:
    return FreeGroup(n)


def _signed_permutations(structure: FreeGroup) -> List[AutomorphismSpec]:
    n = structure.rank
    x = structure.generators
    specs = []
    for perm in permutations(range(n)):
        for signs in product((1, -1), repeat=n):
            images = tuple(x[perm[i]] ** signs[i] for i in range(n))
            if images == x:
                continue
            inverse_images = [None] * n
            for i in range(n):
                inverse_images[perm[i]] = x[i] ** signs[i]
            name = "sp[" + ",".join(structure.encode(img) for img in images) + "]"
            specs.append(AutomorphismSpec(name, images, tuple(inverse_images)))
    return specs


def _multiplications(structure: FreeGroup) -> List[AutomorphismSpec]:
    n = structure.rank
    x = structure.generators
    specs = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for side in ("r", "l"):
                forward, backward = list(x), list(x)
                if side == "r":
                    forward[i], backward[i] = x[i] * x[j], x[i] * x[j] ** -1
                else:
                    forward[i], backward[i] = x[j] * x[i], x[j] ** -1 * x[i]
                specs.append(AutomorphismSpec(f"{side}{i + 1}{j + 1}", tuple(forward), tuple(backward)))
    return specs


def nielsen_aut_presentation(structure: FreeGroup) -> AutPresentation:
    """
    The elementary Nielsen automorphisms: signed permutations of the basis and
    xᵢ ↦ xᵢxⱼ, xᵢ ↦ xⱼxᵢ. F(m̄) = Σmᵢ. In rank <= 2 Nielsen reduction shortens
    the longer element at every step, so pruned search is declared there.
    """
    gens = _signed_permutations(structure) + _multiplications(structure)
    for spec in gens:
        validate_automorphism(structure, spec)
    return AutPresentation(
        gens=tuple(gens),
        bound=AffineBound.uniform(0, 1, structure.rank),
        length_monotone=structure.rank <= 2,
    )


# --------------------------
# Nielsen reduction
# --------------------------
def _total(words: Sequence[FreeGroupElement]) -> int:
    return sum(len(w) for w in words)


def _product_moves(words: Tuple[FreeGroupElement, ...]):
    """bᵢ ← bᵢbⱼ^ε and bᵢ ← bⱼ^εbᵢ in (i, j, sign, side) order."""
    n = len(words)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for sign in (1, -1):
                factor = words[j] ** sign
                for candidate in (words[i] * factor, factor * words[i]):
                    yield words[:i] + (candidate,) + words[i + 1:]


def _strict_move(words: Tuple[FreeGroupElement, ...]) -> Optional[Tuple[FreeGroupElement, ...]]:
    total = _total(words)
    for moved in _product_moves(words):
        if _total(moved) < total:
            return moved
    return None


def _plateau_escape(words: Tuple[FreeGroupElement, ...]) -> Optional[Tuple[FreeGroupElement, ...]]:
    """Search the equal-length moves for a tuple that admits a strict reduction."""
    total = _total(words)
    seen = {words}
    frontier = [words]
    while frontier:
        following = []
        for current in frontier:
            for moved in _product_moves(current):
                if moved in seen or _total(moved) != total:
                    continue
                reduced = _strict_move(moved)
                if reduced is not None:
                    return reduced
                seen.add(moved)
                following.append(moved)
        frontier = following
    return None


def _is_signed_permutation(structure: FreeGroup, words: Sequence[FreeGroupElement]) -> bool:
    if any(len(w) != 1 for w in words):
        return False
    bases = {str(w.array_form[0][0]) for w in words}
    return bases == set(structure.names)


def nielsen_oracle(structure: FreeGroup, words: Sequence[FreeGroupElement]) -> bool:
    """
    b̄ is a basis iff Nielsen reduction ends in a signed permutation of the
    generators. Strict reductions take the least (i, j, sign) move.
    """
    if len(words) != structure.rank:
        raise ArityError(f"Expected {structure.rank} words, got {len(words)}")
    current = tuple(words)
    while True:
        if any(len(w) == 0 for w in current):
            return False
        reduced = _strict_move(current)
        if reduced is None:
            reduced = _plateau_escape(current)
        if reduced is None:
            return _is_signed_permutation(structure, current)
        current = reduced
