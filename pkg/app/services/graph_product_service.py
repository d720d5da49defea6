# --------------------------
# File: app/services/graph_product_service.py
# Description: Graph products of primary cyclic groups: normal forms, lengths,
#              partial conjugations, F(Γ) and the automorphism presentation
# --------------------------

from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from app.core.config import F_GAMMA_MAX_ASSIGNMENTS
from app.core.errors import BudgetExceededError, UnknownSymbolError
from app.models.automorphism_models import AffineBound, AutomorphismSpec, AutPresentation
from app.models.graph_product_models import GPGraph, NormalWord, PartialConjugation
from app.models.logic_models import GROUP_SIGNATURE, AtomicFormula, Presentation, Term
from app.models.structure_models import GroupStructure
from app.services.orbit_service import act, validate_automorphism
from app.services.structure_service import relators_hold
from app.services.term_service import word_term
from app.utils.logger import get_logger
from app.utils.word_syntax import format_syllables, parse_syllables

logger = get_logger(__name__)


# --------------------------
# Normal forms
# --------------------------
def normal_form(g: GPGraph, word: Sequence[Tuple[str, int]]) -> NormalWord:
    """
    Canonical form of a word of (vertex, exponent) syllables.

    One pile per vertex records, in order, the syllables of that vertex (their
    exponent) and a 0 marker for every later syllable of a vertex that does not
    commute with it. A new syllable merges with the top of its pile when that top
    is a syllable; a merge reaching exponent 0 removes the syllable and its markers.
    Reading the piles back front-first, always taking the least vertex name that is
    available, gives the lexicographically least shuffle of the reduced word.
    """
    piles: Dict[str, List[int]] = {v: [] for v in g.vertices}
    blockers = {v: [u for u in g.vertices if u != v and not g.adjacent(u, v)] for v in g.vertices}

    for v, k in word:
        p = g.order(v)
        k %= p
        if k == 0:
            continue
        pile = piles[v]
        if pile and pile[-1]:
            merged = (pile[-1] + k) % p
            if merged:
                pile[-1] = merged
            else:
                pile.pop()
                for u in blockers[v]:
                    piles[u].pop()
        else:
            pile.append(k)
            for u in blockers[v]:
                piles[u].append(0)

    fronts = {v: 0 for v in g.vertices}
    names = sorted(g.vertices)
    result = []
    while True:
        chosen = None
        for v in names:
            pile = piles[v]
            if fronts[v] < len(pile) and pile[fronts[v]]:
                chosen = v
                break
        if chosen is None:
            return tuple(result)
        result.append((chosen, piles[chosen][fronts[chosen]]))
        fronts[chosen] += 1
        for u in blockers[chosen]:
            fronts[u] += 1


def geodesic_length(g: GPGraph, w: NormalWord) -> int:
    return sum(min(k, g.order(v) - k) for v, k in w)


def multiply(g: GPGraph, x: NormalWord, y: NormalWord) -> NormalWord:
    return normal_form(g, x + y)


def inverse(g: GPGraph, x: NormalWord) -> NormalWord:
    return normal_form(g, [(v, g.order(v) - k) for v, k in reversed(x)])


# --------------------------
# Structure
# --------------------------
class GraphProductGroup(GroupStructure):
    kind = "graph_product"
    length_convention = "geodesic word length; a syllable v^k costs min(k, p(v) - k)"

    def __init__(self, graph: GPGraph, config: Optional[dict] = None):
        super().__init__(config or graph_config(graph))
        self.graph = graph
        self._generators = tuple(((v, 1),) for v in graph.vertices)
        self._presentation = _presentation(graph)

    @property
    def presentation(self) -> Presentation:
        return self._presentation

    @property
    def generators(self):
        return self._generators

    def identity(self) -> NormalWord:
        return ()

    def multiply(self, x: NormalWord, y: NormalWord) -> NormalWord:
        return multiply(self.graph, x, y)

    def inverse(self, x: NormalWord) -> NormalWord:
        return inverse(self.graph, x)

    def letters(self, element: NormalWord) -> List[Tuple[int, int]]:
        spelled = []
        for v, k in element:
            i, p = self.graph.index(v), self.graph.order(v)
            spelled.extend([(i, 1)] * k if k <= p - k else [(i, -1)] * (p - k))
        return spelled

    def element_length(self, element: NormalWord) -> int:
        return geodesic_length(self.graph, element)

    def is_finite(self) -> bool:
        return self.graph.is_complete()

    def encode(self, element: NormalWord) -> str:
        return format_syllables(element)

    def parse_element(self, text: str) -> NormalWord:
        syllables = parse_syllables(text)
        for v, _ in syllables:
            if v not in self.graph.vertices:
                raise UnknownSymbolError(f"Unknown vertex '{v}' in '{text}'")
        return normal_form(self.graph, syllables)

    def notes(self) -> List[str]:
        return [
            "graph products of primary cyclic groups are Hopfian, hence quasi-Hopfian",
        ]


def _presentation(g: GPGraph) -> Presentation:
    relators = []
    for i, v in enumerate(g.vertices, start=1):
        relators.append(AtomicFormula.equality(word_term([(i, 1)] * g.order(v)), Term.const("e")))
    for i, u in enumerate(g.vertices, start=1):
        for j, v in enumerate(g.vertices, start=1):
            if i < j and g.adjacent(u, v):
                relators.append(AtomicFormula.equality(word_term([(i, 1), (j, 1)]), word_term([(j, 1), (i, 1)])))
    return Presentation(GROUP_SIGNATURE, len(g.vertices), tuple(relators))


def graph_config(g: GPGraph) -> dict:
    return {
        "type": "graph_product",
        "vertices": [{"name": v, "order": p} for v, p in zip(g.vertices, g.orders)],
        "edges": sorted(sorted(e) for e in g.edges),
    }


def graph_product(g: GPGraph) -> GraphProductGroup:
    return GraphProductGroup(g)


# --------------------------
# Automorphisms
# --------------------------
def partial_conjugation_pairs(g: GPGraph) -> List[PartialConjugation]:
    """Every (s, C) with C a nonempty union of components of Γ ∖ N*(s)."""
    pairs = []
    for s in g.vertices:
        rest = g.nx_graph.subgraph(set(g.vertices) - g.closed_star(s))
        components = sorted((frozenset(c) for c in nx.connected_components(rest)), key=lambda c: sorted(c))
        for size in range(1, len(components) + 1):
            for chosen in combinations(components, size):
                pairs.append(PartialConjugation(acting=s, component=frozenset().union(*chosen)))
    return pairs


def partial_conjugation_spec(structure: GraphProductGroup, pc: PartialConjugation) -> AutomorphismSpec:
    g = structure.graph
    s = ((pc.acting, 1),)
    s_inv = structure.inverse(s)
    images, inverse_images = [], []
    for v, a in zip(g.vertices, structure.generators):
        if v in pc.component:
            images.append(structure.conjugate(s, a))
            inverse_images.append(structure.conjugate(s_inv, a))
        else:
            images.append(a)
            inverse_images.append(a)
    return AutomorphismSpec(pc.name, tuple(images), tuple(inverse_images))


def partial_conjugations(structure: GraphProductGroup) -> List[AutomorphismSpec]:
    return [
        validate_automorphism(structure, partial_conjugation_spec(structure, pc))
        for pc in partial_conjugation_pairs(structure.graph)
    ]


def _clique_pool(structure: GraphProductGroup) -> List[NormalWord]:
    g = structure.graph
    pool = set()
    for clique in nx.find_cliques(g.nx_graph):
        vertices = sorted(clique, key=g.index)
        for exponents in product(*(range(g.order(v)) for v in vertices)):
            pool.add(normal_form(g, list(zip(vertices, exponents))))
    return sorted(pool, key=structure.sort_key)


def _aut_name(structure: GraphProductGroup, images) -> str:
    if tuple(images) == structure.generators:
        return "id"
    return "fg[" + ",".join(structure.encode(x) for x in images) + "]"


def f_gamma(structure: GraphProductGroup) -> List[AutomorphismSpec]:
    """
    F(Γ) by brute force: assignments of the vertex generators into the union of
    the maximal complete subgroups that satisfy every relator and have a two-sided
    inverse among the same assignments.
    """
    pool = _clique_pool(structure)
    n = len(structure.generators)
    if len(pool) ** n > F_GAMMA_MAX_ASSIGNMENTS:
        logger.warning(f"F(Γ) search needs {len(pool) ** n} assignments")
        raise BudgetExceededError(
            f"F(Γ) brute force needs {len(pool) ** n} assignments (limit {F_GAMMA_MAX_ASSIGNMENTS})"
        )
    endos = [images for images in product(pool, repeat=n) if relators_hold(structure, images)]
    identity = tuple(structure.generators)
    found = []
    for f in endos:
        for h in endos:
            if act(structure, f, h) == identity and act(structure, h, f) == identity:
                found.append(AutomorphismSpec(_aut_name(structure, f), f, h))
                break
    logger.info(f"F(Γ) has {len(found)} elements among {len(endos)} endomorphisms")
    return found


def gp_aut_presentation(structure: GraphProductGroup) -> AutPresentation:
    """X = partial conjugations ∪ (F(Γ) ∖ {id}), F(m̄) = Σmᵢ + 1."""
    identity = tuple(structure.generators)
    gens = partial_conjugations(structure)
    gens += [spec for spec in f_gamma(structure) if not spec.is_identity_on(identity)]
    if not gens:
        gens = [AutomorphismSpec("id", identity, identity)]
    return AutPresentation(gens=tuple(gens), bound=AffineBound.uniform(1, 1, len(identity)))


def spe_length(structure: GraphProductGroup, images: Sequence[NormalWord]) -> int:
    """|α| = Σ_v lg(w_v) for α(v) = w_v v w_v⁻¹ written as a normal form."""
    return sum((structure.element_length(x) - 1) // 2 for x in images)
