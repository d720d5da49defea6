# app/models/graph_product_models.py
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Tuple

import networkx as nx

from app.core.errors import UnknownSymbolError

# (vertex, exponent) with 1 <= exponent < p(vertex)
Syllable = Tuple[str, int]
NormalWord = Tuple[Syllable, ...]


@dataclass(frozen=True)
class GPGraph:
    """Γ with vertex orders 𝐩: vertices in declaration order, edges as unordered pairs."""
    vertices: Tuple[str, ...]
    orders: Tuple[int, ...]
    edges: FrozenSet[FrozenSet[str]] = frozenset()

    def __post_init__(self):
        if len(self.vertices) != len(self.orders):
            raise ValueError("Every vertex needs exactly one order")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("Vertex names must be unique")
        for edge in self.edges:
            if len(edge) != 2:
                raise ValueError("Edges join two distinct vertices")
            for v in edge:
                if v not in self.vertices:
                    raise ValueError(f"Edge uses unknown vertex '{v}'")

    @classmethod
    def build(cls, vertices: Dict[str, int], edges=()) -> "GPGraph":
        return cls(
            vertices=tuple(vertices),
            orders=tuple(vertices.values()),
            edges=frozenset(frozenset(e) for e in edges),
        )

    @cached_property
    def _index(self) -> Dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def index(self, v: str) -> int:
        if v not in self._index:
            raise UnknownSymbolError(f"Unknown vertex '{v}'")
        return self._index[v]

    def order(self, v: str) -> int:
        return self.orders[self.index(v)]

    def adjacent(self, u: str, v: str) -> bool:
        return frozenset((u, v)) in self.edges

    def closed_star(self, v: str) -> FrozenSet[str]:
        """N*(v): v and its neighbours."""
        return frozenset([v] + [u for u in self.vertices if self.adjacent(u, v)])

    def is_complete(self) -> bool:
        n = len(self.vertices)
        return len(self.edges) == n * (n - 1) // 2

    @cached_property
    def nx_graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(tuple(sorted(e)) for e in self.edges)
        return g


@dataclass(frozen=True)
class PartialConjugation:
    """π_(s,C): t ↦ s t s⁻¹ for t ∈ C, identity elsewhere."""
    acting: str
    component: FrozenSet[str]

    @property
    def name(self) -> str:
        return f"pc_{self.acting}_{'+'.join(sorted(self.component))}"
