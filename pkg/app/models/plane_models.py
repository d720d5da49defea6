# app/models/plane_models.py
"""
Nodes of the free projective extension of the four-point quadrangle. Nodes are
interned by their creation record, so each element exists exactly once and
equality is identity.
"""
import enum
import threading
from typing import Dict, Optional, Set, Tuple


class PlaneKind(str, enum.Enum):
    bottom = "bottom"
    top = "top"
    base = "base"
    join = "join"     # a line created through two points
    meet = "meet"     # a point created on two lines


BASE_POINTS = ("A1", "A2", "B1", "B2")


class PlaneNode:
    __slots__ = ("kind", "name", "children", "stage", "text", "__weakref__")

    def __init__(self, kind: PlaneKind, stage: int, text: str, name: str = "", children: Tuple["PlaneNode", ...] = ()):
        self.kind = kind
        self.name = name
        self.children = children
        self.stage = stage
        self.text = text

    @property
    def is_point(self) -> bool:
        return self.kind in (PlaneKind.base, PlaneKind.meet)

    @property
    def is_line(self) -> bool:
        return self.kind == PlaneKind.join

    def sort_key(self):
        return self.stage, self.text

    def __repr__(self):
        return self.text


class PlaneStore:
    """
    Append-only interning table plus the incidence registry: every line knows the
    points it was created through or that were later created on it, and dually.
    """

    def __init__(self):
        self.lock = threading.RLock()
        self._nodes: Dict[tuple, PlaneNode] = {}
        self._incident: Dict[PlaneNode, Set[PlaneNode]] = {}
        self.bottom = self._intern(PlaneKind.bottom, 0, "0")
        self.top = self._intern(PlaneKind.top, 0, "1")
        self.base = tuple(self._intern(PlaneKind.base, 0, name, name=name) for name in BASE_POINTS)

    def _intern(self, kind: PlaneKind, stage: int, text: str, name: str = "", children=()) -> PlaneNode:
        key = (kind, name, children)
        node = self._nodes.get(key)
        if node is None:
            node = PlaneNode(kind, stage, text, name=name, children=children)
            self._nodes[key] = node
            self._incident[node] = set()
            for child in children:
                self._incident[node].add(child)
                self._incident[child].add(node)
        return node

    def create(self, kind: PlaneKind, first: PlaneNode, second: PlaneNode) -> PlaneNode:
        """Intern the line through two points (join) or the point on two lines (meet)."""
        children = tuple(sorted((first, second), key=PlaneNode.sort_key))
        symbol = "v" if kind == PlaneKind.join else "^"
        text = f"({children[0].text} {symbol} {children[1].text})"
        stage = max(first.stage, second.stage) + 1
        with self.lock:
            return self._intern(kind, stage, text, children=children)

    def incident_with(self, node: PlaneNode) -> Set[PlaneNode]:
        with self.lock:
            return set(self._incident.get(node, ()))

    def common(self, first: PlaneNode, second: PlaneNode) -> Optional[PlaneNode]:
        """The element incident with both, if it exists already."""
        with self.lock:
            shared = self._incident.get(first, set()) & self._incident.get(second, set())
        if not shared:
            return None
        return min(shared, key=PlaneNode.sort_key)
