"""Graphs, matchings, arrival events and the primitive matching mutations.

Vertices are plain non-negative integers.  Edges are stored as sorted
pairs ``(a, b)`` with ``a < b``; weights are exact :class:`Fraction`
values.  Paths are ordered vertex tuples.
"""

from __future__ import annotations

from bisect import bisect_left, insort
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Optional, Sequence, Union

from .errors import (
    CommitmentBroken,
    DuplicateEdge,
    EdgeMissing,
    MatchingError,
    NotAugmenting,
    UnknownEndpoint,
)

LEFT = "L"
RIGHT = "R"

Edge = tuple[int, int]
Path = tuple[int, ...]
Weight = Fraction


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def path_edges(path: Sequence[int]) -> list[Edge]:
    return [edge_key(path[i], path[i + 1]) for i in range(len(path) - 1)]


def to_weight(value: Union[int, str, Fraction]) -> Fraction:
    w = Fraction(value)
    if w < 0:
        raise ValueError(f"negative weight {value!r}")
    return w


class Graph:
    """Incrementally revealed undirected simple graph.

    When ``bipartite`` is set every vertex carries a side (``LEFT`` or
    ``RIGHT``) and edges must join opposite sides.
    """

    def __init__(self, bipartite: bool = False) -> None:
        self.bipartite = bipartite
        self._adj: dict[int, list[int]] = {}
        self._side: dict[int, str] = {}
        self._weights: dict[Edge, Fraction] = {}
        self._num_edges = 0

    def add_vertex(self, v: int, side: Optional[str] = None) -> None:
        if v < 0:
            raise ValueError(f"vertex ids are non-negative, got {v}")
        if v in self._adj:
            raise MatchingError(f"vertex {v} already present")
        if self.bipartite:
            if side not in (LEFT, RIGHT):
                raise ValueError("bipartite graphs need a side for every vertex")
            self._side[v] = side
        self._adj[v] = []

    def add_edge(self, u: int, v: int, weight: Optional[Fraction] = None) -> None:
        if u == v:
            raise MatchingError(f"self-loop at {u}")
        for x in (u, v):
            if x not in self._adj:
                raise UnknownEndpoint(f"vertex {x} has not been revealed")
        if self.bipartite and self._side[u] == self._side[v]:
            raise MatchingError(f"edge ({u}, {v}) joins two {self._side[u]} vertices")
        key = edge_key(u, v)
        if self.has_edge(u, v):
            raise DuplicateEdge(f"edge {key} already revealed")
        insort(self._adj[u], v)
        insort(self._adj[v], u)
        self._num_edges += 1
        if weight is not None:
            self._weights[key] = to_weight(weight)

    def has_vertex(self, v: int) -> bool:
        return v in self._adj

    def has_edge(self, u: int, v: int) -> bool:
        adj = self._adj.get(u)
        if adj is None:
            return False
        i = bisect_left(adj, v)
        return i < len(adj) and adj[i] == v

    def neighbors(self, v: int) -> list[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def side(self, v: int) -> Optional[str]:
        return self._side.get(v)

    def vertices(self) -> list[int]:
        return sorted(self._adj)

    def left(self) -> list[int]:
        return sorted(v for v, s in self._side.items() if s == LEFT)

    def right(self) -> list[int]:
        return sorted(v for v, s in self._side.items() if s == RIGHT)

    def edges(self) -> list[Edge]:
        return sorted((u, v) for u, nbrs in self._adj.items() for v in nbrs if u < v)

    def weight(self, u: int, v: int) -> Fraction:
        try:
            return self._weights[edge_key(u, v)]
        except KeyError:
            raise EdgeMissing(f"no weight for edge {edge_key(u, v)}") from None

    @property
    def weighted(self) -> bool:
        return bool(self._weights)

    def num_vertices(self) -> int:
        return len(self._adj)

    def num_edges(self) -> int:
        return self._num_edges

    def copy(self) -> Graph:
        g = Graph(self.bipartite)
        g._adj = {v: list(nbrs) for v, nbrs in self._adj.items()}
        g._side = dict(self._side)
        g._weights = dict(self._weights)
        g._num_edges = self._num_edges
        return g

    def __repr__(self) -> str:
        return f"Graph(n={self.num_vertices()}, m={self.num_edges()}, bipartite={self.bipartite})"


class Matching:
    """Immutable set of vertex-disjoint edges with O(1) mate lookup."""

    __slots__ = ("_mate",)

    def __init__(self, edges: Iterable[Edge] = ()) -> None:
        mate: dict[int, int] = {}
        for u, v in edges:
            if u == v:
                raise MatchingError(f"self-loop ({u}, {v}) in matching")
            if u in mate or v in mate:
                raise MatchingError(f"edge ({u}, {v}) shares an endpoint with another edge")
            mate[u] = v
            mate[v] = u
        self._mate = mate

    @classmethod
    def _from_mate(cls, mate: dict[int, int]) -> Matching:
        m = cls.__new__(cls)
        m._mate = mate
        return m

    def mate(self, v: int) -> Optional[int]:
        return self._mate.get(v)

    def is_matched(self, v: int) -> bool:
        return v in self._mate

    def matched_vertices(self) -> frozenset[int]:
        return frozenset(self._mate)

    def edges(self) -> list[Edge]:
        return sorted((u, v) for u, v in self._mate.items() if u < v)

    def __contains__(self, edge: object) -> bool:
        u, v = edge  # type: ignore[misc]
        return self._mate.get(u) == v

    def __len__(self) -> int:
        return len(self._mate) // 2

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Matching) and self._mate == other._mate

    def __hash__(self) -> int:
        return hash(frozenset(self.edges()))

    def __repr__(self) -> str:
        return f"Matching({self.edges()})"

    def weight(self, graph: Graph) -> Fraction:
        return sum((graph.weight(u, v) for u, v in self.edges()), Fraction(0))

    def flip(self, path_edge_set: Iterable[Edge]) -> Matching:
        """Return ``self △ edges`` without any validity checks beyond disjointness."""
        current = set(self.edges())
        current.symmetric_difference_update(path_edge_set)
        return Matching(current)


@dataclass(frozen=True)
class ReassignmentDelta:
    """Vertices whose mate changed between two consecutive matchings."""

    touched: frozenset[int]
    matching: Matching

    @property
    def size(self) -> int:
        return len(self.touched)


@dataclass(frozen=True)
class VertexArrival:
    vertex: int
    neighbors: tuple[int, ...]
    weights: Optional[tuple[Fraction, ...]] = None

    def __post_init__(self) -> None:
        if len(set(self.neighbors)) != len(self.neighbors):
            raise DuplicateEdge(f"vertex {self.vertex} lists a neighbor twice")
        if self.weights is not None and len(self.weights) != len(self.neighbors):
            raise ValueError("weights must align with neighbors")

    def weight_map(self) -> dict[int, Fraction]:
        if self.weights is None:
            return {}
        return dict(zip(self.neighbors, self.weights))


@dataclass(frozen=True)
class EdgeArrival:
    u: int
    v: int

    @property
    def edge(self) -> Edge:
        return edge_key(self.u, self.v)


@dataclass(frozen=True)
class Stop:
    reason: str = field(default="", compare=False)


ArrivalEvent = Union[VertexArrival, EdgeArrival, Stop]


def check_augmenting(
    matching: Matching,
    path: Sequence[int],
    has_edge: Optional[Callable[[int, int], bool]] = None,
) -> None:
    """Raise unless ``path`` is an augmenting path w.r.t. ``matching``.

    ``has_edge`` (when given) is consulted for every path edge; a missing
    edge raises :class:`EdgeMissing`.
    """
    if len(path) < 2 or len(path) % 2 != 0:
        raise NotAugmenting(f"path {tuple(path)} has an even edge count or is empty")
    if len(set(path)) != len(path):
        raise NotAugmenting(f"path {tuple(path)} repeats a vertex")
    if matching.is_matched(path[0]) or matching.is_matched(path[-1]):
        raise NotAugmenting(f"path {tuple(path)} has a matched endpoint")
    for i in range(len(path) - 1):
        a, b = path[i], path[i + 1]
        if has_edge is not None and not has_edge(a, b):
            raise EdgeMissing(f"edge {edge_key(a, b)} has not been revealed")
        in_m = matching.mate(a) == b
        if in_m != (i % 2 == 1):
            raise NotAugmenting(f"path {tuple(path)} does not alternate at position {i}")


def is_augmenting(
    matching: Matching,
    path: Sequence[int],
    has_edge: Optional[Callable[[int, int], bool]] = None,
) -> bool:
    try:
        check_augmenting(matching, path, has_edge)
    except (NotAugmenting, EdgeMissing):
        return False
    return True


def augment(graph: Graph, matching: Matching, path: Sequence[int]) -> Matching:
    """Flip ``matching`` along the augmenting ``path``; size grows by one."""
    check_augmenting(matching, path, graph.has_edge)
    mate = dict(matching._mate)
    for i in range(0, len(path) - 1, 2):
        a, b = path[i], path[i + 1]
        mate[a] = b
        mate[b] = a
    return Matching._from_mate(mate)


def delta_between(before: Matching, after: Matching) -> ReassignmentDelta:
    """Vertices of positive degree in ``before △ after``.

    Raises :class:`CommitmentBroken` if a vertex matched in ``before`` is
    exposed in ``after``.
    """
    touched = set()
    for v, m in before._mate.items():
        other = after._mate.get(v)
        if other is None:
            raise CommitmentBroken(f"vertex {v} lost its mate")
        if other != m:
            touched.add(v)
    for v in after._mate:
        if v not in before._mate:
            touched.add(v)
    return ReassignmentDelta(frozenset(touched), after)


def validate_matching(graph: Graph, matching: Union[Matching, Iterable[Edge]]) -> bool:
    """True iff ``matching`` is vertex-disjoint and uses only revealed edges.

    Accepts a raw edge collection too, so that malformed candidates can be
    checked without going through the :class:`Matching` constructor.
    """
    if not isinstance(matching, Matching):
        seen: set[int] = set()
        for u, v in matching:
            if u == v or u in seen or v in seen or not graph.has_edge(u, v):
                return False
            seen.update((u, v))
        return True
    mate = matching._mate
    for v, m in mate.items():
        if mate.get(m) != v or m == v:
            return False
        if not graph.has_edge(v, m):
            return False
    return True


def matching_from_mate(mate: Mapping[int, int]) -> Matching:
    """Build a matching from a (possibly one-sided) mate table."""
    return Matching({edge_key(u, v) for u, v in mate.items()})
