"""Online matching engines with a hard per-step reassignment budget ``k``.

Every engine reacts to one arrival by augmenting along a single augmenting
path of at most ``k - 1`` edges (or doing nothing), so each step touches at
most ``k`` vertices and never unmatches anyone.

* :class:`VertexEngine` - unweighted vertex arrivals (bipartite, or general
  graphs where a vertex arrives with its edges to earlier vertices); takes a
  shortest augmenting path starting at the new vertex.
* :class:`EdgeEngine` - unweighted edge arrivals; takes a shortest
  augmenting path through the new edge.
* :class:`WeightedEngine` - left-perfect maximum-weight vertex arrivals on a
  complete bipartite graph with ``k = 4``; takes the most profitable
  augmenting path of length 1 or 3.
* :class:`ArbitraryPathEngine` - like :class:`VertexEngine` but accepts a
  caller-chosen augmenting path; used only to show that non-shortest
  choices can leave short augmenting paths behind.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import ClassVar, Iterable, Optional, Sequence, Union

from .augpath import shortest_augmenting_containing, shortest_augmenting_from
from .core import (
    LEFT,
    RIGHT,
    ArrivalEvent,
    EdgeArrival,
    Graph,
    Matching,
    Path,
    ReassignmentDelta,
    VertexArrival,
    augment,
    check_augmenting,
    delta_between,
    edge_key,
    to_weight,
)
from .errors import (
    BudgetExceeded,
    DuplicateArrival,
    DuplicateEdge,
    EdgeMissing,
    IllegalForcedPath,
    MissingWeight,
    ModelMismatch,
    NoExposedVertex,
    NotAugmenting,
    UnknownEndpoint,
)

VERTEX = "unweighted-vertex"
EDGE = "unweighted-edge"
WEIGHTED = "weighted-leftperfect"
ARBITRARY = "arbitrary-path-variant"


@dataclass(frozen=True)
class StepRecord:
    t: int
    event: ArrivalEvent
    delta: ReassignmentDelta
    path: Optional[Path] = None
    profit: Optional[Fraction] = None
    # loss table at the beginning of this step (weighted engine only)
    losses: Optional[dict[int, Fraction]] = None

    @property
    def path_len(self) -> int:
        return 0 if self.path is None else len(self.path) - 1


def _check_budget(k: int) -> None:
    if k < 2 or k % 2:
        raise ValueError(f"budget k must be an even integer >= 2, got {k}")


class Engine:
    """Shared state: revealed graph, current matching, budget, step counter."""

    mode: ClassVar[str] = ""

    def __init__(self, k: int, graph: Graph) -> None:
        _check_budget(k)
        self.k = k
        self.graph = graph
        self.matching = Matching()
        self.t = 0
        self.history: list[StepRecord] = []

    @property
    def max_edges(self) -> int:
        return self.k - 1

    def value(self) -> Union[int, Fraction]:
        return len(self.matching)

    def _commit(self, event: ArrivalEvent, path: Optional[Sequence[int]], **extra) -> StepRecord:
        before = self.matching
        after = augment(self.graph, before, path) if path else before
        delta = delta_between(before, after)
        if delta.size > self.k or delta.size % 2:
            raise BudgetExceeded(f"step touched {delta.size} vertices with budget {self.k}")
        self.matching = after
        self.t += 1
        rec = StepRecord(self.t, event, delta, tuple(path) if path else None, **extra)
        self.history.append(rec)
        return rec

    def step(self, event: ArrivalEvent) -> StepRecord:  # pragma: no cover - abstract
        raise NotImplementedError


class VertexEngine(Engine):
    """Shortest-augmenting-path engine for unweighted vertex arrivals.

    Passing ``right`` makes the instance bipartite: those vertices are known
    up front and every arrival is a left vertex adjacent only to them.
    Without ``right`` the graph is general and an arriving vertex may only
    be adjacent to vertices that arrived before it.
    """

    mode = VERTEX

    def __init__(self, k: int, right: Optional[Iterable[int]] = None) -> None:
        graph = Graph(bipartite=right is not None)
        for r in right or ():
            graph.add_vertex(r, RIGHT)
        super().__init__(k, graph)

    def _validate(self, event: VertexArrival) -> None:
        if not isinstance(event, VertexArrival):
            raise ModelMismatch(f"{type(event).__name__} sent to a vertex-arrival engine")
        if self.graph.has_vertex(event.vertex):
            raise DuplicateArrival(f"vertex {event.vertex} has already arrived")
        for w in event.neighbors:
            if not self.graph.has_vertex(w):
                raise UnknownEndpoint(f"neighbor {w} of {event.vertex} is unknown")
            if self.graph.bipartite and self.graph.side(w) != RIGHT:
                raise UnknownEndpoint(f"neighbor {w} of {event.vertex} is not a right vertex")

    def _reveal(self, event: VertexArrival) -> None:
        self.graph.add_vertex(event.vertex, LEFT if self.graph.bipartite else None)
        for w in event.neighbors:
            self.graph.add_edge(event.vertex, w)

    def step(self, event: VertexArrival) -> StepRecord:
        self._validate(event)
        self._reveal(event)
        path = shortest_augmenting_from(self.graph, self.matching, event.vertex, self.max_edges)
        return self._commit(event, path)


class ArbitraryPathEngine(VertexEngine):
    """Vertex-arrival engine that augments along a caller-forced path.

    Without a forced path it behaves exactly like :class:`VertexEngine`.
    """

    mode = ARBITRARY

    def step(self, event: VertexArrival, forced_path: Optional[Sequence[int]] = None) -> StepRecord:
        self._validate(event)
        if forced_path is None:
            return super().step(event)
        path = self._check_forced(event, tuple(forced_path))
        self._reveal(event)
        return self._commit(event, path)

    def _check_forced(self, event: VertexArrival, path: Path) -> Path:
        u = event.vertex
        if path and path[-1] == u:
            path = path[::-1]
        if not path or path[0] != u:
            raise IllegalForcedPath(f"forced path {path} does not start at the arriving vertex {u}")
        if len(path) - 1 > self.max_edges:
            raise IllegalForcedPath(
                f"forced path has {len(path) - 1} edges, budget allows {self.max_edges}"
            )
        new_edges = {edge_key(u, w) for w in event.neighbors}

        def has_edge(a: int, b: int) -> bool:
            return edge_key(a, b) in new_edges or self.graph.has_edge(a, b)

        try:
            check_augmenting(self.matching, path, has_edge)
        except (NotAugmenting, EdgeMissing) as exc:
            raise IllegalForcedPath(str(exc)) from exc
        return path


class EdgeEngine(Engine):
    """Shortest-augmenting-path engine for unweighted edge arrivals.

    The whole vertex set is declared up front; edges then arrive one by one.
    """

    mode = EDGE

    def __init__(self, k: int, vertices: Iterable[int]) -> None:
        graph = Graph(bipartite=False)
        for v in vertices:
            graph.add_vertex(v)
        super().__init__(k, graph)

    def step(self, event: EdgeArrival) -> StepRecord:
        if not isinstance(event, EdgeArrival):
            raise ModelMismatch(f"{type(event).__name__} sent to an edge-arrival engine")
        u, v = event.u, event.v
        for x in (u, v):
            if not self.graph.has_vertex(x):
                raise UnknownEndpoint(f"endpoint {x} was not declared")
        if u == v:
            raise UnknownEndpoint(f"self-loop at {u}")
        if self.graph.has_edge(u, v):
            raise DuplicateEdge(f"edge {edge_key(u, v)} already arrived")
        self.graph.add_edge(u, v)
        path = shortest_augmenting_containing(self.graph, self.matching, (u, v), self.max_edges)
        return self._commit(event, path)


class WeightedEngine(Engine):
    """Most-profitable-path engine for left-perfect weighted matching, k = 4.

    The right side is declared up front.  Each arrival must carry a weight
    for every right vertex (complete bipartite graph).  Candidates are the
    direct edge ``<u, r>`` to an exposed ``r`` and the swap
    ``<u, v, M(v), r>`` through a matched ``v``; the winner maximises profit,
    then prefers the shorter path, then the lexicographically smaller one.
    """

    mode = WEIGHTED

    def __init__(self, right: Iterable[int], k: int = 4) -> None:
        if k != 4:
            raise ValueError("the weighted engine is defined for k = 4 only")
        graph = Graph(bipartite=True)
        self.right = sorted(right)
        for r in self.right:
            graph.add_vertex(r, RIGHT)
        super().__init__(k, graph)
        # per left vertex: right vertices by (weight desc, id asc) and a cursor
        # that only moves forward, since matched vertices never become exposed
        self._order: dict[int, list[tuple[Fraction, int]]] = {}
        self._cursor: dict[int, int] = {}

    def value(self) -> Fraction:
        return self.matching.weight(self.graph)

    def _best_exposed(self, x: int) -> Optional[tuple[Fraction, int]]:
        order = self._order[x]
        i = self._cursor[x]
        while i < len(order) and self.matching.is_matched(order[i][1]):
            i += 1
        self._cursor[x] = i
        return order[i] if i < len(order) else None

    def losses(self) -> dict[int, Fraction]:
        """Loss table: for matched ``v`` with partner ``x``,
        ``w(x, v) - max over exposed r of w(x, r)`` (empty max is 0); 0 when
        ``v`` is exposed."""
        table = {}
        for v in self.right:
            x = self.matching.mate(v)
            if x is None:
                table[v] = Fraction(0)
                continue
            alt = self._best_exposed(x)
            table[v] = self.graph.weight(x, v) - (alt[0] if alt else Fraction(0))
        return table

    def step(self, event: VertexArrival) -> StepRecord:
        if not isinstance(event, VertexArrival):
            raise ModelMismatch(f"{type(event).__name__} sent to the weighted engine")
        u = event.vertex
        if self.graph.has_vertex(u):
            raise DuplicateArrival(f"vertex {u} has already arrived")
        weights = {r: to_weight(w) for r, w in event.weight_map().items()}
        if event.weights is None or set(weights) != set(self.right):
            raise MissingWeight(f"arrival of {u} must carry a weight for every right vertex")
        if len(self.matching) >= len(self.right):
            raise NoExposedVertex("every right vertex is already matched")

        before_losses = self.losses()
        self.graph.add_vertex(u, LEFT)
        for r in self.right:
            self.graph.add_edge(u, r, weights[r])
        self._order[u] = sorted(((weights[r], r) for r in self.right), key=lambda p: (-p[0], p[1]))
        self._cursor[u] = 0

        best_w, best_r = self._best_exposed(u)
        best_key = (-best_w, 2, (u, best_r))
        best_profit = best_w
        for v in self.right:
            x = self.matching.mate(v)
            if x is None:
                continue
            alt = self._best_exposed(x)
            if alt is None:
                continue
            profit = weights[v] - self.graph.weight(x, v) + alt[0]
            key = (-profit, 4, (u, v, x, alt[1]))
            if key < best_key:
                best_key, best_profit = key, profit
        return self._commit(event, best_key[2], profit=best_profit, losses=before_losses)


def make_engine(
    mode: str,
    k: int,
    *,
    right: Optional[Iterable[int]] = None,
    vertices: Optional[Iterable[int]] = None,
) -> Engine:
    if mode == VERTEX:
        return VertexEngine(k, right)
    if mode == ARBITRARY:
        return ArbitraryPathEngine(k, right)
    if mode == EDGE:
        return EdgeEngine(k, vertices or ())
    if mode == WEIGHTED:
        return WeightedEngine(right or (), k)
    raise ValueError(f"unknown engine mode {mode!r}")
