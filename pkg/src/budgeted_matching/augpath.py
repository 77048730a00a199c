"""Bounded-length augmenting-path search and augmenting-path surgery.

All searches are exhaustive depth-bounded DFS over simple alternating
paths, so they are exact in nonbipartite graphs as well.  Ties among
equal-length paths go to the lexicographically smallest vertex sequence.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .core import (
    Edge,
    Graph,
    Matching,
    Path,
    check_augmenting,
    edge_key,
    path_edges,
)
from .errors import (
    EdgeInMatching,
    EdgeMissing,
    NotAugmenting,
    PreconditionViolated,
    StartMatched,
)


def canonical(path: Sequence[int]) -> Path:
    """Orientation of ``path`` that starts at the smaller endpoint."""
    p = tuple(path)
    return p if p[0] <= p[-1] else p[::-1]


def ratio_bound(k: int) -> Fraction:
    """Guaranteed fraction of OPT once no augmenting path has <= k-1 edges."""
    return 1 - Fraction(2, k + 2)


def _check_max_edges(max_edges: int) -> None:
    if max_edges < 1 or max_edges % 2 == 0:
        raise ValueError(f"max_edges must be odd and >= 1, got {max_edges}")


def _extend(
    graph: Graph,
    matching: Matching,
    path: list[int],
    visited: set[int],
    remaining: int,
) -> Iterator[list[int]]:
    """Yield augmenting continuations of ``path`` using exactly ``remaining``
    more non-matching edges, in lexicographic order."""
    tail = path[-1]
    for x in graph.neighbors(tail):
        if x in visited:
            continue
        m = matching.mate(x)
        if remaining == 1:
            if m is None:
                path.append(x)
                yield path
                path.pop()
        elif m is not None and m not in visited:
            path.append(x)
            path.append(m)
            visited.add(x)
            visited.add(m)
            yield from _extend(graph, matching, path, visited, remaining - 1)
            visited.discard(x)
            visited.discard(m)
            path.pop()
            path.pop()


def _paths_from(graph: Graph, matching: Matching, start: int, max_edges: int) -> Iterator[Path]:
    """Every augmenting path starting at exposed ``start``, shortest first."""
    for hops in range(1, (max_edges + 1) // 2 + 1):
        for p in _extend(graph, matching, [start], {start}, hops):
            yield tuple(p)


def shortest_augmenting_from(
    graph: Graph, matching: Matching, start: int, max_edges: int
) -> Optional[Path]:
    """Shortest augmenting path from ``start`` with at most ``max_edges`` edges."""
    _check_max_edges(max_edges)
    if matching.is_matched(start):
        raise StartMatched(f"vertex {start} is already matched")
    for p in _paths_from(graph, matching, start, max_edges):
        return p
    return None


def _halves(
    graph: Graph, matching: Matching, root: int, max_edges: int, banned: int
) -> list[Path]:
    """Alternating walks that leave ``root`` through its matching edge and
    stop at an exposed vertex (or just ``(root,)`` when root is exposed)."""
    if not matching.is_matched(root):
        return [(root,)]
    out: list[Path] = []
    mate = matching.mate(root)
    if mate == banned or max_edges < 2:
        return out
    path = [root, mate]
    visited = {root, mate, banned}

    def walk() -> None:
        tail = path[-1]
        for x in graph.neighbors(tail):
            if x in visited:
                continue
            m = matching.mate(x)
            if m is None:
                out.append(tuple(path) + (x,))
            elif m not in visited and len(path) + 2 <= max_edges:
                path.extend((x, m))
                visited.update((x, m))
                walk()
                visited.difference_update((x, m))
                del path[-2:]

    walk()
    return out


def shortest_augmenting_containing(
    graph: Graph, matching: Matching, edge: Edge, max_edges: int
) -> Optional[Path]:
    """Shortest augmenting path through ``edge`` with at most ``max_edges`` edges.

    The result is returned in canonical orientation (smaller endpoint first).
    """
    _check_max_edges(max_edges)
    a, b = edge
    if matching.mate(a) == b:
        raise EdgeInMatching(f"edge {edge_key(a, b)} is already matched")
    if not graph.has_edge(a, b):
        raise EdgeMissing(f"edge {edge_key(a, b)} has not been revealed")
    side_budget = max_edges - 1
    ha = _halves(graph, matching, a, side_budget, b)
    hb = _halves(graph, matching, b, side_budget, a)
    best: Optional[tuple[int, Path]] = None
    for x in ha:
        xs = set(x)
        for y in hb:
            length = len(x) + len(y) - 1
            if length > max_edges:
                continue
            if best is not None and length > best[0]:
                continue
            if xs.intersection(y):
                continue
            cand = canonical(x[::-1] + y)
            if best is None or (length, cand) < best:
                best = (length, cand)
    return None if best is None else best[1]


def enumerate_augmenting_paths(
    graph: Graph, matching: Matching, max_edges: int
) -> list[Path]:
    """All augmenting paths with at most ``max_edges`` edges, each once.

    Paths are reported smaller-endpoint-first and sorted by (length, sequence).
    """
    _check_max_edges(max_edges)
    found = set()
    for s in _starts(graph, matching):
        for p in _paths_from(graph, matching, s, max_edges):
            found.add(canonical(p))
    return sorted(found, key=lambda p: (len(p), p))


def find_short_augmenting_path(
    graph: Graph, matching: Matching, max_edges: int
) -> Optional[Path]:
    """Any augmenting path with at most ``max_edges`` edges, or None.

    Same search space as :func:`enumerate_augmenting_paths` but stops at the
    first hit; the result is not necessarily the shortest overall.
    """
    _check_max_edges(max_edges)
    for s in _starts(graph, matching):
        for p in _paths_from(graph, matching, s, max_edges):
            return canonical(p)
    return None


def _starts(graph: Graph, matching: Matching) -> list[int]:
    # In a bipartite graph every augmenting path has one exposed left endpoint.
    if graph.bipartite:
        pool = graph.left()
    else:
        pool = graph.vertices()
    return [v for v in pool if not matching.is_matched(v) and graph.degree(v) > 0]


def decompose_pq(matching: Matching, p: Sequence[int], q: Sequence[int]) -> tuple[Path, Path]:
    """Split ``P △ Q`` into the two paths X, Y.

    ``p`` must be augmenting w.r.t. ``matching`` and ``q`` augmenting w.r.t.
    ``matching △ p``.  X and Y are edge-disjoint augmenting paths w.r.t.
    ``matching`` covering the same four endpoints as P and Q; cycles of
    ``P △ Q`` are discarded.
    """
    try:
        check_augmenting(matching, p)
        check_augmenting(matching.flip(path_edges(p)), q)
    except (NotAugmenting, EdgeMissing) as exc:
        raise PreconditionViolated(str(exc)) from exc

    h = set(path_edges(p)) ^ set(path_edges(q))
    adj: dict[int, list[int]] = {}
    for u, v in h:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    if any(len(n) > 2 for n in adj.values()):
        raise PreconditionViolated("P △ Q has a vertex of degree >= 3")
    ends = sorted(v for v, n in adj.items() if len(n) == 1)
    if len(ends) != 4:
        raise PreconditionViolated(f"P △ Q has {len(ends)} odd-degree vertices, expected 4")

    paths: list[Path] = []
    used: set[int] = set()
    for s in ends:
        if s in used:
            continue
        walk = [s]
        prev, cur = None, s
        while True:
            nxt = [x for x in adj[cur] if x != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            walk.append(cur)
        used.update((walk[0], walk[-1]))
        paths.append(canonical(walk))
    x, y = sorted(paths)
    return x, y


def short_path_free_ratio_check(matching_size: int, opt_size: int, k: int) -> bool:
    """Does ``matching_size >= (1 - 2/(k+2)) * opt_size`` hold exactly?"""
    if k < 2 or k % 2:
        raise ValueError(f"k must be even and >= 2, got {k}")
    return Fraction(matching_size) >= ratio_bound(k) * opt_size
