"""Exact offline baselines used to score the online engines.

* maximum-cardinality matching (augmenting paths on bipartite components,
  memoised exhaustive search on the rest),
* maximum-weight left-perfect matching (exhaustive for tiny instances,
  otherwise an incremental shortest-augmenting-path Hungarian method in
  exact integer arithmetic),
* optimal restricted-assignment load,
* brute-force enumeration of every matching.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .core import Edge, Graph, Matching, edge_key
from .errors import EdgeMissing, Infeasible, MissingWeight, TooLarge

# Largest nonbipartite connected component the exhaustive search will accept.
MAX_GENERAL_COMPONENT = 26
# Exhaustive assignment is used while P(|R|, |L|) stays below this.
EXHAUSTIVE_ASSIGNMENT_LIMIT = 50_000


@dataclass(frozen=True)
class OracleResult:
    value: Union[int, Fraction]
    witness: Matching


def _components(graph: Graph) -> list[list[int]]:
    seen: set[int] = set()
    comps = []
    for s in graph.vertices():
        if s in seen or graph.degree(s) == 0:
            continue
        stack = [s]
        seen.add(s)
        comp = []
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in graph.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _two_color(graph: Graph, comp: list[int]) -> Optional[list[int]]:
    """One colour class of ``comp`` or None when it has an odd cycle."""
    color = {comp[0]: 0}
    stack = [comp[0]]
    while stack:
        v = stack.pop()
        for w in graph.neighbors(v):
            if w not in color:
                color[w] = 1 - color[v]
                stack.append(w)
            elif color[w] == color[v]:
                return None
    return [v for v in comp if color[v] == 0]


class IncrementalBipartiteMatching:
    """Maximum bipartite matching kept exact as left vertices arrive.

    Adding a left vertex can raise the optimum by at most one, and any new
    augmenting path must start at it, so one unbounded search per arrival
    suffices.
    """

    def __init__(self) -> None:
        self.adj: dict[int, Sequence[int]] = {}
        self.mate_l: dict[int, int] = {}
        self.mate_r: dict[int, int] = {}

    def __len__(self) -> int:
        return len(self.mate_l)

    def add_left(self, root: int, neighbors: Sequence[int]) -> bool:
        self.adj[root] = neighbors
        return self._augment_from(root)

    def _augment_from(self, root: int) -> bool:
        adj, mate_l, mate_r = self.adj, self.mate_l, self.mate_r
        parent: dict[int, int] = {}
        visited_r: set[int] = set()
        stack = [(root, iter(adj.get(root, ())))]
        end = None
        # iterative DFS; paths can be long on big instances
        while stack and end is None:
            u, it = stack[-1]
            for r in it:
                if r in visited_r:
                    continue
                visited_r.add(r)
                parent[r] = u
                nxt = mate_r.get(r)
                if nxt is None:
                    end = r
                else:
                    stack.append((nxt, iter(adj.get(nxt, ()))))
                break
            else:
                stack.pop()
        if end is None:
            return False
        r = end
        while True:
            u = parent[r]
            prev = mate_l.get(u)
            mate_l[u] = r
            mate_r[r] = u
            if u == root:
                return True
            r = prev


def bipartite_max_matching(
    left: Sequence[int], adj: dict[int, Sequence[int]]
) -> dict[int, int]:
    """Kuhn's augmenting-path algorithm; returns the mate of each matched left vertex."""
    inc = IncrementalBipartiteMatching()
    for root in left:
        inc.add_left(root, adj.get(root, ()))
    return inc.mate_l


def _general_max_matching(graph: Graph, comp: list[int]) -> list[Edge]:
    if len(comp) > MAX_GENERAL_COMPONENT:
        raise TooLarge(
            f"nonbipartite component with {len(comp)} vertices exceeds "
            f"the exhaustive limit {MAX_GENERAL_COMPONENT}"
        )
    index = {v: i for i, v in enumerate(comp)}
    nbr = [0] * len(comp)
    for v in comp:
        for w in graph.neighbors(v):
            nbr[index[v]] |= 1 << index[w]
    memo: dict[int, int] = {}

    def best(mask: int) -> int:
        if mask == 0 or mask & (mask - 1) == 0:
            return 0
        hit = memo.get(mask)
        if hit is not None:
            return hit
        low = mask & -mask
        i = low.bit_length() - 1
        rest = mask ^ low
        cap = bin(mask).count("1") // 2
        result = best(rest)
        cand = nbr[i] & rest
        while cand and result < cap:
            b = cand & -cand
            cand ^= b
            result = max(result, 1 + best(rest ^ b))
        memo[mask] = result
        return result

    full = (1 << len(comp)) - 1
    total = best(full)
    # walk the memo back to a witness
    edges: list[Edge] = []
    mask, need = full, total
    while need:
        low = mask & -mask
        i = low.bit_length() - 1
        rest = mask ^ low
        if best(rest) == need:
            mask = rest
            continue
        cand = nbr[i] & rest
        while cand:
            b = cand & -cand
            cand ^= b
            if 1 + best(rest ^ b) == need:
                edges.append(edge_key(comp[i], comp[b.bit_length() - 1]))
                mask, need = rest ^ b, need - 1
                break
    return edges


def max_cardinality_matching(graph: Graph) -> OracleResult:
    edges: list[Edge] = []
    for comp in _components(graph):
        side = _two_color(graph, comp)
        if side is None:
            edges.extend(_general_max_matching(graph, comp))
        else:
            adj = {v: graph.neighbors(v) for v in side}
            for u, r in bipartite_max_matching(side, adj).items():
                edges.append(edge_key(u, r))
    m = Matching(edges)
    return OracleResult(len(m), m)


def brute_force_enumerate(graph: Graph, bound: int = 20) -> list[Matching]:
    """Every matching of ``graph`` (including the empty one)."""
    edges = graph.edges()
    if len(edges) > bound:
        raise TooLarge(f"{len(edges)} edges exceeds the enumeration bound {bound}")
    out: list[Matching] = []

    def rec(i: int, chosen: list[Edge], used: set[int]) -> None:
        if i == len(edges):
            out.append(Matching(chosen))
            return
        rec(i + 1, chosen, used)
        u, v = edges[i]
        if u not in used and v not in used:
            chosen.append(edges[i])
            used.update((u, v))
            rec(i + 1, chosen, used)
            used.difference_update((u, v))
            chosen.pop()

    rec(0, [], set())
    return out


class IncrementalAssignment:
    """Maximum-weight assignment of rows into a fixed set of columns,
    maintained optimally as rows are appended one at a time.

    Shortest-augmenting-path Hungarian method with dual potentials.  Weights
    are scaled to integers so every comparison is exact.
    """

    def __init__(self, num_cols: int) -> None:
        self.m = num_cols
        self.scale = 1
        self.rows: list[list[Fraction]] = []
        self._cost = np.zeros((0, num_cols), dtype=object)
        self._u = [0]  # row potentials, 1-indexed
        self._v = np.zeros(num_cols + 1, dtype=object)  # column potentials
        self._p = [0] * (num_cols + 1)  # p[j]: row assigned to column j (0 = none)

    def add_row(self, weights: Sequence[Union[int, Fraction]]) -> None:
        if len(weights) != self.m:
            raise MissingWeight(f"row has {len(weights)} weights, expected {self.m}")
        if len(self.rows) >= self.m:
            raise Infeasible("more rows than columns")
        row = [Fraction(w) for w in weights]
        denom = math.lcm(*(w.denominator for w in row)) if row else 1
        new_scale = math.lcm(self.scale, denom)
        if new_scale != self.scale:
            f = new_scale // self.scale
            self._cost = self._cost * f
            self._u = [x * f for x in self._u]
            self._v = self._v * f
            self.scale = new_scale
        self.rows.append(row)
        cost_row = np.array([-int(w * self.scale) for w in row], dtype=object)
        self._cost = np.vstack([self._cost, cost_row[None, :]]) if len(self.rows) > 1 else cost_row[None, :]
        self._u.append(0)
        self._augment(len(self.rows))

    def _augment(self, i: int) -> None:
        m = self.m
        p, u, v, a = self._p, self._u, self._v, self._cost
        p[0] = i
        j0 = 0
        minv = np.full(m + 1, 0, dtype=object)
        has_min = np.zeros(m + 1, dtype=bool)
        used = np.zeros(m + 1, dtype=bool)
        way = np.zeros(m + 1, dtype=np.int64)
        while True:
            used[j0] = True
            i0 = p[j0]
            free = ~used
            free[0] = False
            cur = a[i0 - 1] - u[i0] - v[1:]
            fr = free[1:]
            better = fr & (~has_min[1:] | (cur < minv[1:]))
            idx = np.nonzero(better)[0] + 1
            minv[idx] = cur[idx - 1]
            way[idx] = j0
            has_min[idx] = True
            cand = np.nonzero(fr)[0] + 1
            vals = minv[cand]
            k = int(np.argmin(vals))
            j1 = int(cand[k])
            delta = vals[k]
            for j in np.nonzero(used)[0]:
                u[p[j]] += delta
            v[used] -= delta
            minv[~used] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while True:
            j1 = int(way[j0])
            p[j0] = p[j1]
            j0 = j1
            if j0 == 0:
                break

    def assignment(self) -> dict[int, int]:
        """Row index -> column index (both 0-based)."""
        return {self._p[j] - 1: j - 1 for j in range(1, self.m + 1) if self._p[j]}

    @property
    def value(self) -> Fraction:
        return sum((self.rows[r][c] for r, c in self.assignment().items()), Fraction(0))


def assignment_hungarian(weights: Sequence[Sequence[Union[int, Fraction]]]) -> tuple[Fraction, dict[int, int]]:
    if not weights:
        return Fraction(0), {}
    solver = IncrementalAssignment(len(weights[0]))
    for row in weights:
        solver.add_row(row)
    return solver.value, solver.assignment()


def assignment_exhaustive(weights: Sequence[Sequence[Union[int, Fraction]]]) -> tuple[Fraction, dict[int, int]]:
    """Best injective row -> column map by trying all of them; ties go to the
    lexicographically first column tuple."""
    if not weights:
        return Fraction(0), {}
    n, m = len(weights), len(weights[0])
    if n > m:
        raise Infeasible(f"{n} rows cannot be assigned into {m} columns")
    best_val: Optional[Fraction] = None
    best_cols: tuple[int, ...] = ()
    for cols in permutations(range(m), n):
        val = sum((Fraction(weights[r][c]) for r, c in enumerate(cols)), Fraction(0))
        if best_val is None or val > best_val:
            best_val, best_cols = val, cols
    return best_val or Fraction(0), dict(enumerate(best_cols))


def _perm_count(m: int, n: int) -> int:
    return math.perm(m, n) if n <= m else 0


def max_weight_left_perfect(
    graph: Graph, arrived_left: Iterable[int], method: str = "auto"
) -> OracleResult:
    """Optimal matching of every vertex in ``arrived_left`` into ``graph.right()``."""
    left = sorted(arrived_left)
    right = graph.right()
    if len(left) > len(right):
        raise Infeasible(f"{len(left)} left vertices but only {len(right)} right vertices")
    weights = []
    for u in left:
        row = []
        for r in right:
            try:
                row.append(graph.weight(u, r))
            except EdgeMissing:
                raise MissingWeight(f"edge ({u}, {r}) has no weight") from None
        weights.append(row)
    if method == "auto":
        method = "exhaustive" if _perm_count(len(right), len(left)) <= EXHAUSTIVE_ASSIGNMENT_LIMIT else "hungarian"
    solve = assignment_exhaustive if method == "exhaustive" else assignment_hungarian
    value, assign = solve(weights)
    witness = Matching(edge_key(left[r], right[c]) for r, c in assign.items())
    return OracleResult(value, witness)


def feasible_load(clients: Sequence[Iterable[int]], servers: Sequence[int], cap: int) -> bool:
    """Can every client be placed on an allowed server with load <= ``cap``?

    Checked as a client-perfect matching in the ``cap``-slot expansion.
    """
    if not clients:
        return True
    if cap <= 0:
        return False
    adj: dict[int, list[tuple[int, int]]] = {}
    known = set(servers)
    for c, allowed in enumerate(clients):
        adj[c] = [(s, j) for s in sorted(allowed) if s in known for j in range(cap)]
    mate = bipartite_max_matching(list(range(len(clients))), adj)
    return len(mate) == len(clients)


def optimal_max_load(clients: Sequence[Iterable[int]], servers: Sequence[int]) -> int:
    """Smallest achievable maximum server load (0 for no clients)."""
    clients = [frozenset(c) for c in clients]
    if not clients:
        return 0
    known = set(servers)
    if any(not c or not c <= known for c in clients):
        raise ValueError("every client needs a nonempty set of declared servers")
    lo = max(1, -(-len(clients) // max(1, len(servers))))
    hi = len(clients)
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible_load(clients, servers, mid):
            hi = mid
        else:
            lo = mid + 1
    return lo
