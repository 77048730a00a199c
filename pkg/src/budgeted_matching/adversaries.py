"""Adaptive adversaries that force the budgeted engines below the optimum.

Each adversary is a small state machine: :meth:`next_event` looks at the
engine's current matching and returns the next arrival (or :class:`Stop`).
Logical names such as ``u_i`` / ``v_i`` live in an alias table mapping them
to the engine's fixed integer ids, so renaming never touches the engine.

* :class:`VertexChainAdversary` - grows a path ``v1 u1 v2 u2 ...`` until the
  only augmenting path is one edge too long (unweighted vertex arrivals).
  :class:`CopiesAdversary` runs ``N`` disjoint copies of it.
* :class:`EdgeAdaptiveAdversary` - reveals disjoint edges, then stitches
  ``k/2`` matched edges at a time into augmenting paths of length ``k + 1``
  while keeping its own online solution (unweighted edge arrivals).
* :class:`WeightedThreePhaseAdversary` - 0/1 weights in three phases of
  ``N`` arrivals that cap the engine at ``N + 1`` while ``2N`` is possible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .core import (
    ArrivalEvent,
    Edge,
    EdgeArrival,
    Matching,
    Stop,
    VertexArrival,
    edge_key,
)
from .engines import EdgeEngine, Engine, StepRecord, VertexEngine, WeightedEngine
from .errors import ProtocolViolation
from .oracle import max_weight_left_perfect

VERTEX_CHAIN = "vertex-chain"
EDGE_ADAPTIVE = "edge-adaptive"
WEIGHTED_3PHASE = "weighted-3phase"
KINDS = (VERTEX_CHAIN, EDGE_ADAPTIVE, WEIGHTED_3PHASE)


def _half(k: int) -> int:
    if k < 2 or k % 2:
        raise ValueError(f"k must be an even integer >= 2, got {k}")
    return k // 2


class VertexChainAdversary:
    """One copy of the path-growing adversary on ``n = k/2 + 1`` right vertices.

    Before the t-th arrival the invariant is: for every ``i < t``, ``u_i`` is
    adjacent exactly to ``v_i`` and ``v_{i+1}`` and ``(u_i, v_{i+1})`` is
    matched.  After each response the adversary classifies it as

    * (a) the arrival stayed exposed - stop, the copy is suboptimal;
    * (b) ``u_t`` took ``v_{t+1}`` - invariant already holds;
    * (c) ``u_t`` took ``v_t`` through the whole chain - reverse the names.

    Anything else raises :class:`ProtocolViolation`.
    """

    def __init__(self, k: int, right_ids: list[int], next_left_id) -> None:
        self.k = k
        self.n = _half(k) + 1
        if len(right_ids) != self.n:
            raise ValueError(f"need exactly {self.n} right vertices")
        self._new_left = next_left_id
        self.v: list[int] = [-1] + list(right_ids)  # v[1..n]
        self.u: list[int] = [-1]  # u[1..t-1]
        self.t = 1
        self.pending: Optional[int] = None  # engine id of the last arrival
        self.finished = False
        self.options: list[str] = []

    @property
    def opt(self) -> int:
        """Offline optimum of this copy's revealed graph (a path)."""
        return len(self.u) - 1

    def check_invariant(self, matching: Matching) -> None:
        for i in range(1, self.t):
            if matching.mate(self.u[i]) != self.v[i + 1]:
                raise ProtocolViolation(
                    f"chain invariant broken: u_{i} is not matched to v_{i + 1}"
                )

    def is_left_perfect(self, matching: Matching) -> bool:
        return all(matching.is_matched(x) for x in self.u[1:])

    def observe(self, matching: Matching) -> None:
        """Classify the engine's response to the last arrival."""
        if self.pending is None:
            return
        t = self.t
        ut = self.pending
        self.pending = None
        mate = matching.mate(ut)
        if mate is None:
            self.options.append("a")
            self.u.append(ut)
            self.finished = True
            return
        if t == self.n:
            raise ProtocolViolation("engine matched the final arrival; its only path exceeds the budget")
        self.u.append(ut)
        if mate == self.v[t + 1] and all(
            matching.mate(self.u[i]) == self.v[i + 1] for i in range(1, t)
        ):
            self.options.append("b")
        elif mate == self.v[t] and all(
            matching.mate(self.u[i]) == self.v[i] for i in range(1, t)
        ) and not matching.is_matched(self.v[t + 1]):
            self.options.append("c")
            # reverse u_1..u_t and v_1..v_{t+1}
            self.u[1 : t + 1] = self.u[t:0:-1]
            self.v[1 : t + 2] = self.v[t + 1 : 0 : -1]
        else:
            raise ProtocolViolation(f"response to u_{t} is none of the options (a), (b), (c)")
        self.t += 1
        if self.t > self.n:
            self.finished = True

    def next_event(self, matching: Matching) -> ArrivalEvent:
        self.observe(matching)
        if self.finished:
            return Stop("copy finished")
        self.check_invariant(matching)
        ut = self._new_left()
        self.pending = ut
        t = self.t
        if t < self.n:
            return VertexArrival(ut, tuple(sorted((self.v[t], self.v[t + 1]))))
        return VertexArrival(ut, (self.v[t],))


class CopiesAdversary:
    """Interleaves ``N`` disjoint vertex-chain copies.

    Each turn advances the lowest-indexed unfinished copy whose part of the
    matching is left-perfect.  With ``N = 1`` this is the base adversary.
    """

    kind = VERTEX_CHAIN

    def __init__(self, k: int, copies: int = 1) -> None:
        if copies < 1:
            raise ValueError("need at least one copy")
        self.k = k
        self.N = copies
        self.n = _half(k) + 1
        self.right = list(range(self.n * copies))
        self._next_left = self.n * copies
        self.copies = [
            VertexChainAdversary(k, self.right[c * self.n : (c + 1) * self.n], self._alloc)
            for c in range(copies)
        ]
        self._active: Optional[VertexChainAdversary] = None

    def _alloc(self) -> int:
        v = self._next_left
        self._next_left += 1
        return v

    def make_engine(self) -> VertexEngine:
        return VertexEngine(self.k, self.right)

    def next_event(self, matching: Matching) -> ArrivalEvent:
        if self._active is not None:
            self._active.observe(matching)
            self._active = None
        for copy in self.copies:
            if not copy.finished and copy.is_left_perfect(matching):
                self._active = copy
                return copy.next_event(matching)
        if all(c.finished for c in self.copies):
            return Stop("all copies finished")
        raise ProtocolViolation("no unfinished copy has a left-perfect matching")

    def opt(self) -> int:
        return sum(c.opt for c in self.copies)

    def benchmark(self, engine: Engine) -> int:
        return self.opt()


class EdgeAdaptiveAdversary:
    """Adaptive-online adversary for edge arrivals over ``(k + 2) N`` vertices.

    Phase 1 reveals ``kN/2`` disjoint edges ``F``.  Then, repeatedly, it picks
    ``k/2`` not-yet-selected matched ``F`` edges (oldest first) and reveals
    the ``k/2 + 1`` connectors that close an augmenting path of length
    ``k + 1`` between two fresh vertices of ``U``; connectors go into the
    adversary's own matching.  It stops once fewer than ``k/2`` unselected
    matched edges remain.
    """

    kind = EDGE_ADAPTIVE

    def __init__(self, k: int, copies: int) -> None:
        self.k = k
        self.h = _half(k)
        self.N = copies
        self.num_vertices = (k + 2) * copies
        self.F: list[Edge] = [(2 * i, 2 * i + 1) for i in range(self.h * copies)]
        self.U = list(range(k * copies, self.num_vertices))
        self._fresh = 0
        self._revealed = 0
        self._queue: list[Edge] = []
        self.selected: set[Edge] = set()
        self.adv_edges: list[Edge] = []
        self.paths: list[list[Edge]] = []
        self.stopped = False

    def make_engine(self) -> EdgeEngine:
        return EdgeEngine(self.k, range(self.num_vertices))

    @property
    def adv(self) -> int:
        return len(self.adv_edges)

    def benchmark(self, engine: Engine) -> int:
        return self.adv

    def _select(self, matching: Matching) -> bool:
        chosen = [e for e in self.F if e in matching and e not in self.selected][: self.h]
        if len(chosen) < self.h:
            return False
        if self._fresh + 2 > len(self.U):
            raise ProtocolViolation("ran out of fresh U vertices")
        u1, u2 = self.U[self._fresh], self.U[self._fresh + 1]
        self._fresh += 2
        self.selected.update(chosen)
        # orient each selected edge (a, b) so the path reads u1 a1 b1 a2 b2 ... u2
        chain = [u1]
        for a, b in chosen:
            chain.extend((a, b))
        chain.append(u2)
        self._queue = [(chain[i], chain[i + 1]) for i in range(0, len(chain), 2)]
        self.paths.append(chosen)
        return True

    def next_event(self, matching: Matching) -> ArrivalEvent:
        if self.stopped:
            return Stop("stopped")
        if self._revealed < len(self.F):
            e = self.F[self._revealed]
            self._revealed += 1
            return EdgeArrival(*e)
        if not self._queue and not self._select(matching):
            self.stopped = True
            return Stop("fewer than k/2 unselected matching edges")
        a, b = self._queue.pop(0)
        self.adv_edges.append(edge_key(a, b))
        return EdgeArrival(a, b)

    def expected_adv(self, alg: int) -> int:
        return (alg // self.h) * (self.h + 1)


class WeightedThreePhaseAdversary:
    """0/1-weight adversary against left-perfect weighted engines with k = 4.

    ``|L| = |R| = 3N``.  Right vertices receive logical names ``v_1..v_3N``
    as the game proceeds (``names[i]`` is the engine id of ``v_i``).
    """

    kind = WEIGHTED_3PHASE

    def __init__(self, copies: int) -> None:
        if copies < 1:
            raise ValueError("N must be >= 1")
        self.N = copies
        self.right = list(range(3 * copies))
        self.names: list[int] = [-1]  # names[i] = engine id of v_i
        self.u: list[int] = [-1]  # u[t] = engine id of the t-th arrival
        self.t = 0
        self._matched_before: frozenset[int] = frozenset()
        self.renamed: list[int] = []  # phase-3 times at which a swap happened

    def make_engine(self) -> WeightedEngine:
        return WeightedEngine(self.right, 4)

    def benchmark(self, engine: Engine) -> Fraction:
        return Fraction(max_weight_left_perfect(engine.graph, engine.graph.left()).value)

    def _weights(self, ones: set[int]) -> tuple[Fraction, ...]:
        return tuple(Fraction(1) if r in ones else Fraction(0) for r in self.right)

    def next_event(self, matching: Matching) -> ArrivalEvent:
        N = self.N
        matched_r = frozenset(r for r in self.right if matching.is_matched(r))
        if 1 <= self.t <= N:
            newly = matched_r - self._matched_before
            if len(newly) != 1:
                raise ProtocolViolation(f"expected one newly matched right vertex at time {self.t}")
            self.names.append(next(iter(newly)))
        self._matched_before = matched_r
        if self.t == 3 * N:
            return Stop("three phases complete")
        self.t += 1
        t = self.t
        ut = 3 * N + t - 1
        self.u.append(ut)

        if t <= N:
            ones: set[int] = set()
        elif t <= 2 * N:
            named = set(self.names[1:])
            pool = [r for r in self.right if r not in named]
            busy = [r for r in pool if r in matched_r]
            self.names.append(busy[0] if busy else pool[0])
            ones = {self.names[t - N], self.names[t]}
        else:
            a, b = t - 2 * N, t - N
            ua = self.u[t - N]
            va, vb = self.names[a], self.names[b]
            if matching.mate(ua) == va:
                self.names[a], self.names[b] = vb, va
                self.renamed.append(t)
            ones = {self.names[b]}
        return VertexArrival(ut, tuple(self.right), self._weights(ones))

    def weight_one_triples(self) -> list[tuple[Edge, Edge, Edge]]:
        """``E_t`` for every phase-3 time t (after renaming)."""
        N = self.N
        out = []
        for t in range(2 * N + 1, min(self.t, 3 * N) + 1):
            a, b = t - 2 * N, t - N
            out.append((
                edge_key(self.u[t - N], self.names[a]),
                edge_key(self.u[t - N], self.names[b]),
                edge_key(self.u[t], self.names[b]),
            ))
        return out


Adversary = Union[CopiesAdversary, EdgeAdaptiveAdversary, WeightedThreePhaseAdversary]


@dataclass
class GameTranscript:
    kind: str
    k: int
    N: int
    steps: list[StepRecord] = field(default_factory=list)
    matchings: list[Matching] = field(default_factory=list)
    alg: Union[int, Fraction] = 0
    benchmark: Union[int, Fraction] = 0
    stop_reason: str = ""

    @property
    def ratio(self) -> Fraction:
        if self.benchmark == 0:
            return Fraction(1)
        return Fraction(self.alg) / Fraction(self.benchmark)


def make_adversary(kind: str, k: int, N: int) -> Adversary:
    if kind == VERTEX_CHAIN:
        return CopiesAdversary(k, N)
    if kind == EDGE_ADAPTIVE:
        return EdgeAdaptiveAdversary(k, N)
    if kind == WEIGHTED_3PHASE:
        if k != 4:
            raise ValueError("the weighted adversary is defined for k = 4")
        return WeightedThreePhaseAdversary(N)
    raise ValueError(f"unknown adversary kind {kind!r}")


def play(adversary: Adversary, engine: Optional[Engine] = None, max_steps: int = 1_000_000) -> GameTranscript:
    """Run ``engine`` (default: the adversary's natural opponent) to the end."""
    if engine is None:
        engine = adversary.make_engine()
    tr = GameTranscript(adversary.kind, engine.k, getattr(adversary, "N", 1))
    for _ in range(max_steps):
        event = adversary.next_event(engine.matching)
        if isinstance(event, Stop):
            tr.stop_reason = event.reason
            break
        rec = engine.step(event)
        tr.steps.append(rec)
        tr.matchings.append(engine.matching)
    else:
        raise ProtocolViolation("game did not terminate")
    tr.alg = engine.value()
    tr.benchmark = adversary.benchmark(engine)
    return tr
