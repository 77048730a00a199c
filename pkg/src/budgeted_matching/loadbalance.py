"""Guess-and-double load balancing on top of the budgeted vertex engine.

Clients arrive with the set of servers they may use.  The balancer keeps a
guess ``g`` of the optimal maximum load.  After each arrival it recomputes
the exact offline optimum ``LB`` of everything seen so far; while
``LB > g`` it sets ``g = max(2g, LB)`` and opens a new phase with ``g``
fresh slots on every server.  Each phase is an independent run of
:class:`~budgeted_matching.engines.VertexEngine` on its own slot graph, and
a client is offered every slot (of the current phase) on its allowed
servers.  Server capacity is therefore the sum of all guesses issued so
far, and clients placed in earlier phases keep their slots.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .core import VertexArrival
from .engines import StepRecord, VertexEngine
from .oracle import feasible_load


@dataclass
class Phase:
    guess: int
    engine: VertexEngine
    slot_server: dict[int, int]  # slot id -> server
    server_slots: dict[int, list[int]]
    clients: dict[int, int] = field(default_factory=dict)  # engine id -> client index


@dataclass(frozen=True)
class ArrivalDecision:
    client: int
    assigned: bool
    server: Optional[int]
    phase: int
    reassignments: int
    step: StepRecord


@dataclass(frozen=True)
class LoadReport:
    max_load: int
    opt_load: int
    assigned_fraction: Fraction
    doublings: list[int]
    assigned: int
    clients: int


class LoadBalancer:
    def __init__(self, servers: Iterable[int], k: int) -> None:
        self.servers = sorted(set(servers))
        if not self.servers:
            raise ValueError("need at least one server")
        self.k = k
        self.guess = 0
        self.lower_bound = 0
        self.history: list[int] = []
        self.phases: list[Phase] = []
        self.clients: list[frozenset[int]] = []
        self.decisions: list[ArrivalDecision] = []
        self._next_id = 0

    def _ids(self, count: int) -> list[int]:
        out = list(range(self._next_id, self._next_id + count))
        self._next_id += count
        return out

    def _open_phase(self) -> None:
        slots = self._ids(self.guess * len(self.servers))
        slot_server = {}
        server_slots: dict[int, list[int]] = {s: [] for s in self.servers}
        it = iter(slots)
        for s in self.servers:
            for _ in range(self.guess):
                sid = next(it)
                slot_server[sid] = s
                server_slots[s].append(sid)
        self.phases.append(Phase(self.guess, VertexEngine(self.k, slots), slot_server, server_slots))

    def _update_lower_bound(self) -> None:
        # the optimum only grows as clients arrive
        lb = max(self.lower_bound, 1)
        while not feasible_load(self.clients, self.servers, lb):
            lb += 1
        self.lower_bound = lb

    def arrive(self, allowed: Iterable[int]) -> ArrivalDecision:
        allowed = frozenset(allowed)
        if not allowed:
            raise ValueError("a client needs at least one allowed server")
        unknown = allowed.difference(self.servers)
        if unknown:
            raise ValueError(f"unknown servers {sorted(unknown)}")
        index = len(self.clients)
        self.clients.append(allowed)
        self._update_lower_bound()
        while self.lower_bound > self.guess:
            self.guess = max(2 * self.guess, self.lower_bound)
            self.history.append(self.guess)
            self._open_phase()

        phase = self.phases[-1]
        cid = self._ids(1)[0]
        phase.clients[cid] = index
        nbrs = tuple(sorted(sid for s in allowed for sid in phase.server_slots[s]))
        rec = phase.engine.step(VertexArrival(cid, nbrs))
        slot = phase.engine.matching.mate(cid)
        decision = ArrivalDecision(
            client=index,
            assigned=slot is not None,
            server=None if slot is None else phase.slot_server[slot],
            phase=len(self.phases) - 1,
            reassignments=rec.delta.size,
            step=rec,
        )
        self.decisions.append(decision)
        return decision

    def assignment(self) -> dict[int, int]:
        """Client index -> server for every assigned client."""
        out = {}
        for phase in self.phases:
            for cid, index in phase.clients.items():
                slot = phase.engine.matching.mate(cid)
                if slot is not None:
                    out[index] = phase.slot_server[slot]
        return out

    def loads(self) -> dict[int, int]:
        loads = {s: 0 for s in self.servers}
        for server in self.assignment().values():
            loads[server] += 1
        return loads

    def capacity(self) -> int:
        return sum(self.history)

    def report(self) -> LoadReport:
        assigned = len(self.assignment())
        total = len(self.clients)
        return LoadReport(
            max_load=max(self.loads().values(), default=0),
            opt_load=self.lower_bound if total else 0,
            assigned_fraction=Fraction(assigned, total) if total else Fraction(1),
            doublings=list(self.history),
            assigned=assigned,
            clients=total,
        )


def run_loadbalance(servers: Iterable[int], clients: Iterable[Iterable[int]], k: int) -> LoadBalancer:
    lb = LoadBalancer(servers, k)
    for allowed in clients:
        lb.arrive(allowed)
    return lb
