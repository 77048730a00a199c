"""Seeded random instance generators and scripted instances."""

from __future__ import annotations

import random
from fractions import Fraction

from .core import EdgeArrival, VertexArrival
from .instance_io import Instance


def random_vertex_instance(
    rng: random.Random, left: int, right: int, density: float, k: int
) -> Instance:
    """Bipartite vertex arrivals; left ids follow the right ids."""
    inst = Instance("vertex", k, right=right)
    for i in range(left):
        nbrs = tuple(r for r in range(right) if rng.random() < density)
        inst.events.append(VertexArrival(right + i, nbrs))
    return inst


def random_general_vertex_instance(rng: random.Random, n: int, density: float, k: int) -> Instance:
    """Nonbipartite vertex arrivals: vertex i sees edges to vertices < i."""
    inst = Instance("vertex-general", k)
    for v in range(n):
        nbrs = tuple(w for w in range(v) if rng.random() < density)
        inst.events.append(VertexArrival(v, nbrs))
    return inst


def random_edge_instance(
    rng: random.Random, n: int, density: float, k: int, bipartite: bool = False
) -> Instance:
    """Edge arrivals in random order over ``n`` declared vertices.

    With ``bipartite`` the vertices split into evens and odds.
    """
    pairs = [
        (a, b)
        for a in range(n)
        for b in range(a + 1, n)
        if (not bipartite or (a + b) % 2 == 1) and rng.random() < density
    ]
    rng.shuffle(pairs)
    inst = Instance("edge", k, vertices=n)
    inst.events = [EdgeArrival(a, b) if rng.random() < 0.5 else EdgeArrival(b, a) for a, b in pairs]
    return inst


def random_weighted_instance(
    rng: random.Random, left: int, right: int, max_num: int = 10, max_den: int = 4
) -> Instance:
    if left > right:
        raise ValueError("left-perfect instances need left <= right")
    inst = Instance("weighted", 4, right=right)
    for i in range(left):
        weights = tuple(Fraction(rng.randint(0, max_num), rng.randint(1, max_den)) for _ in range(right))
        inst.events.append(VertexArrival(right + i, tuple(range(right)), weights))
    return inst


def random_loadbalance_instance(rng: random.Random, clients: int, servers: int, k: int) -> Instance:
    inst = Instance("loadbalance", k, servers=servers)
    for _ in range(clients):
        size = rng.randint(1, servers)
        inst.clients.append(frozenset(rng.sample(range(servers), size)))
    return inst


def short_path_witness_instance(k: int) -> Instance:
    """Scripted run where a legal but non-shortest path choice leaves an
    augmenting path of length 5 behind (meaningful for ``k > 4``).

    With ``l = k/2 + 1``: arrivals ``u_1..u_{l-1}`` see ``v_t, v_{t+1}`` and
    are forced onto ``v_{t+1}``; ``u_l`` sees only ``v_l`` and cannot be
    matched; ``u_{l+1}`` sees ``v_{l-1}, v_{l+1}`` and is forced along the
    long path ending at ``v_1``.  Right ids: ``v_i -> i - 1``; left ids:
    ``u_t -> l + t``.
    """
    if k < 4 or k % 2:
        raise ValueError("k must be even and >= 4")
    ell = k // 2 + 1

    def v(i: int) -> int:
        return i - 1

    def u(t: int) -> int:
        return ell + t

    inst = Instance("vertex", k, right=ell + 1)
    for t in range(1, ell):
        inst.events.append(VertexArrival(u(t), (v(t), v(t + 1))))
        inst.forced[len(inst.events) - 1] = (u(t), v(t + 1))
    inst.events.append(VertexArrival(u(ell), (v(ell),)))
    inst.events.append(VertexArrival(u(ell + 1), (v(ell - 1), v(ell + 1))))
    path = [u(ell + 1), v(ell - 1)]
    for j in range(ell - 2, 0, -1):
        path += [u(j), v(j)]
    inst.forced[len(inst.events) - 1] = tuple(path)
    return inst


def short_path_witness_vertices(k: int) -> tuple[int, ...]:
    """The length-5 augmenting path left behind by the forced script."""
    ell = k // 2 + 1
    return (ell + ell, ell - 1, ell + ell - 1, ell - 2, ell + ell + 1, ell)
