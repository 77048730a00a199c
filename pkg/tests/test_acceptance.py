"""Acceptance suite: every criterion runs at zero tolerance.

Each test records a PASS/FAIL line that the terminal summary prints at the
end of the session.  Engine runs are cached so that the parity/budget/
commitment audit (criterion 9) inspects exactly the steps taken by the
other criteria.
"""

import random
import time
from fractions import Fraction
from functools import lru_cache

from budgeted_matching.adversaries import CopiesAdversary, EdgeAdaptiveAdversary, WeightedThreePhaseAdversary
from budgeted_matching.augpath import decompose_pq, enumerate_augmenting_paths, ratio_bound
from budgeted_matching.core import Stop, is_augmenting, path_edges
from budgeted_matching.engines import ArbitraryPathEngine, EdgeEngine, VertexEngine, WeightedEngine
from budgeted_matching.generators import (
    random_edge_instance,
    random_loadbalance_instance,
    random_vertex_instance,
    random_weighted_instance,
    short_path_witness_instance,
)
from budgeted_matching.harness import HOLDS, VIOLATED, check_weighted_run, run_instance
from budgeted_matching.loadbalance import run_loadbalance
from budgeted_matching.oracle import (
    assignment_exhaustive,
    brute_force_enumerate,
    max_cardinality_matching,
    max_weight_left_perfect,
    optimal_max_load,
)

from helpers import criterion, random_graph, random_pq_triple

KS = (2, 4, 6, 8)


def audit(engine):
    """(steps, problems) for the parity/budget/commitment rules."""
    problems = []
    prev = frozenset()
    for rec in engine.history:
        d = rec.delta
        if d.size % 2 or d.size > engine.k:
            problems.append(f"t={rec.t}: delta size {d.size} with k={engine.k}")
        now = d.matching.matched_vertices()
        if not prev <= now:
            problems.append(f"t={rec.t}: {sorted(prev - now)} became exposed")
        prev = now
    return len(engine.history), problems


# ---------------------------------------------------------------- corpora


@lru_cache(maxsize=None)
def vertex_corpus():
    out = []
    for seed in range(200):
        rng = random.Random(seed)
        left, right = rng.randint(1, 14), rng.randint(1, 14)
        out.append(random_vertex_instance(rng, left, right, rng.uniform(0.05, 0.5), 2))
    return out


@lru_cache(maxsize=None)
def edge_corpus():
    out = []
    for seed in range(200):
        rng = random.Random(10_000 + seed)
        n = rng.randint(2, 12)
        out.append(random_edge_instance(rng, n, rng.uniform(0.1, 0.5), 2, bipartite=seed % 4 == 0))
    return out


@lru_cache(maxsize=None)
def vertex_runs():
    """Per (k, instance): engine, short-path violations, elapsed seconds."""
    start = time.perf_counter()
    runs = []
    for k in KS:
        for idx, inst in enumerate(vertex_corpus()):
            e = VertexEngine(k, inst.right_ids)
            bad = []
            for ev in inst.events:
                e.step(ev)
                found = enumerate_augmenting_paths(e.graph, e.matching, k - 1)
                if found:
                    bad.append((idx, e.t, found[0]))
            runs.append((k, idx, e, bad))
    return runs, time.perf_counter() - start


@lru_cache(maxsize=None)
def edge_runs():
    runs = []
    for k in KS:
        for idx, inst in enumerate(edge_corpus()):
            e = EdgeEngine(k, range(inst.vertices))
            for ev in inst.events:
                e.step(ev)
            runs.append((k, idx, e))
    return runs


@lru_cache(maxsize=None)
def chain_runs():
    out = {}
    for k, N in [(4, 1), (4, 50)] + [(k, 1) for k in range(2, 11, 2)]:
        adv = CopiesAdversary(k, N)
        e = adv.make_engine()
        while not isinstance(ev := adv.next_event(e.matching), Stop):
            e.step(ev)
        out[(k, N)] = (e, e.value(), adv.opt(), max_cardinality_matching(e.graph).value)
    return out


@lru_cache(maxsize=None)
def edge_adaptive_runs():
    out = {}
    for k in (4, 6):
        for N in (3, 10):
            adv = EdgeAdaptiveAdversary(k, N)
            e = adv.make_engine()
            f_left = []
            ever = set()
            while not isinstance(ev := adv.next_event(e.matching), Stop):
                e.step(ev)
                for f in adv.F:
                    if f in e.matching:
                        ever.add(f)
                    elif f in ever:
                        f_left.append((e.t, f))
            out[(k, N)] = (adv, e, f_left)
    return out


@lru_cache(maxsize=None)
def weighted_runs():
    out = []
    for seed in range(200):
        rng = random.Random(20_000 + seed)
        right = rng.randint(1, 8)
        left = rng.randint(1, min(6, right))
        inst = random_weighted_instance(rng, left, right)
        e = WeightedEngine(inst.right_ids)
        for ev in inst.events:
            e.step(ev)
        out.append(e)
    return out


@lru_cache(maxsize=None)
def three_phase_runs():
    out = {}
    for N in (4, 25, 100):
        adv = WeightedThreePhaseAdversary(N)
        e = adv.make_engine()
        while not isinstance(ev := adv.next_event(e.matching), Stop):
            e.step(ev)
        out[N] = (e, e.value(), adv.benchmark(e))
    return out


@lru_cache(maxsize=None)
def witness_runs():
    out = {}
    for k in (6, 8):
        inst = short_path_witness_instance(k)
        arb = ArbitraryPathEngine(k, inst.right_ids)
        short = VertexEngine(k, inst.right_ids)
        for i, ev in enumerate(inst.events):
            arb.step(ev, inst.forced.get(i))
            short.step(ev)
        out[k] = (inst, arb, short)
    return out


@lru_cache(maxsize=None)
def loadbalance_runs():
    start = time.perf_counter()
    out = []
    for seed in range(100):
        rng = random.Random(30_000 + seed)
        inst = random_loadbalance_instance(rng, rng.randint(1, 30), rng.randint(1, 6), 4)
        servers = list(range(inst.servers))
        for k in (2, 4, 6):
            lb = run_loadbalance(servers, inst.clients, k)
            out.append((seed, k, lb, optimal_max_load(inst.clients, servers)))
    return out, time.perf_counter() - start


# ---------------------------------------------------------------- criteria


def test_criterion_01_short_path_free_after_every_step():
    with criterion(1, "no augmenting path of length <= k-1 after any vertex arrival") as note:
        runs, elapsed = vertex_runs()
        bad = [b for *_, e_bad in runs for b in e_bad]
        assert not bad, f"{len(bad)} steps with short paths, first {bad[0]}"
        steps = sum(len(e.history) for _, _, e, _ in runs)
        note.append(f"{len(runs)} runs, {steps} steps, {elapsed:.1f}s")
        assert elapsed < 30, f"took {elapsed:.1f}s"


def test_criterion_02_ratio_lower_bound():
    with criterion(2, "final |M| >= (1 - 2/(k+2)) * OPT on vertex and edge corpora") as note:
        bad = []
        runs, _ = vertex_runs()
        for k, idx, e, _ in runs:
            opt = max_cardinality_matching(e.graph).value
            if Fraction(e.value()) < ratio_bound(k) * opt:
                bad.append(("vertex", k, idx, e.value(), opt))
        for k, idx, e in edge_runs():
            res = max_cardinality_matching(e.graph)
            if Fraction(e.value()) < ratio_bound(k) * res.value:
                bad.append(("edge", k, idx, e.value(), res.value))
        assert not bad, f"{len(bad)} violations, first {bad[0]}"
        note.append(f"{len(runs)} vertex + {len(edge_runs())} edge runs")


def test_criterion_03_vertex_chain_reproduction():
    with criterion(3, "vertex-chain adversary ratios") as note:
        runs = chain_runs()
        _, alg, opt, oracle = runs[(4, 1)]
        assert (alg, opt, oracle) == (2, 3, 3)
        assert Fraction(alg, opt) == Fraction(2, 3)
        _, alg, opt, oracle = runs[(4, 50)]
        assert opt == oracle
        assert Fraction(alg, opt) == Fraction(opt - 50, opt)
        assert Fraction(alg, opt) <= Fraction(2, 3)
        note.append(f"N=50: {alg}/{opt}")
        for k in range(2, 11, 2):
            n = k // 2 + 1
            _, alg, opt, oracle = runs[(k, 1)]
            assert opt == oracle
            assert Fraction(alg, opt) == Fraction(n - 1, n), f"k={k}: {alg}/{opt}"


def test_criterion_04_edge_adaptive_reproduction():
    with criterion(4, "edge-adaptive ADV identity, ratio bound, F edges kept") as note:
        for (k, N), (adv, e, f_left) in edge_adaptive_runs().items():
            alg = e.value()
            assert adv.adv == (alg // (k // 2)) * (k // 2 + 1), f"k={k} N={N}"
            assert Fraction(alg, adv.adv) <= Fraction(k, k + 2) + Fraction(1, N)
            assert not f_left, f"k={k} N={N}: {f_left[0]}"
            note.append(f"k={k},N={N}: {alg}/{adv.adv}")


def test_criterion_05_weighted_half_and_instrumentation():
    with criterion(5, "weighted: 2*ALG >= OPT, gain inequality, loss monotonicity") as note:
        problems = []
        for i, e in enumerate(weighted_runs()):
            best = max_weight_left_perfect(e.graph, e.graph.left())
            if 2 * e.value() < best.value:
                problems.append(f"run {i}: {e.value()} vs {best.value}")
            problems += [f"run {i}: {p}" for p in check_weighted_run(e)]
        assert not problems, f"{len(problems)} problems, first {problems[0]}"
        note.append(f"{len(weighted_runs())} runs")


def test_criterion_06_weighted_three_phase():
    with criterion(6, "weighted 3-phase adversary caps weight at N+1 with OPT = 2N") as note:
        for N, (_, alg, opt) in three_phase_runs().items():
            assert alg <= N + 1, f"N={N}: {alg}"
            assert opt == 2 * N, f"N={N}: {opt}"
            note.append(f"N={N}: {alg}/{opt}")
        _, alg, opt = three_phase_runs()[100]
        assert Fraction(alg) / opt <= Fraction(101, 200)


def test_criterion_07_decompose_pq_properties():
    with criterion(7, "decompose_pq on 1000 random (graph, M, P, Q) triples") as note:
        rng = random.Random(40_000)
        done = nonbip = 0
        failures = []
        while done < 1000:
            triple = random_pq_triple(rng, max_n=12)
            if triple is None:
                continue
            g, m, p, q = triple
            done += 1
            nonbip += not g.bipartite
            x, y = decompose_pq(m, p, q)
            ex, ey = set(path_edges(x)), set(path_edges(y))
            ok = (
                not ex & ey
                and ex | ey <= set(path_edges(p)) | set(path_edges(q))
                and sorted([x[0], x[-1], y[0], y[-1]]) == sorted([p[0], p[-1], q[0], q[-1]])
                and is_augmenting(m, x, g.has_edge)
                and is_augmenting(m, y, g.has_edge)
            )
            if not ok:
                failures.append((m, p, q, x, y))
        assert not failures, f"{len(failures)} failures, first {failures[0]}"
        assert nonbip > 0
        note.append(f"{done} triples, {nonbip} on nonbipartite graphs")


def test_criterion_08_arbitrary_path_leaves_length_five():
    with criterion(8, "scripted arbitrary-path run is VIOLATED, shortest-path run HOLDS") as note:
        for k, (inst, arb, short) in witness_runs().items():
            left = enumerate_augmenting_paths(arb.graph, arb.matching, k - 1)
            assert [len(p) - 1 for p in left] == [5], f"k={k}: {left}"
            assert enumerate_augmenting_paths(short.graph, short.matching, k - 1) == []
            assert run_instance(inst, "arbitrary", verify=True).verdict == VIOLATED
            assert run_instance(inst, "shortest", verify=True).verdict == HOLDS
            note.append(f"k={k}: path {left[0]}")


def test_criterion_09_parity_budget_commitment():
    with criterion(9, "every delta even, <= k, and no matched vertex exposed") as note:
        engines = [e for *_, e, _ in vertex_runs()[0]]
        engines += [e for *_, e in edge_runs()]
        engines += [r[0] for r in chain_runs().values()]
        engines += [r[1] for r in edge_adaptive_runs().values()]
        engines += weighted_runs()
        engines += [r[0] for r in three_phase_runs().values()]
        for _, arb, short in witness_runs().values():
            engines += [arb, short]
        for *_, lb, _ in loadbalance_runs()[0]:
            engines += [ph.engine for ph in lb.phases]
        total, problems = 0, []
        for e in engines:
            steps, bad = audit(e)
            total += steps
            problems += bad
        assert total > 0
        assert not problems, f"{len(problems)} problems, first {problems[0]}"
        note.append(f"{len(engines)} engines, {total} steps")


def test_criterion_10_load_balancing():
    with criterion(10, "load balancing: max load <= 4*OPT, assigned fraction >= 1 - 2/(k+2)") as note:
        runs, elapsed = loadbalance_runs()
        bad = []
        for seed, k, lb, opt in runs:
            rep = lb.report()
            if rep.opt_load != opt:
                bad.append((seed, k, "opt", rep.opt_load, opt))
            if rep.max_load > 4 * opt:
                bad.append((seed, k, "load", rep.max_load, opt))
            if rep.assigned_fraction < ratio_bound(k):
                bad.append((seed, k, "fraction", rep.assigned_fraction))
        assert not bad, f"{len(bad)} problems, first {bad[0]}"
        note.append(f"{len(runs)} runs, {elapsed:.1f}s")
        assert elapsed < 60


def test_criterion_11_oracle_cross_validation():
    with criterion(11, "oracles agree with brute force") as note:
        rng = random.Random(50_000)
        for i in range(500):
            n = rng.randint(0, 10)
            g = random_graph(rng, n, rng.uniform(0.1, 0.9), bipartite=rng.random() < 0.3)
            brute = max((len(m) for m in brute_force_enumerate(g, bound=45)), default=0)
            assert max_cardinality_matching(g).value == brute, f"graph {i}"
        from budgeted_matching.core import LEFT, RIGHT, Graph

        for i in range(200):
            left = rng.randint(1, 6)
            right = rng.randint(left, 8)
            rows = [[Fraction(rng.randint(0, 12), rng.randint(1, 5)) for _ in range(right)] for _ in range(left)]
            g = Graph(bipartite=True)
            for r in range(right):
                g.add_vertex(r, RIGHT)
            for a, row in enumerate(rows):
                g.add_vertex(right + a, LEFT)
                for r, w in enumerate(row):
                    g.add_edge(right + a, r, w)
            expected = assignment_exhaustive(rows)[0]
            for method in ("auto", "hungarian"):
                got = max_weight_left_perfect(g, g.left(), method=method)
                assert got.value == expected, f"instance {i} ({method})"
                assert got.witness.weight(g) == got.value
        note.append("500 graphs, 200 assignment instances")
