"""Replay instances through the engines, run adversary duels, check the
per-step guarantees, and emit CSV.

CSV columns are fixed: ``t,event,action,path_len,alg_value,opt_value,
ratio_num,ratio_den``.  Ratios are exact (lowest terms); ``OPT = 0`` is
reported as ratio 1/1.  In edge-adaptive duels ``opt_value`` holds the
adversary's own online solution rather than the offline optimum.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, TextIO, Union

from .adversaries import (
    EDGE_ADAPTIVE,
    VERTEX_CHAIN,
    WEIGHTED_3PHASE,
    EdgeAdaptiveAdversary,
    WeightedThreePhaseAdversary,
    make_adversary,
)
from .augpath import enumerate_augmenting_paths, ratio_bound
from .core import EdgeArrival, Graph, Matching, VertexArrival
from .engines import (
    ArbitraryPathEngine,
    EdgeEngine,
    Engine,
    StepRecord,
    VertexEngine,
    WeightedEngine,
)
from .errors import ModelMismatch
from .instance_io import Instance, format_event
from .loadbalance import LoadReport, run_loadbalance
from .oracle import (
    IncrementalAssignment,
    IncrementalBipartiteMatching,
    max_cardinality_matching,
    max_weight_left_perfect,
)

CSV_COLUMNS = ["t", "event", "action", "path_len", "alg_value", "opt_value", "ratio_num", "ratio_den"]
HOLDS = "HOLDS"
VIOLATED = "VIOLATED"

Number = Union[int, Fraction]


@dataclass(frozen=True)
class RunRow:
    t: int
    event: str
    action: str
    path_len: int
    alg_value: Number
    opt_value: Number

    @property
    def ratio(self) -> Fraction:
        if self.opt_value == 0:
            return Fraction(1)
        return Fraction(self.alg_value) / Fraction(self.opt_value)


@dataclass
class RunReport:
    rows: list[RunRow] = field(default_factory=list)
    alg: Number = 0
    opt: Number = 0
    violations: list[str] = field(default_factory=list)
    verified: bool = False
    summary: dict[str, object] = field(default_factory=dict)

    @property
    def ratio(self) -> Fraction:
        if self.opt == 0:
            return Fraction(1)
        return Fraction(self.alg) / Fraction(self.opt)

    @property
    def verdict(self) -> str:
        return VIOLATED if self.violations else HOLDS


def _fmt(x: Number) -> str:
    return str(Fraction(x))


def write_csv(report: RunReport, fh: TextIO) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for row in report.rows:
        r = row.ratio
        w.writerow([row.t, row.event, row.action, row.path_len, _fmt(row.alg_value),
                    _fmt(row.opt_value), r.numerator, r.denominator])


def csv_text(report: RunReport) -> str:
    buf = io.StringIO()
    write_csv(report, buf)
    return buf.getvalue()


class OptTracker:
    """Offline optimum of the revealed graph, updated after every step."""

    def __init__(self, engine: Engine) -> None:
        self.engine = engine
        self._bip: Optional[IncrementalBipartiteMatching] = None
        self._assign: Optional[IncrementalAssignment] = None
        if isinstance(engine, WeightedEngine):
            self._assign = IncrementalAssignment(len(engine.right))
        elif isinstance(engine, VertexEngine) and engine.graph.bipartite:
            self._bip = IncrementalBipartiteMatching()

    def update(self, rec: StepRecord) -> Number:
        ev = rec.event
        if self._assign is not None:
            w = ev.weight_map()
            self._assign.add_row([w[r] for r in self.engine.right])
            return self._assign.value
        if self._bip is not None:
            self._bip.add_left(ev.vertex, list(self.engine.graph.neighbors(ev.vertex)))
            return len(self._bip)
        return max_cardinality_matching(self.engine.graph).value


def build_engine(inst: Instance, engine_kind: str = "shortest") -> Engine:
    if engine_kind not in ("shortest", "arbitrary"):
        raise ValueError(f"unknown engine kind {engine_kind!r}")
    if engine_kind == "arbitrary" and inst.model != "vertex":
        raise ModelMismatch("the arbitrary-path engine only runs bipartite vertex instances")
    if inst.model == "vertex":
        cls = ArbitraryPathEngine if engine_kind == "arbitrary" else VertexEngine
        return cls(inst.k, inst.right_ids)
    if inst.model == "vertex-general":
        return VertexEngine(inst.k)
    if inst.model == "edge":
        return EdgeEngine(inst.k, range(inst.vertices or 0))
    if inst.model == "weighted":
        return WeightedEngine(inst.right_ids, inst.k)
    raise ModelMismatch(f"model {inst.model!r} is not an online matching instance")


def _short_path_violation(engine: Engine, t: int) -> Optional[str]:
    paths = enumerate_augmenting_paths(engine.graph, engine.matching, engine.max_edges)
    if not paths:
        return None
    p = paths[0]
    return f"step {t}: augmenting path of length {len(p) - 1} <= {engine.max_edges}: {list(p)}"


def check_weighted_run(engine: WeightedEngine) -> list[str]:
    """Per-step gain and loss-monotonicity checks plus the end-of-run
    telescoping and half-of-optimum checks, against one fixed optimum."""
    problems = []
    graph = engine.graph
    arrived = graph.left()
    best = max_weight_left_perfect(graph, arrived)
    opt_mate = best.witness
    final_losses = engine.losses()
    tables = [rec.losses for rec in engine.history] + [final_losses]
    for rec in engine.history:
        u = rec.event.vertex
        v = opt_mate.mate(u)
        bound = graph.weight(u, v) - rec.losses[v]
        if rec.profit < bound:
            problems.append(f"step {rec.t}: profit {rec.profit} below gain bound {bound}")
    for i in range(len(tables) - 1):
        for v, loss in tables[i].items():
            if tables[i + 1][v] < loss:
                problems.append(f"step {i + 1}: loss of {v} fell from {loss} to {tables[i + 1][v]}")
    total = sum((rec.profit for rec in engine.history), Fraction(0))
    if total != engine.value():
        problems.append(f"profits sum to {total}, matching weighs {engine.value()}")
    if 2 * engine.value() < best.value:
        problems.append(f"weight {engine.value()} is below half of the optimum {best.value}")
    return problems


def _step_checks(engine: Engine, rec: StepRecord, prev: Matching) -> list[str]:
    out = []
    d = rec.delta
    if d.size % 2 or d.size > engine.k:
        out.append(f"step {rec.t}: delta of size {d.size} with budget {engine.k}")
    lost = [v for v in prev.matched_vertices() if not engine.matching.is_matched(v)]
    if lost:
        out.append(f"step {rec.t}: vertices {sorted(lost)} lost their mates")
    return out


def run_instance(inst: Instance, engine_kind: str = "shortest", verify: bool = False) -> RunReport:
    engine = build_engine(inst, engine_kind)
    tracker = OptTracker(engine)
    report = RunReport(verified=verify)
    for i, ev in enumerate(inst.events):
        prev = engine.matching
        if isinstance(engine, ArbitraryPathEngine):
            rec = engine.step(ev, inst.forced.get(i))
        else:
            rec = engine.step(ev)
        opt = tracker.update(rec)
        report.rows.append(RunRow(
            rec.t, format_event(ev), "augment" if rec.path else "idle",
            rec.path_len, engine.value(), opt,
        ))
        if verify:
            report.violations += _step_checks(engine, rec, prev)
            if not isinstance(engine, WeightedEngine):
                msg = _short_path_violation(engine, rec.t)
                if msg:
                    report.violations.append(msg)
    report.alg = engine.value()
    report.opt = report.rows[-1].opt_value if report.rows else 0
    if verify:
        if isinstance(engine, WeightedEngine):
            if engine.history:
                report.violations += check_weighted_run(engine)
        elif Fraction(report.alg) < ratio_bound(engine.k) * report.opt:
            report.violations.append(
                f"final size {report.alg} below (1 - 2/(k+2)) * OPT = {ratio_bound(engine.k) * report.opt}"
            )
    report.summary = {"model": inst.model, "k": inst.k, "engine": engine_kind}
    return report


def run_duel(kind: str, k: int, N: int, seed: int = 0) -> RunReport:
    """Couple the matching engine with an adversary.  The adversaries are
    deterministic, so ``seed`` is accepted only for interface symmetry."""
    adversary = make_adversary(kind, k, N)
    engine = adversary.make_engine()
    tracker = OptTracker(engine)
    report = RunReport(verified=True)
    f_ever_matched: set = set()
    while True:
        ev = adversary.next_event(engine.matching)
        if not isinstance(ev, (VertexArrival, EdgeArrival)):
            break
        prev = engine.matching
        rec = engine.step(ev)
        report.violations += _step_checks(engine, rec, prev)
        if isinstance(adversary, EdgeAdaptiveAdversary):
            bench: Number = adversary.adv
            for e in adversary.F:
                if e in f_ever_matched and e not in engine.matching:
                    report.violations.append(f"step {rec.t}: F edge {e} left the matching")
                if e in engine.matching:
                    f_ever_matched.add(e)
        else:
            bench = tracker.update(rec)
        report.rows.append(RunRow(
            rec.t, format_event(ev), "augment" if rec.path else "idle",
            rec.path_len, engine.value(), bench,
        ))
    report.alg = engine.value()
    report.opt = adversary.benchmark(engine)
    if report.rows and report.rows[-1].opt_value != report.opt:
        report.violations.append("incremental optimum disagrees with the final oracle value")
    report.summary = {"adversary": kind, "k": k, "N": N, "seed": seed}
    if kind == VERTEX_CHAIN:
        if report.alg > report.opt - N:
            report.violations.append(f"ALG {report.alg} exceeds OPT - N = {report.opt - N}")
    elif kind == EDGE_ADAPTIVE:
        expected = adversary.expected_adv(report.alg)
        report.summary["paths"] = len(adversary.paths)
        if report.opt != expected:
            report.violations.append(f"ADV {report.opt} differs from floor(ALG/(k/2))*(k/2+1) = {expected}")
    elif kind == WEIGHTED_3PHASE:
        assert isinstance(adversary, WeightedThreePhaseAdversary)
        if report.alg > N + 1:
            report.violations.append(f"weight {report.alg} exceeds N + 1 = {N + 1}")
        if report.opt != 2 * N:
            report.violations.append(f"instance optimum {report.opt} differs from 2N = {2 * N}")
    return report


def run_loadbalance_instance(inst: Instance, k: Optional[int] = None) -> LoadReport:
    if inst.model != "loadbalance":
        raise ModelMismatch(f"model {inst.model!r} is not a load-balancing instance")
    servers = range(inst.servers or 0)
    if not inst.clients:
        return LoadReport(0, 0, Fraction(1), [], 0, 0)
    return run_loadbalance(servers, inst.clients, k if k is not None else inst.k).report()


LB_COLUMNS = ["max_load", "opt_load", "assigned", "clients", "fraction_num", "fraction_den", "doublings"]


def write_loadbalance_csv(rep: LoadReport, fh: TextIO) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(LB_COLUMNS)
    f = rep.assigned_fraction
    w.writerow([rep.max_load, rep.opt_load, rep.assigned, rep.clients, f.numerator,
                f.denominator, " ".join(map(str, rep.doublings))])


def graph_of(engine: Engine) -> Graph:
    return engine.graph
