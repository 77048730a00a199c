"""Online matching with a hard per-arrival reassignment budget."""

from .adversaries import (
    CopiesAdversary,
    EdgeAdaptiveAdversary,
    VertexChainAdversary,
    WeightedThreePhaseAdversary,
    make_adversary,
    play,
)
from .augpath import (
    canonical,
    decompose_pq,
    enumerate_augmenting_paths,
    find_short_augmenting_path,
    ratio_bound,
    shortest_augmenting_containing,
    shortest_augmenting_from,
)
from .core import EdgeArrival, Graph, Matching, ReassignmentDelta, Stop, VertexArrival, augment
from .engines import ArbitraryPathEngine, EdgeEngine, VertexEngine, WeightedEngine, make_engine
from .errors import MatchingError
from .harness import RunReport, run_duel, run_instance
from .instance_io import Instance, dump_instance, load_instance, parse_instance
from .loadbalance import LoadBalancer, run_loadbalance
from .oracle import (
    brute_force_enumerate,
    max_cardinality_matching,
    max_weight_left_perfect,
    optimal_max_load,
)

__all__ = [
    "ArbitraryPathEngine", "CopiesAdversary", "EdgeAdaptiveAdversary", "EdgeArrival", "EdgeEngine",
    "Graph", "Instance", "LoadBalancer", "Matching", "MatchingError", "ReassignmentDelta", "RunReport",
    "Stop", "VertexArrival", "VertexChainAdversary", "VertexEngine", "WeightedEngine",
    "WeightedThreePhaseAdversary", "augment", "brute_force_enumerate", "canonical", "decompose_pq",
    "dump_instance", "enumerate_augmenting_paths", "find_short_augmenting_path", "load_instance",
    "make_adversary", "make_engine", "max_cardinality_matching", "max_weight_left_perfect",
    "optimal_max_load", "parse_instance", "play", "ratio_bound", "run_duel", "run_instance",
    "run_loadbalance", "shortest_augmenting_containing", "shortest_augmenting_from",
]
