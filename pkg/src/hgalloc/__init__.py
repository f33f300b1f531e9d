"""Channel allocation for cellular uplinks with a D2D underlay.

Builds pairwise conflict graphs and cumulative-interference hypergraphs from
simulated link gains, colors them (graph baseline / hypergraph weak coloring),
and scores allocations on summed spectral efficiency against an exhaustive
oracle, all under a reproducible Monte Carlo harness.
"""

__version__ = "0.1.0"

from .scenario import SimConfig, Drop, generate_drop, noise_power_mw, make_stream
from .radio import (LinkGains, path_loss_linear, sample_fading_power,
                    compute_gains, sinr_cellular, sinr_d2d)
from .conflict_graph import (ConflictGraph, build_graph, order_by_max_degree,
                             color_graph, dump_edges, load_edges)
from .hypergraph_core import (Hypergraph, packing_from_remainders,
                              complete_with_singletons, degeneracy_exhaustive,
                              to_fixture, from_fixture)
from .hypergraph_alloc import (InterferenceHypergraph, build_hypergraph,
                               order_min_monodegree, color_hypergraph, allocate,
                               KIND_INDEPENDENT, KIND_CUMULATIVE, KIND_SINGLETON)
from .evaluator import (Allocation, TrialMetrics, ConstraintViolation,
                        UNALLOCATED, InstanceTooLargeError, empty_allocation,
                        validate, cell_capacity, per_ue_metrics,
                        brute_force_optimal)
from .harness import (ALGORITHMS, SweepSpec, CellStats, AggregateResult,
                      run_trials, run_sweep, op_count_scaling,
                      write_capacity_csv, write_cdf_csv, write_opcounts_csv)
from .opcount import OpCounter

__all__ = [
    "SimConfig", "Drop", "generate_drop", "noise_power_mw", "make_stream",
    "LinkGains", "path_loss_linear", "sample_fading_power", "compute_gains",
    "sinr_cellular", "sinr_d2d",
    "ConflictGraph", "build_graph", "order_by_max_degree", "color_graph",
    "dump_edges", "load_edges",
    "Hypergraph", "packing_from_remainders", "complete_with_singletons",
    "degeneracy_exhaustive", "to_fixture", "from_fixture",
    "InterferenceHypergraph", "build_hypergraph", "order_min_monodegree",
    "color_hypergraph", "allocate",
    "KIND_INDEPENDENT", "KIND_CUMULATIVE", "KIND_SINGLETON",
    "Allocation", "TrialMetrics", "ConstraintViolation", "UNALLOCATED",
    "InstanceTooLargeError", "empty_allocation", "validate", "cell_capacity",
    "per_ue_metrics", "brute_force_optimal",
    "ALGORITHMS", "SweepSpec", "CellStats", "AggregateResult", "run_trials",
    "run_sweep", "op_count_scaling", "write_capacity_csv", "write_cdf_csv",
    "write_opcounts_csv", "OpCounter",
]
