"""Monte Carlo driver: per-trial pipeline, sweeps, aggregation, CSV output.

Each trial draws one drop and one set of link gains, shared by every requested
algorithm so comparisons are paired.  Seeds derive from the master seed per
(role, trial), and each sweep point gets its own derived master seed, so runs
are reproducible and sweep points are independent.
"""

import csv
from dataclasses import dataclass, field, replace

import numpy as np

from .scenario import (SimConfig, generate_drop, make_stream, noise_power_mw,
                       dbm_to_mw, _ROLE_FADING, _ROLE_COLOR_GRAPH,
                       _ROLE_COLOR_HYPER)
from .radio import compute_gains
from .conflict_graph import build_graph, color_graph
from .hypergraph_alloc import build_hypergraph, color_hypergraph
from .evaluator import (InstanceTooLargeError, ORACLE_GUARD, TrialMetrics,
                        brute_force_optimal, per_ue_metrics)
from .opcount import OpCounter, PHASES

ALGORITHMS = ("graph", "hypergraph", "optimal", "no-d2d")

SWEEP_PARAMS = {
    "N": "n_cellular",
    "M": "n_d2d_pairs",
    "K": "n_channels",
    "Q": "q_cumulative",
    "eta_db": ("eta_c_db", "eta_d_db"),
}
_PARAM_IDS = {name: i + 1 for i, name in enumerate(SWEEP_PARAMS)}


@dataclass
class SweepSpec:
    swept_parameter: str
    values: list
    base_config: SimConfig
    algorithms: tuple = ("graph", "hypergraph")

    def __post_init__(self):
        if self.swept_parameter not in SWEEP_PARAMS:
            raise ValueError(f"unknown sweep parameter {self.swept_parameter!r}")
        if not self.values:
            raise ValueError("sweep values must be non-empty")
        _check_algorithms(self.algorithms)


@dataclass
class CellStats:
    """Per (algorithm, sweep value) aggregate over n_trials trials."""
    algorithm: str
    param_value: object
    capacities: np.ndarray            # (T,)
    cellular_outages: np.ndarray      # (T,)
    d2d_outages: np.ndarray           # (T,)
    per_ue_throughput: np.ndarray     # (T, N+M)
    n_cellular: int
    n_d2d: int
    op_counts: dict = field(default_factory=dict)  # phase -> (T,)

    @property
    def n_trials(self):
        return len(self.capacities)

    @property
    def mean_capacity(self):
        return float(np.mean(self.capacities))

    @property
    def std_err(self):
        t = self.n_trials
        if t < 2:
            return 0.0
        return float(np.std(self.capacities, ddof=1) / np.sqrt(t))

    @property
    def mean_cellular_outage(self):
        return float(np.mean(self.cellular_outages))

    @property
    def mean_d2d_outage(self):
        return float(np.mean(self.d2d_outages))


@dataclass
class AggregateResult:
    cells: dict  # (algorithm, param_value) -> CellStats

    def cell(self, algorithm, param_value=None):
        return self.cells[(algorithm, param_value)]

    def param_values(self):
        seen = []
        for (_, pv) in self.cells:
            if pv not in seen:
                seen.append(pv)
        return seen

    def algorithms(self):
        seen = []
        for (algo, _) in self.cells:
            if algo not in seen:
                seen.append(algo)
        return seen


def _check_algorithms(algorithms):
    if not algorithms:
        raise ValueError("no algorithms requested")
    bad = set(algorithms) - set(ALGORITHMS)
    if bad:
        raise ValueError(f"unknown algorithms: {sorted(bad)}")


def _no_d2d_metrics(gains, config):
    """Baseline without D2D: every UE transmits to the eNB in cellular mode
    at cellular power; the K channels go to the K best uplinks, one each."""
    n = gains.n_cellular
    m = gains.n_d2d
    p_c = dbm_to_mw(config.p_cellular_dbm)
    sigma2 = noise_power_mw(config)
    uplink = np.concatenate([gains.g_cellular_to_enb, gains.g_d2dtx_to_enb])
    thr = np.zeros(n + m)
    take = min(config.n_channels, n + m)
    if take:
        chosen = np.argsort(-uplink, kind="stable")[:take]
        thr[chosen] = np.log2(1.0 + p_c * uplink[chosen] / sigma2)
    return TrialMetrics(
        cell_capacity=float(thr.sum()),
        per_ue_throughput=thr,
        n_cellular_outage=int(np.sum(thr[:n] == 0.0)),
        n_d2d_outage=int(np.sum(thr[n:] == 0.0)),
        colors_used=int(take),
    )


def run_trials(config, algorithms, param_value=None):
    """Run config.n_trials paired trials for the requested algorithms."""
    algorithms = tuple(algorithms)
    _check_algorithms(algorithms)
    if "optimal" in algorithms:
        size = (config.n_channels + 1) ** config.n_vertices
        if size > ORACLE_GUARD:
            raise InstanceTooLargeError(
                f"optimal oracle infeasible: (K+1)^(N+M) = {size}")

    t_total = config.n_trials
    nv = config.n_vertices
    caps = {a: np.zeros(t_total) for a in algorithms}
    cell_out = {a: np.zeros(t_total, dtype=np.int64) for a in algorithms}
    d2d_out = {a: np.zeros(t_total, dtype=np.int64) for a in algorithms}
    per_ue = {a: np.zeros((t_total, nv)) for a in algorithms}
    ops = {a: {p: np.zeros(t_total) for p in PHASES}
           for a in algorithms if a in ("graph", "hypergraph")}

    for t in range(t_total):
        drop = generate_drop(config, t)
        gains = compute_gains(drop, config,
                              make_stream(config.master_seed, _ROLE_FADING, t))
        for algo in algorithms:
            if algo == "graph":
                counter = OpCounter()
                graph = build_graph(gains, config, counter)
                stream = (None if config.deterministic_coloring else
                          make_stream(config.master_seed, _ROLE_COLOR_GRAPH, t))
                alloc = color_graph(graph, config.n_channels, stream, counter)
                metrics = per_ue_metrics(alloc, gains, config)
            elif algo == "hypergraph":
                counter = OpCounter()
                h = build_hypergraph(gains, config, counter)
                stream = (None if config.deterministic_coloring else
                          make_stream(config.master_seed, _ROLE_COLOR_HYPER, t))
                alloc = color_hypergraph(h, config.n_channels, stream,
                                         counter=counter)
                metrics = per_ue_metrics(alloc, gains, config)
            elif algo == "optimal":
                counter = None
                alloc, _ = brute_force_optimal(gains, config)
                metrics = per_ue_metrics(alloc, gains, config)
            else:  # no-d2d
                counter = None
                metrics = _no_d2d_metrics(gains, config)
            caps[algo][t] = metrics.cell_capacity
            cell_out[algo][t] = metrics.n_cellular_outage
            d2d_out[algo][t] = metrics.n_d2d_outage
            per_ue[algo][t] = metrics.per_ue_throughput
            if counter is not None:
                for p in PHASES:
                    ops[algo][p][t] = getattr(counter, p)

    cells = {}
    for algo in algorithms:
        cells[(algo, param_value)] = CellStats(
            algorithm=algo,
            param_value=param_value,
            capacities=caps[algo],
            cellular_outages=cell_out[algo],
            d2d_outages=d2d_out[algo],
            per_ue_throughput=per_ue[algo],
            n_cellular=config.n_cellular,
            n_d2d=config.n_d2d_pairs,
            op_counts=ops.get(algo, {}),
        )
    return AggregateResult(cells=cells)


def derive_point_seed(master_seed, param_name, index):
    """Fresh 64-bit master seed for one sweep point; points get independent
    streams while the base seed still pins the whole sweep."""
    ss = np.random.SeedSequence(
        [int(master_seed) & 0xFFFFFFFFFFFFFFFF, _PARAM_IDS[param_name], index])
    return int(ss.generate_state(1, np.uint64)[0])


def config_for_point(spec, index):
    value = spec.values[index]
    fields_ = SWEEP_PARAMS[spec.swept_parameter]
    if isinstance(fields_, str):
        fields_ = (fields_,)
    updates = {f: value for f in fields_}
    updates["master_seed"] = derive_point_seed(
        spec.base_config.master_seed, spec.swept_parameter, index)
    return replace(spec.base_config, **updates)


def run_sweep(spec):
    """run_trials at every swept value; cells keyed by (algorithm, value)."""
    grid = {}
    for idx, value in enumerate(spec.values):
        config = config_for_point(spec, idx)
        result = run_trials(config, spec.algorithms, param_value=value)
        grid.update(result.cells)
    return AggregateResult(cells=grid)


def op_count_scaling(configs, n_trials=3):
    """Mean op counts per phase for the graph and hypergraph pipelines.

    Returns rows of (n_plus_m, algorithm, phase, op_count) for fitting growth
    exponents against problem size.
    """
    rows = []
    for config in configs:
        cfg = replace(config, n_trials=n_trials)
        result = run_trials(cfg, ("graph", "hypergraph"))
        for algo in ("graph", "hypergraph"):
            cell = result.cell(algo)
            for phase in PHASES:
                rows.append({
                    "n_plus_m": cfg.n_vertices,
                    "algorithm": algo,
                    "phase": phase,
                    "op_count": float(np.mean(cell.op_counts[phase])),
                })
    return rows


# ---------------------------------------------------------------------------
# CSV output (the single output contract; plotting is external)

def _fmt_value(pv):
    if pv is None:
        return "base"
    if isinstance(pv, float) and pv == int(pv):
        return str(int(pv))
    return str(pv)


def write_capacity_csv(path, result):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["param_value", "algorithm", "mean_capacity_bps_hz",
                    "std_err", "n_trials", "mean_cellular_outage",
                    "mean_d2d_outage"])
        for (algo, pv), cell in result.cells.items():
            w.writerow([_fmt_value(pv), algo,
                        f"{cell.mean_capacity:.6f}", f"{cell.std_err:.6f}",
                        cell.n_trials,
                        f"{cell.mean_cellular_outage:.6f}",
                        f"{cell.mean_d2d_outage:.6f}"])


def write_cdf_csv(path, result):
    """One row per UE per trial: algorithm, ue_class, throughput."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["algorithm", "ue_class", "throughput_bps_hz"])
        for (algo, _), cell in result.cells.items():
            n = cell.n_cellular
            for t in range(cell.n_trials):
                row = cell.per_ue_throughput[t]
                for v in range(len(row)):
                    ue_class = "cellular" if v < n else "d2d"
                    w.writerow([algo, ue_class, f"{row[v]:.6f}"])


def write_opcounts_csv(path, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n_plus_m", "algorithm", "phase", "op_count"])
        for r in rows:
            w.writerow([r["n_plus_m"], r["algorithm"], r["phase"],
                        f"{r['op_count']:.1f}"])
