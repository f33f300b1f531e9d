"""Simulation configuration and random network drops.

One eNB at the origin, N cellular uplink UEs and M D2D pairs dropped uniformly
in a disc cell.  All randomness flows through numpy Generator streams derived
from a single master seed, so every trial is reproducible in isolation.
"""

import json
import math
from dataclasses import asdict, dataclass, fields

import numpy as np


@dataclass
class SimConfig:
    n_cellular: int = 30            # N
    n_d2d_pairs: int = 30           # M
    n_channels: int = 20            # K
    cell_radius: float = 500.0      # m
    max_d2d_distance: float = 20.0  # m
    p_cellular_dbm: float = 23.0
    p_d2d_dbm: float = 13.0
    delta_c_db: float = 20.0
    delta_d_db: float = 20.0
    eta_c_db: float = 20.0
    eta_d_db: float = 20.0
    q_cumulative: int = 2           # cumulative interferer subset size Q
    carrier_ghz: float = 2.3
    total_bandwidth_hz: float = 20e6
    noise_figure_db: float = 5.0
    n_trials: int = 200
    master_seed: int = 12345
    deterministic_coloring: bool = False

    def __post_init__(self):
        if self.n_cellular < 0 or self.n_d2d_pairs < 0:
            raise ValueError("n_cellular and n_d2d_pairs must be >= 0")
        if self.n_channels < 1:
            raise ValueError("n_channels must be >= 1")
        if self.q_cumulative < 1:
            raise ValueError("q_cumulative must be >= 1")
        if self.cell_radius <= 0:
            raise ValueError("cell_radius must be positive")
        if not 0 < self.max_d2d_distance <= self.cell_radius:
            raise ValueError("max_d2d_distance must be in (0, cell_radius]")
        for name in ("delta_c_db", "delta_d_db", "eta_c_db", "eta_d_db"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.n_trials < 1:
            raise ValueError("n_trials must be >= 1")

    @property
    def n_vertices(self):
        return self.n_cellular + self.n_d2d_pairs

    @classmethod
    def from_dict(cls, data):
        """Build a config from a dict of field values; missing keys take the
        defaults, unknown keys are an error."""
        known = {f.name for f in fields(cls)}
        bad = set(data) - known
        if bad:
            raise ValueError(f"unknown config keys: {sorted(bad)}")
        return cls(**data)

    @classmethod
    def from_json(cls, path):
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def to_json(self, path):
        with open(path, "w") as fh:
            json.dump(asdict(self), fh, indent=2)
            fh.write("\n")


@dataclass
class Drop:
    enb_position: np.ndarray        # (2,), always the origin
    cellular_positions: np.ndarray  # (N, 2)
    d2d_tx_positions: np.ndarray    # (M, 2)
    d2d_rx_positions: np.ndarray    # (M, 2)


def make_stream(*key):
    """Independent Generator for a seed path such as (master_seed, role, trial)."""
    return np.random.default_rng([int(k) & 0xFFFFFFFFFFFFFFFF for k in key])


# role tags for stream derivation; distinct per consumer so streams never alias
_ROLE_DROP = 0xD0
_ROLE_FADING = 0xFA
_ROLE_COLOR_GRAPH = 0xC6
_ROLE_COLOR_HYPER = 0xC8


def _uniform_disc(rng, n, radius):
    # area-uniform: radius scales with sqrt of a uniform variate
    r = radius * np.sqrt(rng.random(n))
    theta = 2.0 * np.pi * rng.random(n)
    return np.column_stack((r * np.cos(theta), r * np.sin(theta)))


def generate_drop(config, trial_index):
    """Uniform UE positions for one trial; deterministic given
    (master_seed, trial_index)."""
    rng = make_stream(config.master_seed, _ROLE_DROP, trial_index)
    n, m = config.n_cellular, config.n_d2d_pairs
    radius = config.cell_radius
    cellular = _uniform_disc(rng, n, radius)
    d2d_tx = _uniform_disc(rng, m, radius)
    d2d_rx = np.empty((m, 2))
    for i in range(m):
        # receiver uniform in a disc around its transmitter, rejected until it
        # lands inside the cell
        while True:
            offset = _uniform_disc(rng, 1, config.max_d2d_distance)[0]
            rx = d2d_tx[i] + offset
            if rx[0] * rx[0] + rx[1] * rx[1] <= radius * radius:
                d2d_rx[i] = rx
                break
    return Drop(
        enb_position=np.zeros(2),
        cellular_positions=cellular,
        d2d_tx_positions=d2d_tx,
        d2d_rx_positions=d2d_rx,
    )


def noise_power_mw(config):
    """Thermal noise power per channel in mW; channel bandwidth is the total
    band split K ways."""
    bw = config.total_bandwidth_hz / config.n_channels
    dbm = -174.0 + 10.0 * math.log10(bw) + config.noise_figure_db
    return 10.0 ** (dbm / 10.0)


def dbm_to_mw(dbm):
    return 10.0 ** (dbm / 10.0)


def db_to_linear(db):
    return 10.0 ** (db / 10.0)
