"""Link gains and SINR.

Path loss follows the ITU-R UMi models: LOS for the short intra-pair D2D link,
NLOS for everything that crosses the cell (uplinks and all cross-interference
paths).  Small-scale fading is Rayleigh, i.e. exponential power gain with unit
mean, drawn once per directed link per drop.  Every gain is the linear-scale
product L * |h|^2; all dB/dBm conversions happen at module boundaries.
"""

from dataclasses import dataclass

import numpy as np

from .scenario import dbm_to_mw, noise_power_mw

MIN_DISTANCE_M = 1.0  # clamp; the UMi formulas blow up at d -> 0


@dataclass
class LinkGains:
    g_cellular_to_enb: np.ndarray    # (N,)
    g_d2d_pair: np.ndarray           # (M,)
    g_d2dtx_to_enb: np.ndarray       # (M,)
    g_cellular_to_d2drx: np.ndarray  # (N, M)
    g_d2dtx_to_d2drx: np.ndarray     # (M, M), row = tx pair, col = rx pair; diagonal unused

    @property
    def n_cellular(self):
        return self.g_cellular_to_enb.shape[0]

    @property
    def n_d2d(self):
        return self.g_d2d_pair.shape[0]


def path_loss_linear(distance_m, carrier_ghz, los):
    """Linear attenuation for the UMi path loss models.

    LOS:  22.0 log10 d + 28.0 + 20 log10 fc   [dB]
    NLOS: 36.7 log10 d + 22.7 + 26 log10 fc   [dB]
    Distances below 1 m are clamped.  Accepts scalars or arrays.
    """
    d = np.maximum(np.asarray(distance_m, dtype=float), MIN_DISTANCE_M)
    if los:
        pl_db = 22.0 * np.log10(d) + 28.0 + 20.0 * np.log10(carrier_ghz)
    else:
        pl_db = 36.7 * np.log10(d) + 22.7 + 26.0 * np.log10(carrier_ghz)
    return 10.0 ** (-pl_db / 10.0)


def sample_fading_power(stream):
    """One Rayleigh power gain |h|^2 ~ Exp(1)."""
    return stream.exponential(1.0)


def _distances(a, b):
    # a: (n,2), b: (m,2) -> (n,m)
    diff = a[:, None, :] - b[None, :, :]
    return np.sqrt(np.sum(diff * diff, axis=2))


def compute_gains(drop, config, stream):
    """All five link-gain families for one drop.

    Fading draw order is fixed (uplinks, pair links, tx-to-eNB, cross terms)
    so results are reproducible for a given stream state.
    """
    fc = config.carrier_ghz
    n = drop.cellular_positions.shape[0]
    m = drop.d2d_tx_positions.shape[0]

    d_cell = np.linalg.norm(drop.cellular_positions, axis=1) if n else np.zeros(0)
    d_pair = (np.linalg.norm(drop.d2d_tx_positions - drop.d2d_rx_positions, axis=1)
              if m else np.zeros(0))
    d_tx_enb = np.linalg.norm(drop.d2d_tx_positions, axis=1) if m else np.zeros(0)
    d_cell_rx = (_distances(drop.cellular_positions, drop.d2d_rx_positions)
                 if n and m else np.zeros((n, m)))
    d_tx_rx = (_distances(drop.d2d_tx_positions, drop.d2d_rx_positions)
               if m else np.zeros((m, m)))

    g_cell = path_loss_linear(d_cell, fc, los=False) * stream.exponential(1.0, n)
    g_pair = path_loss_linear(d_pair, fc, los=True) * stream.exponential(1.0, m)
    g_tx_enb = path_loss_linear(d_tx_enb, fc, los=False) * stream.exponential(1.0, m)
    g_cell_rx = path_loss_linear(d_cell_rx, fc, los=False) * stream.exponential(1.0, (n, m))
    g_tx_rx = path_loss_linear(d_tx_rx, fc, los=False) * stream.exponential(1.0, (m, m))

    return LinkGains(
        g_cellular_to_enb=g_cell,
        g_d2d_pair=g_pair,
        g_d2dtx_to_enb=g_tx_enb,
        g_cellular_to_d2drx=g_cell_rx,
        g_d2dtx_to_d2drx=g_tx_rx,
    )


def _co_channel(alloc, k):
    return np.nonzero(alloc.assignment == k)[0]


def sinr_cellular(n, k, alloc, gains, config):
    """SINR of cellular uplink n on channel k under the given allocation."""
    if alloc.assignment[n] != k:
        raise ValueError(f"cellular UE {n} is not on channel {k}")
    p_c = dbm_to_mw(config.p_cellular_dbm)
    p_d = dbm_to_mw(config.p_d2d_dbm)
    nc = gains.n_cellular
    den = noise_power_mw(config)
    for v in _co_channel(alloc, k):
        if v >= nc:  # co-channel D2D transmitters interfere at the eNB
            den += p_d * gains.g_d2dtx_to_enb[v - nc]
    return p_c * gains.g_cellular_to_enb[n] / den


def sinr_d2d(m, k, alloc, gains, config):
    """SINR at D2D receiver m on channel k under the given allocation."""
    nc = gains.n_cellular
    if alloc.assignment[nc + m] != k:
        raise ValueError(f"D2D pair {m} is not on channel {k}")
    p_c = dbm_to_mw(config.p_cellular_dbm)
    p_d = dbm_to_mw(config.p_d2d_dbm)
    den = noise_power_mw(config)
    for v in _co_channel(alloc, k):
        if v < nc:
            den += p_c * gains.g_cellular_to_d2drx[v, m]
        elif v != nc + m:
            den += p_d * gains.g_d2dtx_to_d2drx[v - nc, m]
    return p_d * gains.g_d2d_pair[m] / den
