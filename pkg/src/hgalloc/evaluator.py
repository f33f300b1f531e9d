"""Allocations, constraint checking, capacity scoring, and the exhaustive
optimal oracle.

An allocation maps each vertex (cellular UEs first, then D2D pairs) to a
channel or to UNALLOCATED.  Capacity is summed spectral efficiency in
bit/s/Hz.  The oracle enumerates every feasible assignment and is guarded to
desk-scale instances.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .scenario import dbm_to_mw, noise_power_mw
from .radio import sinr_cellular, sinr_d2d

UNALLOCATED = -1

ORACLE_GUARD = 10_000_000  # max number of raw assignments the oracle may face


class InstanceTooLargeError(ValueError):
    pass


@dataclass
class Allocation:
    assignment: np.ndarray  # (N+M,) int, channel index or UNALLOCATED
    n_cellular: int
    n_d2d: int
    n_channels: int

    @property
    def n_vertices(self):
        return self.n_cellular + self.n_d2d

    def co_channel(self, k):
        """Vertex indices currently on channel k."""
        return np.nonzero(self.assignment == k)[0]

    def colors_used(self):
        used = set(int(c) for c in self.assignment if c != UNALLOCATED)
        return len(used)


def empty_allocation(n_cellular, n_d2d, n_channels):
    return Allocation(
        assignment=np.full(n_cellular + n_d2d, UNALLOCATED, dtype=np.int64),
        n_cellular=n_cellular,
        n_d2d=n_d2d,
        n_channels=n_channels,
    )


@dataclass
class ConstraintViolation:
    kind: str
    channel: int = UNALLOCATED
    vertices: list = field(default_factory=list)

    def __str__(self):
        return f"{self.kind}: channel={self.channel} vertices={self.vertices}"


@dataclass
class TrialMetrics:
    cell_capacity: float
    per_ue_throughput: np.ndarray  # (N+M,)
    n_cellular_outage: int
    n_d2d_outage: int
    colors_used: int


def validate(alloc, config):
    """None if the allocation satisfies the channel constraints, else the
    first violation found (lowest channel, then lowest vertex)."""
    n = config.n_cellular
    m = config.n_d2d_pairs
    k = config.n_channels
    if alloc.n_vertices != n + m or len(alloc.assignment) != n + m:
        return ConstraintViolation(kind="dimension_mismatch")
    for v, c in enumerate(alloc.assignment):
        if c != UNALLOCATED and not 0 <= c < k:
            return ConstraintViolation(kind="channel_out_of_range",
                                       channel=int(c), vertices=[v])
    for ch in range(k):
        cellular_here = [v for v in range(n) if alloc.assignment[v] == ch]
        if len(cellular_here) > 1:
            return ConstraintViolation(kind="cellular_channel_conflict",
                                       channel=ch, vertices=cellular_here)
    return None


def per_ue_metrics(alloc, gains, config):
    """Per-UE spectral efficiency, outage counts, and total capacity."""
    bad = validate(alloc, config)
    if bad is not None:
        raise ValueError(f"invalid allocation: {bad}")
    n = config.n_cellular
    m = config.n_d2d_pairs
    thr = np.zeros(n + m)
    for v in range(n + m):
        k = int(alloc.assignment[v])
        if k == UNALLOCATED:
            continue
        if v < n:
            gamma = sinr_cellular(v, k, alloc, gains, config)
        else:
            gamma = sinr_d2d(v - n, k, alloc, gains, config)
        thr[v] = math.log2(1.0 + gamma)
    return TrialMetrics(
        cell_capacity=float(thr.sum()),
        per_ue_throughput=thr,
        n_cellular_outage=int(np.sum(thr[:n] == 0.0)),
        n_d2d_outage=int(np.sum(thr[n:] == 0.0)),
        colors_used=alloc.colors_used(),
    )


def cell_capacity(alloc, gains, config):
    return per_ue_metrics(alloc, gains, config).cell_capacity


def brute_force_optimal(gains, config):
    """Exhaustive maximum-capacity allocation.

    Enumerates every per-vertex choice in {unallocated, 0..K-1} in
    lexicographic order (vertex 0 most significant, unallocated first),
    skipping branches that put two cellular UEs on one channel.  The first
    assignment attaining the maximum wins ties.  Guarded by ORACLE_GUARD on
    (K+1)^(N+M).
    """
    n = gains.n_cellular
    m = gains.n_d2d
    k = config.n_channels
    if (k + 1) ** (n + m) > ORACLE_GUARD:
        raise InstanceTooLargeError(
            f"(K+1)^(N+M) = {(k + 1) ** (n + m)} exceeds oracle guard {ORACLE_GUARD}")

    p_c = dbm_to_mw(config.p_cellular_dbm)
    p_d = dbm_to_mw(config.p_d2d_dbm)
    sigma2 = noise_power_mw(config)
    # plain float tables; the hot loop below stays out of numpy on purpose
    sig_cell = [p_c * float(g) for g in gains.g_cellular_to_enb]
    int_tx_enb = [p_d * float(g) for g in gains.g_d2dtx_to_enb]
    sig_pair = [p_d * float(g) for g in gains.g_d2d_pair]
    int_cell_rx = [[p_c * float(gains.g_cellular_to_d2drx[i, j]) for j in range(m)]
                   for i in range(n)]
    int_tx_rx = [[p_d * float(gains.g_d2dtx_to_d2drx[i, j]) for j in range(m)]
                 for i in range(m)]

    members = [[] for _ in range(k)]  # vertex lists per channel, updated in place
    choice = [UNALLOCATED] * (n + m)
    best_value = -1.0
    best_choice = None
    log2 = math.log2

    def leaf_value():
        total = 0.0
        for ch in range(k):
            group = members[ch]
            if not group:
                continue
            for v in group:
                if v < n:
                    den = sigma2
                    for u in group:
                        if u >= n:
                            den += int_tx_enb[u - n]
                    total += log2(1.0 + sig_cell[v] / den)
                else:
                    j = v - n
                    den = sigma2
                    for u in group:
                        if u < n:
                            den += int_cell_rx[u][j]
                        elif u != v:
                            den += int_tx_rx[u - n][j]
                    total += log2(1.0 + sig_pair[j] / den)
        return total

    def rec(v):
        nonlocal best_value, best_choice
        if v == n + m:
            val = leaf_value()
            if val > best_value:
                best_value = val
                best_choice = list(choice)
            return
        # unallocated branch first: lexicographic with UNALLOCATED < 0 < ... < K-1
        choice[v] = UNALLOCATED
        rec(v + 1)
        for ch in range(k):
            if v < n and any(u < n for u in members[ch]):
                continue  # second cellular UE on one channel is infeasible
            choice[v] = ch
            members[ch].append(v)
            rec(v + 1)
            members[ch].pop()
        choice[v] = UNALLOCATED

    rec(0)
    alloc = Allocation(
        assignment=np.array(best_choice, dtype=np.int64),
        n_cellular=n,
        n_d2d=m,
        n_channels=k,
    )
    return alloc, float(best_value)
