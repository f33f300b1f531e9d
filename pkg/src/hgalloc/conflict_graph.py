"""Pairwise interference graph and the graph-coloring baseline allocator.

Vertices are cellular UEs 0..N-1 then D2D pairs N..N+M-1.  Two cellular UEs
always conflict (uplink channels are exclusive), a cellular/D2D or D2D/D2D
pair conflicts when a single interferer pushes the victim's wanted-signal to
interference ratio below the threshold.  The baseline colors vertices in
repeated max-degree order, picking uniformly from the available channels.
"""

from dataclasses import dataclass

import numpy as np

from .scenario import db_to_linear, dbm_to_mw
from .evaluator import Allocation, UNALLOCATED


@dataclass
class ConflictGraph:
    n_cellular: int
    n_d2d: int
    adjacency: np.ndarray  # (n, n) bool, symmetric, zero diagonal

    @property
    def n_vertices(self):
        return self.n_cellular + self.n_d2d

    def degrees(self):
        return self.adjacency.sum(axis=1).astype(np.int64)

    @classmethod
    def from_edges(cls, n_cellular, n_d2d, edges):
        n = n_cellular + n_d2d
        adj = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if u == v:
                raise ValueError("self-loops not allowed")
            adj[u, v] = adj[v, u] = True
        return cls(n_cellular=n_cellular, n_d2d=n_d2d, adjacency=adj)


def build_graph(gains, config, counter=None):
    """Interference graph from link gains.

    Edge rules (all strict, thresholds linearized, noise excluded):
      cellular-cellular: always.
      cellular n vs D2D m: P_c g_n^c < delta_c P_d g_m^t  (victim uplink at eNB)
                        or P_d g_m^pair < delta_d P_c g_{n,m}  (victim D2D rx)
      D2D i vs D2D m:    g_m^pair < delta_d g_{i,m}  or  g_i^pair < delta_d g_{m,i}
    """
    n = gains.n_cellular
    m = gains.n_d2d
    p_c = dbm_to_mw(config.p_cellular_dbm)
    p_d = dbm_to_mw(config.p_d2d_dbm)
    delta_c = db_to_linear(config.delta_c_db)
    delta_d = db_to_linear(config.delta_d_db)

    adj = np.zeros((n + m, n + m), dtype=bool)
    if n:
        adj[:n, :n] = ~np.eye(n, dtype=bool)
    if n and m:
        # victim = cellular uplink at the eNB
        eq_up = (p_c * gains.g_cellular_to_enb[:, None]
                 < delta_c * p_d * gains.g_d2dtx_to_enb[None, :])
        # victim = D2D receiver
        eq_down = (p_d * gains.g_d2d_pair[None, :]
                   < delta_d * p_c * gains.g_cellular_to_d2drx)
        cross = eq_up | eq_down
        adj[:n, n:] = cross
        adj[n:, :n] = cross.T
    if m:
        # victim = receiver of pair j, interferer = transmitter of pair i
        harmful = (gains.g_d2d_pair[None, :] < delta_d * gains.g_d2dtx_to_d2drx)
        np.fill_diagonal(harmful, False)
        dd = harmful | harmful.T
        adj[n:, n:] = dd

    if counter is not None:
        counter.construction += n * (n - 1) // 2 + 2 * n * m + m * (m - 1)
    return ConflictGraph(n_cellular=n, n_d2d=m, adjacency=adj)


def order_by_max_degree(graph, counter=None):
    """Repeated max-degree ordering: pick the highest-degree remaining vertex
    (lowest index on ties), remove its edges, repeat."""
    n = graph.n_vertices
    degrees = graph.degrees()
    alive = np.ones(n, dtype=bool)
    order = np.empty(n, dtype=np.int64)
    for i in range(n):
        masked = np.where(alive, degrees, -1)
        x = int(np.argmax(masked))  # argmax returns the first max: lowest index
        order[i] = x
        alive[x] = False
        nbrs = graph.adjacency[x] & alive
        degrees[nbrs] -= 1
        if counter is not None:
            counter.ordering += int(alive.sum()) + 1 + int(nbrs.sum())
    return order


def color_graph(graph, k, stream, counter=None):
    """Greedy coloring in max-degree order against the original adjacency.

    stream=None selects the lowest available channel instead of a random one.
    """
    n = graph.n_vertices
    order = order_by_max_degree(graph, counter)
    assignment = np.full(n, UNALLOCATED, dtype=np.int64)
    for x in order:
        nbr_colors = assignment[graph.adjacency[x]]
        blocked = {int(c) for c in nbr_colors if c != UNALLOCATED}
        available = [c for c in range(k) if c not in blocked]
        if counter is not None:
            counter.coloring += int(graph.adjacency[x].sum()) + k
        if available:
            if stream is None:
                assignment[x] = available[0]
            else:
                assignment[x] = int(stream.choice(available))
    return Allocation(
        assignment=assignment,
        n_cellular=graph.n_cellular,
        n_d2d=graph.n_d2d,
        n_channels=k,
    )


def dump_edges(graph):
    """Edge-list dump, one 'i j' line per edge with i < j."""
    lines = []
    n = graph.n_vertices
    for i in range(n):
        for j in range(i + 1, n):
            if graph.adjacency[i, j]:
                lines.append(f"{i} {j}")
    return "\n".join(lines) + ("\n" if lines else "")


def load_edges(text, n_cellular, n_d2d):
    edges = []
    for line in text.strip().splitlines():
        if not line.strip():
            continue
        i, j = map(int, line.split())
        edges.append((i, j))
    return ConflictGraph.from_edges(n_cellular, n_d2d, edges)
