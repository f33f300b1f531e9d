"""Interference hypergraph construction and the hypergraph coloring allocator.

On top of the pairwise conflict graph, every victim also gets hyperedges for
cumulative interference: each unordered Q-subset of its individually harmless
interferers whose summed interference still drags the victim's wanted-signal
ratio below the eta threshold forms, together with the victim, a (Q+1)-vertex
hyperedge.  Vertices in no edge at all get a singleton hyperedge.

The allocator eliminates vertices smallest-last by monodegree, then greedily
colors in reverse elimination order under the weak rule: a color is blocked
only when it would make some hyperedge fully monochromatic.
"""

from dataclasses import dataclass
from math import comb

import numpy as np

from . import kernels
from .conflict_graph import build_graph
from .evaluator import Allocation, UNALLOCATED
from .hypergraph_core import Hypergraph, packing_from_remainders
from .scenario import db_to_linear, dbm_to_mw

KIND_INDEPENDENT = "independent-pair"
KIND_CUMULATIVE = "cumulative"
KIND_SINGLETON = "singleton"


@dataclass(frozen=True)
class InterferenceHypergraph:
    base: Hypergraph
    edge_kinds: tuple  # parallel to base.hyperedges
    n_cellular: int
    n_d2d: int

    @property
    def n_vertices(self):
        return self.base.n_vertices

    def edges_of_kind(self, kind):
        return tuple(e for e, k in zip(self.base.hyperedges, self.edge_kinds)
                     if k == kind)


def build_hypergraph(gains, config, counter=None):
    """Interference hypergraph for one drop: independent-pair edges exactly as
    build_graph, cumulative (Q+1)-edges from subset enumeration, singleton
    completion."""
    graph = build_graph(gains, config, counter)
    n, m = graph.n_cellular, graph.n_d2d
    adj = graph.adjacency
    q = config.q_cumulative
    p_c = dbm_to_mw(config.p_cellular_dbm)
    p_d = dbm_to_mw(config.p_d2d_dbm)
    eta_c = db_to_linear(config.eta_c_db)
    eta_d = db_to_linear(config.eta_d_db)

    edges = []
    kinds = []
    seen = set()

    def push(edge, kind):
        if edge not in seen:
            seen.add(edge)
            edges.append(edge)
            kinds.append(kind)

    total = n + m
    for i in range(total):
        for j in range(i + 1, total):
            if adj[i, j]:
                push((i, j), KIND_INDEPENDENT)

    # cumulative edges: victim + Q candidates whose summed interference
    # crosses wanted/eta; candidates are never independent interferers
    for v in range(total):
        if v < n:
            cand = [n + j for j in range(m) if not adj[v, n + j]]
            values = [p_d * float(gains.g_d2dtx_to_enb[c - n]) for c in cand]
            wanted = p_c * float(gains.g_cellular_to_enb[v])
            threshold = wanted / eta_c
        else:
            mm = v - n
            cand = [j for j in range(n) if not adj[v, j]]
            cand += [n + i for i in range(m) if i != mm and not adj[v, n + i]]
            values = []
            for c in cand:
                if c < n:
                    values.append(p_c * float(gains.g_cellular_to_d2drx[c, mm]))
                else:
                    values.append(p_d * float(gains.g_d2dtx_to_d2drx[c - n, mm]))
            wanted = p_d * float(gains.g_d2d_pair[mm])
            threshold = wanted / eta_d
        if counter is not None:
            counter.construction += comb(len(cand), q) if len(cand) >= q else 0
        if len(cand) < q:
            continue
        for subset in kernels.threshold_subsets(values, q, threshold):
            edge = tuple(sorted([v] + [cand[s] for s in subset]))
            push(edge, KIND_CUMULATIVE)

    covered = set()
    for e in edges:
        covered.update(e)
    for v in range(total):
        if v not in covered:
            push((v,), KIND_SINGLETON)

    base = Hypergraph(vertices=tuple(range(total)), hyperedges=tuple(edges))
    return InterferenceHypergraph(base=base, edge_kinds=tuple(kinds),
                                  n_cellular=n, n_d2d=m)


def _base_of(h):
    return h.base if isinstance(h, InterferenceHypergraph) else h


def _greedy_witness(edge_ids, rems, target):
    """Edge ids certifying a packing of size target, or None when the greedy
    scan falls short.  Mirrors packing_from_remainders: distinct singles are
    always packable, multi remainders first-fit among the leftovers."""
    chosen = []
    used = set()
    for j, r in zip(edge_ids, rems):
        if len(r) == 1 and r[0] not in used:
            used.add(r[0])
            chosen.append(j)
    for j, r in zip(edge_ids, rems):
        if len(r) >= 2 and not any(u in used for u in r):
            used.update(r)
            chosen.append(j)
    if len(chosen) == target:
        return frozenset(chosen)
    return None


def order_min_monodegree(h, counter=None):
    """Smallest-last elimination ordering.

    Repeatedly strong-delete the minimum-monodegree vertex (lowest label on
    ties).  Returns (order, mins): order is the coloring order, reverse of
    elimination; mins[i] is the minimum monodegree observed when order[i] was
    labeled.  Works on any Hypergraph; monodegrees are recomputed only for
    vertices that lost an edge.
    """
    base = _base_of(h)
    verts = list(base.vertices)
    nv = len(verts)
    if nv == 0:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    pos = {v: i for i, v in enumerate(verts)}
    edges = [e for e in base.hyperedges if len(e) >= 2]
    edge_alive = [True] * len(edges)
    incident = [[] for _ in range(nv)]
    for j, e in enumerate(edges):
        for v in e:
            incident[pos[v]].append(j)

    vertex_alive = [True] * nv
    # val[i] is an upper bound on the current monodegree (exact when exact[i]):
    # strong deletion only removes edges, so monodegrees never increase and a
    # stale value stays a valid bound.  Each step resolves vertices lazily
    # with a capped packing search: capping at val[i]+1 is exact (the true
    # value cannot reach it), capping at best+1 exactly certifies "not the
    # minimum", so the selected vertex and its monodegree are always exact.
    val = [len(incident[i]) for i in range(nv)]
    exact = [False] * nv
    # witness[i]: edge ids of a packing of size val[i].  While every witness
    # edge survives, the value is pinned from below, and deletion can only
    # lower it, so deletions elsewhere in the family need no recompute.
    witness = [None] * nv
    # Capped probes are deterministic, so a repeat probe at the same family
    # generation with an equal or smaller cap must hit its cap again.
    gen = [0] * nv
    probe_cache = [None] * nv  # (gen, cap) of a probe that returned cap
    elimination = []
    mins = []
    for _ in range(nv):
        # Scan cheapest stale bounds first and seed best with the tightest
        # one, so the running best drops early and later probes only need a
        # capped witness.  Any vertex at or below the running best resolves
        # exactly, so ties compare true values and the lowest-label rule is
        # preserved by the label check.
        scan = sorted((i for i in range(nv) if vertex_alive[i]),
                      key=lambda i: (val[i], i))
        best = val[scan[0]]
        argmin = -1
        for i in scan:
            if exact[i]:
                c = val[i]
            else:
                cap = min(best + 1, val[i] + 1)
                cached = probe_cache[i]
                if (cached is not None and cached[0] == gen[i]
                        and cached[1] >= cap):
                    c = cap
                else:
                    x = verts[i]
                    alive_ids = [j for j in incident[i] if edge_alive[j]]
                    rems = [tuple(u for u in edges[j] if u != x)
                            for j in alive_ids]
                    c = packing_from_remainders(rems, cap)
                    if counter is not None:
                        counter.ordering += len(rems)
                    if c < cap:
                        val[i] = c
                        exact[i] = True
                        witness[i] = _greedy_witness(alive_ids, rems, c)
                    else:
                        probe_cache[i] = (gen[i], cap)
            if c < best or (c == best and (argmin < 0 or i < argmin)):
                best = c
                argmin = i
        if counter is not None:
            counter.ordering += len(scan)
        elimination.append(verts[argmin])
        mins.append(best)
        vertex_alive[argmin] = False
        for j in incident[argmin]:
            if edge_alive[j]:
                edge_alive[j] = False
                for u in edges[j]:
                    iu = pos[u]
                    if iu == argmin or not vertex_alive[iu]:
                        continue
                    gen[iu] += 1
                    if exact[iu]:
                        w = witness[iu]
                        if w is not None and j not in w:
                            continue
                        exact[iu] = False
                        witness[iu] = None
    order = np.array(elimination[::-1], dtype=np.int64)
    mins_seq = np.array(mins[::-1], dtype=np.int64)
    return order, mins_seq


def color_hypergraph(h, k, stream, strict=False, counter=None):
    """Greedy weak coloring in smallest-last order.

    A color c is unavailable for x iff some non-singleton hyperedge at x has
    all other members colored and all equal to c (taking c would make it
    monochromatic).  ``strict=True`` switches to the all-distinct rule where
    any colored co-member blocks its color.  stream=None picks the lowest
    available channel.
    """
    base = _base_of(h)
    if base.vertices != tuple(range(base.n_vertices)):
        raise ValueError("coloring requires contiguous vertex labels")
    nv = base.n_vertices
    if isinstance(h, InterferenceHypergraph):
        n_cellular, n_d2d = h.n_cellular, h.n_d2d
    else:
        n_cellular, n_d2d = 0, nv
    order, _ = order_min_monodegree(h, counter)
    incident = [[] for _ in range(nv)]
    for e in base.hyperedges:
        if len(e) >= 2:
            for v in e:
                incident[v].append(e)
    assignment = np.full(nv, UNALLOCATED, dtype=np.int64)
    for x in order:
        blocked = set()
        for e in incident[x]:
            if counter is not None:
                counter.coloring += len(e)
            others = [int(assignment[y]) for y in e if y != x]
            if strict:
                blocked.update(c for c in others if c != UNALLOCATED)
            else:
                first = others[0]
                if first != UNALLOCATED and all(c == first for c in others):
                    blocked.add(first)
        if counter is not None:
            counter.coloring += k
        available = [c for c in range(k) if c not in blocked]
        if available:
            if stream is None:
                assignment[x] = available[0]
            else:
                assignment[x] = int(stream.choice(available))
    return Allocation(assignment=assignment, n_cellular=n_cellular,
                      n_d2d=n_d2d, n_channels=k)


def allocate(gains, config, stream, counter=None):
    """End-to-end hypergraph allocation: build, order, color."""
    h = build_hypergraph(gains, config, counter)
    if config.deterministic_coloring:
        stream = None
    return color_hypergraph(h, config.n_channels, stream, counter=counter)


def to_annotated_fixture(ih):
    """Fixture text with the edge kind appended to each edge line."""
    base = ih.base
    if base.vertices != tuple(range(base.n_vertices)):
        raise ValueError("fixture format requires contiguous vertex labels")
    lines = [f"{base.n_vertices} {base.n_edges}"]
    for e, kind in zip(base.hyperedges, ih.edge_kinds):
        lines.append(" ".join(str(v) for v in e) + f" {kind}")
    return "\n".join(lines) + "\n"


def from_annotated_fixture(text, n_cellular, n_d2d):
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    nv, ne = map(int, lines[0].split())
    if nv != n_cellular + n_d2d:
        raise ValueError("vertex count does not match n_cellular + n_d2d")
    edges = []
    kinds = []
    for ln in lines[1:1 + ne]:
        toks = ln.split()
        kinds.append(toks[-1])
        edges.append(tuple(sorted(int(t) for t in toks[:-1])))
    base = Hypergraph(vertices=tuple(range(nv)), hyperedges=tuple(edges))
    return InterferenceHypergraph(base=base, edge_kinds=tuple(kinds),
                                  n_cellular=n_cellular, n_d2d=n_d2d)
