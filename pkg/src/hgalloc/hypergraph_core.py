"""Generic hypergraph structure and combinatorial primitives.

A hypergraph here is a set of labeled vertices plus an ordered, deduplicated
family of non-empty hyperedges (sorted vertex tuples).  Labels survive strong
deletion, so induced sub-hypergraphs keep their identity and deletion
commutes.  The central quantity is the monodegree of a vertex x: the largest
subfamily of hyperedges at x whose members pairwise intersect exactly in {x}.
Equivalently, a maximum set packing of the remainders e \\ {x}; when every
remainder has at most two vertices this is a maximum matching, computed
exactly by the blossom kernel, otherwise an exact branch-and-bound packing.

Singleton hyperedges exist only to satisfy the covering convention and never
count toward a monodegree: a vertex covered only by its own singleton has
monodegree 0.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels


@dataclass(frozen=True)
class Hypergraph:
    vertices: tuple      # sorted vertex labels
    hyperedges: tuple    # sorted tuples, deduplicated, construction order

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices) or tuple(sorted(self.vertices)) != self.vertices:
            raise ValueError("vertices must be sorted and unique")
        seen = set()
        for e in self.hyperedges:
            if len(e) == 0:
                raise ValueError("empty hyperedge")
            if tuple(sorted(set(e))) != e:
                raise ValueError(f"hyperedge {e} must be a sorted duplicate-free tuple")
            if not set(e) <= vs:
                raise ValueError(f"hyperedge {e} uses unknown vertices")
            if e in seen:
                raise ValueError(f"duplicate hyperedge {e}")
            seen.add(e)

    @classmethod
    def from_edges(cls, n_vertices, edges):
        """Hypergraph on vertices 0..n_vertices-1; edges are any iterables of
        vertex labels, normalized to sorted tuples and deduplicated keeping
        first occurrence."""
        family = []
        seen = set()
        for e in edges:
            t = tuple(sorted(set(int(v) for v in e)))
            if not t:
                raise ValueError("empty hyperedge")
            if t not in seen:
                seen.add(t)
                family.append(t)
        return cls(vertices=tuple(range(n_vertices)), hyperedges=tuple(family))

    @property
    def n_vertices(self):
        return len(self.vertices)

    @property
    def n_edges(self):
        return len(self.hyperedges)

    def _check_vertex(self, x):
        if x not in set(self.vertices):
            raise ValueError(f"vertex {x} not in hypergraph")

    def edges_at(self, x):
        """The subfamily of hyperedges containing x, in family order."""
        self._check_vertex(x)
        return tuple(e for e in self.hyperedges if x in e)

    def degree(self, x):
        return len(self.edges_at(x))

    def incidence_matrix(self):
        """Boolean matrix, rows follow vertex order, columns follow edge
        family order."""
        pos = {v: i for i, v in enumerate(self.vertices)}
        mat = np.zeros((len(self.vertices), len(self.hyperedges)), dtype=bool)
        for j, e in enumerate(self.hyperedges):
            for v in e:
                mat[pos[v], j] = True
        return mat

    @classmethod
    def from_incidence(cls, matrix):
        matrix = np.asarray(matrix, dtype=bool)
        n, m = matrix.shape
        edges = []
        for j in range(m):
            e = tuple(int(i) for i in np.nonzero(matrix[:, j])[0])
            if not e:
                raise ValueError(f"incidence column {j} is empty")
            edges.append(e)
        return cls.from_edges(n, edges)

    def strong_delete(self, x):
        """Remove x and every hyperedge containing it; the result is the
        induced sub-hypergraph on the remaining vertices."""
        self._check_vertex(x)
        return Hypergraph(
            vertices=tuple(v for v in self.vertices if v != x),
            hyperedges=tuple(e for e in self.hyperedges if x not in e),
        )

    def induced(self, keep):
        """Induced sub-hypergraph on the vertex subset ``keep``: only
        hyperedges completely contained in ``keep`` survive."""
        keep = set(keep)
        if not keep <= set(self.vertices):
            raise ValueError("keep must be a subset of the vertices")
        return Hypergraph(
            vertices=tuple(v for v in self.vertices if v in keep),
            hyperedges=tuple(e for e in self.hyperedges if set(e) <= keep),
        )

    def monodegree(self, x):
        """Maximum size of a subfamily of edges at x pairwise intersecting
        exactly in {x}.  Singleton edges are ignored."""
        self._check_vertex(x)
        remainders = [tuple(v for v in e if v != x)
                      for e in self.hyperedges if x in e and len(e) >= 2]
        return packing_from_remainders(remainders)

    def min_monodegree_vertex(self):
        """Vertex of minimum monodegree; ties go to the lowest label."""
        if not self.vertices:
            raise ValueError("empty hypergraph")
        best_v = None
        best_md = None
        for v in self.vertices:
            md = self.monodegree(v)
            if best_md is None or md < best_md:
                best_v, best_md = v, md
        return best_v


def packing_from_remainders(remainders, cap=None):
    """Maximum number of pairwise-disjoint remainder sets.

    Every size-1 remainder can be included in some optimum (an exchange
    argument: swap out whichever chosen set uses that element), so they are
    all taken and the residual problem keeps only multi-element remainders
    avoiding those elements.  The residual is a matching when all remainders
    are pairs, else exact set packing.

    With ``cap``, returns min(maximum, cap); values below cap are exact.
    """
    single_elems = {r[0] for r in remainders if len(r) == 1}
    s = len(single_elems)
    if cap is not None and s >= cap:
        return cap
    multi = [r for r in remainders
             if len(r) >= 2 and not any(v in single_elems for v in r)]
    if not multi:
        return s
    if all(len(r) == 2 for r in multi):
        remap = {}
        edges = []
        for a, b in multi:
            for v in (a, b):
                if v not in remap:
                    remap[v] = len(remap)
            edges.append((remap[a], remap[b]))
        total = s + kernels.max_matching_size(len(remap), edges)
    else:
        residual_cap = None if cap is None else cap - s
        total = s + kernels.max_disjoint_sets(multi, residual_cap)
    if cap is not None and total >= cap:
        return cap
    return total


def complete_with_singletons(h):
    """Add a singleton hyperedge for every vertex not covered by any edge, so
    the edge family covers the vertex set."""
    covered = set()
    for e in h.hyperedges:
        covered.update(e)
    extra = tuple((v,) for v in h.vertices if v not in covered)
    if not extra:
        return h
    return Hypergraph(vertices=h.vertices, hyperedges=h.hyperedges + extra)


def degeneracy_exhaustive(h, max_vertices=20):
    """max over induced sub-hypergraphs of the minimum monodegree, by
    enumerating all vertex subsets.  Exponential; guarded."""
    n = h.n_vertices
    if n > max_vertices:
        raise ValueError(f"exhaustive search limited to {max_vertices} vertices")
    if n == 0:
        return 0
    verts = h.vertices
    pos = {v: i for i, v in enumerate(verts)}
    edges = [e for e in h.hyperedges if len(e) >= 2]
    edge_masks = [sum(1 << pos[v] for v in e) for e in edges]
    best = 0
    for mask in range(1, 1 << n):
        inside = [i for i in range(n) if mask >> i & 1]
        live = [(e, em) for e, em in zip(edges, edge_masks) if em & ~mask == 0]
        cur = None
        for i in inside:
            v = verts[i]
            rems = [tuple(u for u in e if u != v) for e, _ in live if v in e]
            md = packing_from_remainders(rems)
            if cur is None or md < cur:
                cur = md
            if cur <= best:
                break
        if cur is not None and cur > best:
            best = cur
    return best


def to_fixture(h):
    """Text fixture: first line "V E", then one line of vertex labels per
    hyperedge.  Requires contiguous labels 0..V-1."""
    if h.vertices != tuple(range(h.n_vertices)):
        raise ValueError("fixture format requires contiguous vertex labels")
    lines = [f"{h.n_vertices} {h.n_edges}"]
    for e in h.hyperedges:
        lines.append(" ".join(str(v) for v in e))
    return "\n".join(lines) + "\n"


def from_fixture(text):
    """Parse the fixture format; a trailing non-integer token per edge line
    (an annotation) is ignored."""
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty fixture")
    n, m = map(int, lines[0].split())
    edges = []
    for ln in lines[1:1 + m]:
        toks = ln.split()
        if toks and not _is_int(toks[-1]):
            toks = toks[:-1]
        edges.append(tuple(int(t) for t in toks))
    if len(edges) != m:
        raise ValueError(f"expected {m} edge lines, found {len(edges)}")
    return Hypergraph.from_edges(n, edges)


def _is_int(tok):
    try:
        int(tok)
        return True
    except ValueError:
        return False
