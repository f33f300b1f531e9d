# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel implementations.

Same contracts as ``_kernels_py``: threshold subset enumeration, blossom
maximum matching, exact set packing.  Falls back to the pure versions for the
rare inputs the compiled code does not cover (packing universes over 64
elements).
"""

from libc.stdlib cimport malloc, free

from . import _kernels_py

NAME = "compiled"


# ---------------------------------------------------------------------------
# threshold subset enumeration

cdef struct SubCtx:
    double *v
    double *prefix
    int n
    int q
    double threshold
    int *chosen

cdef void _sub_rec(SubCtx *ctx, int start, int depth, double acc, list out):
    cdef int need = ctx.q - depth
    cdef int j, i
    cdef double acc2
    cdef list row
    if need == 0:
        if acc > ctx.threshold:
            row = []
            for i in range(ctx.q):
                row.append(ctx.chosen[i])
            out.append(tuple(row))
        return
    for j in range(start, ctx.n - need + 1):
        if acc + (ctx.prefix[j + need] - ctx.prefix[j]) <= ctx.threshold:
            break
        ctx.chosen[depth] = j
        acc2 = acc + ctx.v[j]
        _sub_rec(ctx, j + 1, depth + 1, acc2, out)


def threshold_subsets_sorted(values, q, threshold):
    cdef int n = len(values)
    cdef int qq = q
    if qq < 1 or n < qq:
        return []
    cdef SubCtx ctx
    ctx.n = n
    ctx.q = qq
    ctx.threshold = threshold
    ctx.v = <double *> malloc(n * sizeof(double))
    ctx.prefix = <double *> malloc((n + 1) * sizeof(double))
    ctx.chosen = <int *> malloc(qq * sizeof(int))
    if ctx.v == NULL or ctx.prefix == NULL or ctx.chosen == NULL:
        raise MemoryError
    cdef int i
    try:
        for i in range(n):
            ctx.v[i] = values[i]
        ctx.prefix[0] = 0.0
        for i in range(n):
            ctx.prefix[i + 1] = ctx.prefix[i] + ctx.v[i]
        out = []
        _sub_rec(&ctx, 0, 0, 0.0, out)
        return out
    finally:
        free(ctx.v)
        free(ctx.prefix)
        free(ctx.chosen)


# ---------------------------------------------------------------------------
# blossom maximum matching

cdef struct MatchCtx:
    int n
    int *adj_flat
    int *adj_off
    int *match
    int *p
    int *base
    unsigned char *used
    unsigned char *blossom
    unsigned char *mark
    int *queue

cdef int _lca(MatchCtx *c, int a, int b):
    cdef int i
    for i in range(c.n):
        c.mark[i] = 0
    while True:
        a = c.base[a]
        c.mark[a] = 1
        if c.match[a] == -1:
            break
        a = c.p[c.match[a]]
    while True:
        b = c.base[b]
        if c.mark[b]:
            return b
        b = c.p[c.match[b]]

cdef void _mark_path(MatchCtx *c, int v, int b, int child):
    while c.base[v] != b:
        c.blossom[c.base[v]] = 1
        c.blossom[c.base[c.match[v]]] = 1
        c.p[v] = child
        child = c.match[v]
        v = c.p[c.match[v]]

cdef bint _find_path(MatchCtx *c, int root):
    cdef int i, v, to, curbase, head, tail, u, pv, ppv, k
    for i in range(c.n):
        c.used[i] = 0
        c.p[i] = -1
        c.base[i] = i
    c.used[root] = 1
    head = 0
    tail = 0
    c.queue[tail] = root
    tail += 1
    while head < tail:
        v = c.queue[head]
        head += 1
        for k in range(c.adj_off[v], c.adj_off[v + 1]):
            to = c.adj_flat[k]
            if c.base[v] == c.base[to] or c.match[v] == to:
                continue
            if to == root or (c.match[to] != -1 and c.p[c.match[to]] != -1):
                curbase = _lca(c, v, to)
                for i in range(c.n):
                    c.blossom[i] = 0
                _mark_path(c, v, curbase, to)
                _mark_path(c, to, curbase, v)
                for i in range(c.n):
                    if c.blossom[c.base[i]]:
                        c.base[i] = curbase
                        if not c.used[i]:
                            c.used[i] = 1
                            c.queue[tail] = i
                            tail += 1
            elif c.p[to] == -1:
                c.p[to] = v
                if c.match[to] == -1:
                    u = to
                    while u != -1:
                        pv = c.p[u]
                        ppv = c.match[pv]
                        c.match[u] = pv
                        c.match[pv] = u
                        u = ppv
                    return True
                c.used[c.match[to]] = 1
                c.queue[tail] = c.match[to]
                tail += 1
    return False


def max_matching_size(n, edges):
    cdef int nn = n
    if nn <= 0:
        return 0
    dedup = set()
    cdef int u, v
    for uv in edges:
        u = uv[0]
        v = uv[1]
        if u == v:
            continue
        dedup.add((u, v) if u < v else (v, u))
    cdef int m = len(dedup)
    if m == 0:
        return 0

    cdef MatchCtx c
    c.n = nn
    c.adj_flat = <int *> malloc(2 * m * sizeof(int))
    c.adj_off = <int *> malloc((nn + 1) * sizeof(int))
    c.match = <int *> malloc(nn * sizeof(int))
    c.p = <int *> malloc(nn * sizeof(int))
    c.base = <int *> malloc(nn * sizeof(int))
    c.used = <unsigned char *> malloc(nn)
    c.blossom = <unsigned char *> malloc(nn)
    c.mark = <unsigned char *> malloc(nn)
    c.queue = <int *> malloc(nn * sizeof(int))
    if (c.adj_flat == NULL or c.adj_off == NULL or c.match == NULL or
            c.p == NULL or c.base == NULL or c.used == NULL or
            c.blossom == NULL or c.mark == NULL or c.queue == NULL):
        raise MemoryError
    cdef int i, res
    cdef int *deg = <int *> malloc(nn * sizeof(int))
    if deg == NULL:
        raise MemoryError
    try:
        for i in range(nn):
            deg[i] = 0
        for (u, v) in dedup:
            deg[u] += 1
            deg[v] += 1
        c.adj_off[0] = 0
        for i in range(nn):
            c.adj_off[i + 1] = c.adj_off[i] + deg[i]
            deg[i] = 0
        for (u, v) in dedup:
            c.adj_flat[c.adj_off[u] + deg[u]] = v
            deg[u] += 1
            c.adj_flat[c.adj_off[v] + deg[v]] = u
            deg[v] += 1
        for i in range(nn):
            c.match[i] = -1
        res = 0
        for i in range(nn):
            if c.match[i] == -1 and c.adj_off[i + 1] > c.adj_off[i]:
                if _find_path(&c, i):
                    res += 1
        return res
    finally:
        free(c.adj_flat)
        free(c.adj_off)
        free(c.match)
        free(c.p)
        free(c.base)
        free(c.used)
        free(c.blossom)
        free(c.mark)
        free(c.queue)
        free(deg)


# ---------------------------------------------------------------------------
# exact set packing (universe up to 64 elements; larger inputs delegate to the
# pure backend)

cdef int _popcount(unsigned long long x):
    cdef int c = 0
    while x:
        x &= x - 1
        c += 1
    return c

cdef struct PackCtx:
    unsigned long long *masks
    unsigned long long *cover  # scratch for the star cover bound
    int n
    int min_size
    int best
    int cap  # -1: uncapped; else stop once best reaches cap

cdef bint _pack_rec(PackCtx *c, unsigned long long *active, int na, int count):
    cdef int i, j, bound, nb, nc, placed
    cdef unsigned long long unionm, m, e, low
    if count > c.best:
        c.best = count
    if c.cap >= 0 and c.best >= c.cap:
        return True
    if na == 0:
        return False
    unionm = 0
    for i in range(na):
        unionm |= active[i]
    bound = _popcount(unionm) // c.min_size
    if na < bound:
        bound = na
    if count + bound <= c.best:
        return False
    # star cover refinement: greedily group sets around a shared element; a
    # packing takes at most one set per group.  The scratch buffer is only
    # read before recursing, so sharing it across the recursion is fine.
    nc = 0
    for i in range(na):
        m = active[i]
        placed = 0
        for j in range(nc):
            if c.cover[j] & m:
                c.cover[j] = c.cover[j] & m
                placed = 1
                break
        if placed == 0:
            c.cover[nc] = m
            nc += 1
    if nc < bound:
        bound = nc
    if count + bound <= c.best:
        return False
    # least frequent element bit
    cdef int bestfreq = na + 1
    cdef unsigned long long beste = 0
    cdef int freq
    m = unionm
    while m:
        low = m & (m - 1)
        e = m ^ low  # lowest set bit of m
        m = low
        freq = 0
        for i in range(na):
            if active[i] & e:
                freq += 1
        if freq < bestfreq:
            bestfreq = freq
            beste = e
    e = beste
    cdef unsigned long long *nxt = <unsigned long long *> malloc(na * sizeof(unsigned long long))
    if nxt == NULL:
        raise MemoryError
    cdef bint done = False
    try:
        for i in range(na):
            if active[i] & e:
                # take this set, keep only non-conflicting
                nb = 0
                for j in range(na):
                    if not (active[j] & active[i]):
                        nxt[nb] = active[j]
                        nb += 1
                if _pack_rec(c, nxt, nb, count + 1):
                    done = True
                    break
        if not done:
            # branch with element e unused
            nb = 0
            for j in range(na):
                if not (active[j] & e):
                    nxt[nb] = active[j]
                    nb += 1
            done = _pack_rec(c, nxt, nb, count)
        return done
    finally:
        free(nxt)


def max_disjoint_sets(sets, cap=None):
    remap = {}
    py_masks = []
    for s in sets:
        m = 0
        for el in s:
            if el not in remap:
                remap[el] = len(remap)
            m |= 1 << remap[el]
        if m:
            py_masks.append(m)
    if not py_masks:
        return 0
    if len(remap) > 64:
        return _kernels_py.max_disjoint_sets(sets, cap)

    cdef int n = len(py_masks)
    cdef PackCtx c
    c.n = n
    c.cap = -1 if cap is None else cap
    c.masks = <unsigned long long *> malloc(2 * n * sizeof(unsigned long long))
    if c.masks == NULL:
        raise MemoryError
    c.cover = c.masks + n
    cdef int i, sz
    cdef int greedy = 0
    cdef unsigned long long taken = 0
    try:
        c.min_size = 65
        for i in range(n):
            c.masks[i] = py_masks[i]
            sz = _popcount(c.masks[i])
            if sz < c.min_size:
                c.min_size = sz
            if not (c.masks[i] & taken):
                taken |= c.masks[i]
                greedy += 1
        c.best = greedy
        if c.cap >= 0 and c.best >= c.cap:
            return c.cap
        _pack_rec(&c, c.masks, n, 0)
        if c.cap >= 0 and c.best >= c.cap:
            return c.cap
        return c.best
    finally:
        free(c.masks)
