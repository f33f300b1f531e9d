"""Pure-Python kernel implementations.

These are the reference versions of the combinatorial hot spots: enumeration of
interferer subsets whose summed power crosses a threshold, maximum cardinality
matching (blossom algorithm), and exact maximum set packing.  The compiled
backend in ``_ckernels.pyx`` mirrors the same contracts; either backend can be
selected through :mod:`hgalloc.kernels`.
"""

from collections import deque

NAME = "python"


def threshold_subsets_sorted(values, q, threshold):
    """All q-subsets of positions into ``values`` whose sum strictly exceeds
    ``threshold``.

    ``values`` must be sorted in descending order; that ordering is what makes
    the prefix-sum bound below a valid prune.  Returns position tuples with
    ascending entries, in lexicographic order.
    """
    n = len(values)
    if q < 1 or n < q:
        return []
    v = [float(x) for x in values]
    # prefix[i] = v[0]+...+v[i-1], accumulated left to right so both backends
    # round identically
    prefix = [0.0] * (n + 1)
    for i in range(n):
        prefix[i + 1] = prefix[i] + v[i]
    out = []
    chosen = [0] * q

    def rec(start, depth, acc):
        need = q - depth
        if need == 0:
            if acc > threshold:
                out.append(tuple(chosen))
            return
        for j in range(start, n - need + 1):
            # best completion from j uses the `need` largest remaining values
            if acc + (prefix[j + need] - prefix[j]) <= threshold:
                break
            chosen[depth] = j
            rec(j + 1, depth + 1, acc + v[j])

    rec(0, 0, 0.0)
    return out


def max_matching_size(n, edges):
    """Maximum cardinality matching in a simple undirected graph.

    Standard blossom-contraction algorithm, O(V^3).  ``edges`` is an iterable
    of (u, v) pairs with 0 <= u, v < n.
    """
    if n <= 0:
        return 0
    adj = [[] for _ in range(n)]
    seen = set()
    for u, v in edges:
        if u == v:
            continue
        key = (u, v) if u < v else (v, u)
        if key in seen:
            continue
        seen.add(key)
        adj[u].append(v)
        adj[v].append(u)

    match = [-1] * n
    p = [-1] * n
    base = list(range(n))
    used = [False] * n
    blossom = [False] * n

    def lca(a, b):
        mark = [False] * n
        while True:
            a = base[a]
            mark[a] = True
            if match[a] == -1:
                break
            a = p[match[a]]
        while True:
            b = base[b]
            if mark[b]:
                return b
            b = p[match[b]]

    def mark_path(v, b, child):
        while base[v] != b:
            blossom[base[v]] = True
            blossom[base[match[v]]] = True
            p[v] = child
            child = match[v]
            v = p[match[v]]

    def find_path(root):
        for i in range(n):
            used[i] = False
            p[i] = -1
            base[i] = i
        used[root] = True
        q = deque([root])
        while q:
            v = q.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and p[match[to]] != -1):
                    # odd cycle: contract the blossom
                    curbase = lca(v, to)
                    for i in range(n):
                        blossom[i] = False
                    mark_path(v, curbase, to)
                    mark_path(to, curbase, v)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = curbase
                            if not used[i]:
                                used[i] = True
                                q.append(i)
                elif p[to] == -1:
                    p[to] = v
                    if match[to] == -1:
                        u = to
                        while u != -1:
                            pv = p[u]
                            ppv = match[pv]
                            match[u] = pv
                            match[pv] = u
                            u = ppv
                        return True
                    used[match[to]] = True
                    q.append(match[to])
        return False

    res = 0
    for v in range(n):
        if match[v] == -1 and adj[v]:
            if find_path(v):
                res += 1
    return res


def max_disjoint_sets(sets, cap=None):
    """Maximum number of pairwise-disjoint sets (set packing), exact below
    ``cap``.

    Branch and bound on the most frequent element; elements may be arbitrary
    hashables.  With ``cap`` the search stops as soon as a packing of that
    size is found and returns min(true maximum, cap); results strictly below
    cap are exact.  Exponential worst case, intended for the per-vertex
    families seen during elimination ordering.
    """
    masks = _to_masks(sets)
    if not masks:
        return 0
    return _pack_masks(masks, cap)


def _to_masks(sets):
    remap = {}
    masks = []
    for s in sets:
        m = 0
        for e in s:
            if e not in remap:
                remap[e] = len(remap)
            m |= 1 << remap[e]
        if m:
            masks.append(m)
    return masks


def _pack_masks(masks, cap=None):
    # greedy seed: any maximal packing is a valid lower bound
    best = 0
    taken = 0
    for m in masks:
        if not (m & taken):
            taken |= m
            best += 1
    if cap is not None and best >= cap:
        return cap

    min_size = min(m.bit_count() for m in masks)

    def rec(active, count):
        nonlocal best
        if count > best:
            best = count
        if cap is not None and best >= cap:
            return True
        if not active:
            return False
        union = 0
        freq = {}
        for m in active:
            union |= m
            mm = m
            while mm:
                low = mm & -mm
                freq[low] = freq.get(low, 0) + 1
                mm ^= low
        bound = min(len(active), union.bit_count() // min_size)
        if count + bound > best:
            # star cover refinement: greedily group sets around a shared
            # element; a packing takes at most one set per group
            covers = []
            for m in active:
                for idx in range(len(covers)):
                    ic = covers[idx] & m
                    if ic:
                        covers[idx] = ic
                        break
                else:
                    covers.append(m)
            bound = min(bound, len(covers))
        if count + bound <= best:
            return False
        e = min(freq, key=lambda b: (freq[b], b))
        containing = [m for m in active if m & e]
        for m in containing:
            if rec([t for t in active if not (t & m)], count + 1):
                return True
        return rec([t for t in active if not (t & e)], count)

    rec(masks, 0)
    if cap is not None and best >= cap:
        return cap
    return best
