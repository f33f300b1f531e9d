"""Backend dispatch for the combinatorial kernels.

The compiled extension is used when importable; set ``HGALLOC_BACKEND=python``
to force the pure fallback, or call :func:`use_backend` at runtime (handy for
benchmarks and parity tests).
"""

import os

import numpy as np

from . import _kernels_py

_BACKENDS = {"python": _kernels_py}
try:
    from . import _ckernels

    _BACKENDS["compiled"] = _ckernels
except ImportError:  # extension not built; pure fallback only
    pass

_env = os.environ.get("HGALLOC_BACKEND", "")
if _env:
    if _env not in _BACKENDS:
        raise ImportError(f"HGALLOC_BACKEND={_env!r} not available "
                          f"(have: {sorted(_BACKENDS)})")
    _active = _BACKENDS[_env]
else:
    _active = _BACKENDS.get("compiled", _kernels_py)

# packing universes beyond 64 elements always go through the pure backend
_PACK_UNIVERSE_LIMIT = 64


def backend_name():
    return _active.NAME


def available_backends():
    return sorted(_BACKENDS)


def use_backend(name):
    """Switch the active backend ("python" or "compiled")."""
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r} (have: {sorted(_BACKENDS)})")
    _active = _BACKENDS[name]


def threshold_subsets(values, q, threshold):
    """All q-element index subsets of ``values`` with sum strictly greater
    than ``threshold``.

    Returns a lexicographically sorted list of ascending index tuples.  Values
    must be non-negative (interference powers).
    """
    values = np.asarray(values, dtype=np.float64)
    n = values.size
    if q < 1:
        raise ValueError("subset size must be >= 1")
    if n < q:
        return []
    order = np.argsort(-values, kind="stable")
    v_sorted = values[order]
    combos = _active.threshold_subsets_sorted(v_sorted, int(q), float(threshold))
    out = [tuple(sorted(int(order[j]) for j in combo)) for combo in combos]
    out.sort()
    return out


def max_matching_size(n_nodes, edges):
    """Maximum cardinality matching of a simple graph on ``n_nodes`` nodes."""
    return _active.max_matching_size(int(n_nodes), list(edges))


def max_disjoint_sets(sets, cap=None):
    """Maximum number of pairwise-disjoint sets in ``sets``.

    Exact when ``cap`` is None; with a cap, returns min(maximum, cap) and the
    search may stop early once a cap-sized packing is found.
    """
    sets = [tuple(s) for s in sets]
    universe = set()
    for s in sets:
        universe.update(s)
    if len(universe) > _PACK_UNIVERSE_LIMIT:
        return _kernels_py.max_disjoint_sets(sets, cap)
    return _active.max_disjoint_sets(sets, cap)
