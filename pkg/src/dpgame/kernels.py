"""Backend selection for the hot kernels.

The compiled extension is used when importable; set ``DPGAME_PURE_PYTHON=1``
to force the pure-Python fallback.
"""
from __future__ import annotations

import os

import numpy as np

from . import _pykernels

FOUND, NONE, ABORTED = _pykernels.FOUND, _pykernels.NONE, _pykernels.ABORTED
EF, SWAP, JUMP = _pykernels.EF, _pykernels.SWAP, _pykernels.JUMP

_compiled = None
if not os.environ.get("DPGAME_PURE_PYTHON"):
    try:
        from . import _ckernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"
_impl = _compiled if _compiled is not None else _pykernels


def backends() -> dict:
    out = {"python": _pykernels}
    if _compiled is not None:
        out["cython"] = _compiled
    return out


def plan_checks(ptr, tgt, n_agents: int, notion: int):
    """Bucket the pairwise checks by the depth at which they become decidable.

    Envy of ``a`` towards ``b`` depends on the positions of ``a``, ``b`` and
    every agent ``a`` wants, so it is decided once the largest of those
    indices is placed. Jump deviations also need the set of empty vertices
    and are only checked at full placements.
    """
    ptr = list(ptr)
    tgt = list(tgt)
    wants = [tgt[ptr[a]:ptr[a + 1]] for a in range(n_agents)]
    buckets: list[list[tuple[int, int]]] = [[] for _ in range(n_agents)]
    if notion == EF:
        for a in range(n_agents):
            if not wants[a]:
                continue
            top = max(wants[a] + [a])
            for b in range(n_agents):
                if b != a:
                    buckets[max(top, b)].append((a, b))
    elif notion == SWAP:
        for a in range(n_agents):
            for b in range(a + 1, n_agents):
                if wants[a] and wants[b]:
                    buckets[max(wants[a] + wants[b] + [a, b])].append((a, b))
    check_ptr = [0]
    flat: list[tuple[int, int]] = []
    for bucket in buckets:
        flat.extend(bucket)
        check_ptr.append(len(flat))
    if not n_agents:
        check_ptr = [0, 0]
    a_arr = np.asarray([p[0] for p in flat] or [0], dtype=np.int32)
    b_arr = np.asarray([p[1] for p in flat] or [0], dtype=np.int32)
    return np.asarray(check_ptr, dtype=np.int32), a_arr, b_arr


def search(game, notion: int, n_fill: int = 0, budget: int = 10**8, first_vertex: int = -1,
           impl=None):
    ptr, tgt, ideal = game.pref_arrays
    cp, ca, cb = plan_checks(ptr, tgt, game.n_agents, notion)
    return (impl or _impl).search(game.dist, ptr, tgt, ideal, game.n_vertices, cp, ca, cb,
                                  notion, n_fill, budget, first_vertex)


def is_stable(game, placement, notion: int, impl=None) -> bool:
    ptr, tgt, ideal = game.pref_arrays
    return bool((impl or _impl).is_stable(game.dist, ptr, tgt, ideal, game.n_vertices,
                                          list(placement), notion))
