"""Pure-Python hot kernels; the compiled ``_ckernels`` extension mirrors this API.

Arrays follow the CSR layout of ``Game.pref_arrays``: agent ``a`` wants
``tgt[ptr[a]:ptr[a+1]]`` at distances ``ideal[ptr[a]:ptr[a+1]]``.
"""

FOUND, NONE, ABORTED = 0, 1, 2
EF, SWAP, JUMP = 0, 1, 2


def _aslist(x):
    return x.tolist() if hasattr(x, "tolist") else list(x)


def _envies(a, b, pos, dist, ptr, tgt, ideal):
    ra = dist[pos[a]]
    pb = pos[b]
    rb = dist[pb]
    now = after = 0
    for k in range(ptr[a], ptr[a + 1]):
        c = tgt[k]
        w = ideal[k]
        if c == b:
            continue  # distance to b is unchanged by the swap
        pc = pos[c]
        now += abs(w - ra[pc])
        after += abs(w - rb[pc])
    return after < now


def _cost_at(a, v, pos, dist, ptr, tgt, ideal):
    row = dist[v]
    s = 0
    for k in range(ptr[a], ptr[a + 1]):
        s += abs(ideal[k] - row[pos[tgt[k]]])
    return s


def _leaf_ok(pos, used, n_vertices, interested, notion, n_fill, dist, ptr, tgt, ideal):
    if notion == JUMP or n_fill > 0:
        base = [_cost_at(a, pos[a], pos, dist, ptr, tgt, ideal) for a in interested]
        safe = 0
        for v in range(n_vertices):
            if used[v]:
                continue
            tempting = False
            for i, a in enumerate(interested):
                if _cost_at(a, v, pos, dist, ptr, tgt, ideal) < base[i]:
                    tempting = True
                    break
            if tempting:
                if notion == JUMP:
                    return False
            else:
                safe += 1
        if n_fill > 0 and safe < n_fill:
            return False
    return True


def search(dist, ptr, tgt, ideal, n_vertices, check_ptr, check_a, check_b,
           notion, n_fill=0, budget=10**8, first_vertex=-1):
    """Depth-first search over injective placements in lexicographic order.

    ``check_ptr[k]:check_ptr[k+1]`` indexes the agent pairs whose envy (EF) or
    mutual envy (SWAP) is fully determined once agent ``k`` is placed.
    Returns ``(status, placement or None, nodes)``.
    """
    dist = _aslist(dist)
    ptr, tgt, ideal = _aslist(ptr), _aslist(tgt), _aslist(ideal)
    check_ptr, check_a, check_b = _aslist(check_ptr), _aslist(check_a), _aslist(check_b)
    n_agents = len(ptr) - 1
    interested = [a for a in range(n_agents) if ptr[a + 1] > ptr[a]]
    pos = [0] * n_agents
    used = [False] * n_vertices
    nodes = 0
    aborted = False

    def ok_at(k):
        for q in range(check_ptr[k], check_ptr[k + 1]):
            a, b = check_a[q], check_b[q]
            if _envies(a, b, pos, dist, ptr, tgt, ideal):
                if notion == EF or _envies(b, a, pos, dist, ptr, tgt, ideal):
                    return False
        return True

    def rec(k):
        nonlocal nodes, aborted
        if k == n_agents:
            return _leaf_ok(pos, used, n_vertices, interested, notion, n_fill,
                            dist, ptr, tgt, ideal)
        lo, hi = 0, n_vertices
        if k == 0 and first_vertex >= 0:
            lo, hi = first_vertex, first_vertex + 1
        for v in range(lo, hi):
            if used[v]:
                continue
            nodes += 1
            if nodes > budget:
                aborted = True
                return False
            pos[k] = v
            used[v] = True
            if ok_at(k) and rec(k + 1):
                return True
            used[v] = False
            if aborted:
                return False
        return False

    if rec(0):
        return FOUND, list(pos), nodes
    return (ABORTED if aborted else NONE), None, nodes


def is_stable(dist, ptr, tgt, ideal, n_vertices, pos, notion):
    """Short-circuiting stability predicate for a complete placement."""
    dist = _aslist(dist)
    ptr, tgt, ideal, pos = _aslist(ptr), _aslist(tgt), _aslist(ideal), _aslist(pos)
    n_agents = len(ptr) - 1
    interested = [a for a in range(n_agents) if ptr[a + 1] > ptr[a]]
    if notion == JUMP:
        used = [False] * n_vertices
        for v in pos:
            used[v] = True
        return _leaf_ok(pos, used, n_vertices, interested, JUMP, 0, dist, ptr, tgt, ideal)
    for a in interested:
        for b in range(n_agents):
            if b == a:
                continue
            if _envies(a, b, pos, dist, ptr, tgt, ideal):
                if notion == EF or _envies(b, a, pos, dist, ptr, tgt, ideal):
                    return False
    return True
