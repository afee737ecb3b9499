"""FPT machinery: vertex-cover kernels, twin classes and equidistant sets."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

from .exact import DEFAULT_BUDGET, SolveOutcome, Status, brute_force_search
from .game import Allocation, Game, Topology, build_distance_matrix
from .stability import Notion, is_stable

# -- vertex cover ---------------------------------------------------------------


def _greedy_matching(edges) -> int:
    used = set()
    m = 0
    for u, v in edges:
        if u not in used and v not in used:
            used.update((u, v))
            m += 1
    return m


def compute_vertex_cover(t: Topology) -> frozenset[int]:
    """Minimum vertex cover by branching on a highest-degree vertex.

    Either the vertex joins the cover or all of its neighbours do. A greedy
    matching bounds the remainder from below.
    """
    best = [frozenset(range(t.vertex_count)) if t.edges else frozenset()]

    def rec(edges: frozenset, chosen: frozenset):
        if not edges:
            if len(chosen) < len(best[0]):
                best[0] = chosen
            return
        if len(chosen) + _greedy_matching(sorted(edges)) >= len(best[0]):
            return
        deg: dict[int, list[int]] = defaultdict(list)
        for u, v in edges:
            deg[u].append(v)
            deg[v].append(u)
        v = min(deg, key=lambda x: (-len(deg[x]), x))
        rec(frozenset(e for e in edges if v not in e), chosen | {v})
        nbrs = set(deg[v])
        rec(frozenset(e for e in edges if not (nbrs & set(e))), chosen | nbrs)

    rec(frozenset(t.edges), frozenset())
    return best[0]


def is_vertex_cover(t: Topology, cover) -> bool:
    return all(u in cover or v in cover for u, v in t.edges)


@dataclass(frozen=True)
class Kernel:
    game: Game
    back_map: tuple[int, ...]  # kernel vertex id -> original vertex id
    cover: frozenset[int]

    def lift(self, alloc: Allocation) -> Allocation:
        return Allocation(tuple(self.back_map[v] for v in alloc.placement))

    def __iter__(self):  # unpack as (game, back_map)
        return iter((self.game, self.back_map))


def kernelize_by_vc(game: Game, cover=None) -> Kernel:
    """Keep at most ``max(|A|, 1)`` vertices of each neighbourhood type outside the cover.

    Vertices outside a cover only see cover vertices, so two of them with the
    same neighbourhood are interchangeable; more than |A| copies never help.
    """
    t = game.topology
    cover = compute_vertex_cover(t) if cover is None else frozenset(cover)
    if not is_vertex_cover(t, cover):
        raise ValueError("not a vertex cover")
    cap = max(game.n_agents, 1)
    adj = t.adjacency
    per_type: dict[frozenset, int] = defaultdict(int)
    keep = []
    for v in range(t.vertex_count):
        if v in cover:
            keep.append(v)
            continue
        key = adj[v]
        if per_type[key] < cap:
            per_type[key] += 1
            keep.append(v)
    new_id = {v: i for i, v in enumerate(keep)}
    edges = tuple((new_id[u], new_id[v]) for u, v in t.edges if u in new_id and v in new_id)
    names = tuple(t.name(v) for v in keep) if t.vertex_names else None
    sub = Game(Topology(len(keep), edges, names), game.agents)
    return Kernel(sub, tuple(keep), frozenset(new_id[v] for v in cover))


def kernel_size_bound(cover_size: int, n_agents: int) -> int:
    return cover_size + 2**cover_size * max(n_agents, 1)


def solve_ef_vc(game: Game, budget: int = DEFAULT_BUDGET) -> SolveOutcome:
    kern = kernelize_by_vc(game)
    out = brute_force_search(kern.game, Notion.EF, budget=budget)
    if not out.found:
        return SolveOutcome(out.status, None, out.nodes_explored, "vc")
    witness = kern.lift(out.witness)
    assert is_stable(game, witness, Notion.EF)
    return SolveOutcome(Status.FOUND, witness, out.nodes_explored, "vc")


# -- neighbourhood diversity --------------------------------------------------

@dataclass(frozen=True)
class TypePartition:
    classes: tuple[tuple[int, ...], ...]
    kinds: tuple[str, ...]  # "clique" or "independent"; singletons count as cliques

    def __len__(self):
        return len(self.classes)


def neighborhood_partition(t: Topology) -> TypePartition:
    """Twin classes: ``u ~ v`` iff ``N(u) - {v} == N(v) - {u}``."""
    n = t.vertex_count
    adj = t.adjacency
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    # open twins share N(v); closed twins share N[v]; hashing finds both
    for key in (lambda v: adj[v], lambda v: adj[v] | {v}):
        groups: dict[frozenset, list[int]] = defaultdict(list)
        for v in range(n):
            groups[key(v)].append(v)
        for members in groups.values():
            for v in members[1:]:
                parent[find(v)] = find(members[0])
    classes: dict[int, list[int]] = defaultdict(list)
    for v in range(n):
        classes[find(v)].append(v)
    ordered = sorted(classes.values())
    kinds = tuple("independent" if len(c) > 1 and c[1] not in adj[c[0]] else "clique" for c in ordered)
    return TypePartition(tuple(tuple(c) for c in ordered), kinds)


def solve_ef_nd(game: Game, budget: int = DEFAULT_BUDGET) -> SolveOutcome:
    """Try every capacity-respecting map from agents to twin classes."""
    part = neighborhood_partition(game.topology)
    A = game.n_agents
    cls = part.classes
    fill = [0] * len(cls)
    pos = [0] * A
    nodes = 0

    def rec(a):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _Abort
        if a == A:
            return is_stable(game, Allocation(tuple(pos)), Notion.EF)
        for i, c in enumerate(cls):
            if fill[i] < len(c):
                pos[a] = c[fill[i]]
                fill[i] += 1
                if rec(a + 1):
                    return True
                fill[i] -= 1
        return False

    try:
        ok = rec(0)
    except _Abort:
        return SolveOutcome(Status.ABORTED, None, nodes, "nd")
    if ok:
        return SolveOutcome(Status.FOUND, Allocation(tuple(pos)), nodes, "nd")
    return SolveOutcome(Status.NONE, None, nodes, "nd")


class _Abort(Exception):
    pass


# -- equidistant sets ----------------------------------------------------------

def _pivot_chain(rows, candidates):
    chain = []
    while candidates:
        p = candidates[0]
        by_color: dict[int, list[int]] = defaultdict(list)
        for v in candidates[1:]:
            by_color[rows[p][v]].append(v)
        if not by_color:
            chain.append((p, None))
            break
        color = max(by_color, key=lambda c: (len(by_color[c]), c))
        chain.append((p, color))
        candidates = by_color[color]
    return chain


def _is_equidistant(rows, s) -> bool:
    s = list(s)
    return len({rows[u][v] for i, u in enumerate(s) for v in s[i + 1:]}) <= 1


def equidistant_set(t: Topology | Game, k: int) -> frozenset[int] | None:
    """A k-set of vertices with all pairwise distances equal, or None.

    Pigeonhole extraction: pivot on the lowest id, keep the largest distance
    class (ties to the larger distance) and recurse. Pivots sharing a colour
    plus the last vertex are pairwise equidistant. A colour-restricted greedy
    chain is tried next.
    """
    topo = t.topology if isinstance(t, Game) else t
    rows = (t.dist if isinstance(t, Game) else build_distance_matrix(topo)).tolist()
    n = topo.vertex_count
    if k <= 0:
        return frozenset()
    if k > n:
        return None
    if k == 1:
        return frozenset({0})
    chain = _pivot_chain(rows, list(range(n)))
    last = chain[-1][0]
    counts: dict[int, list[int]] = defaultdict(list)
    for p, c in chain[:-1]:
        counts[c].append(p)
    for c in sorted(counts, key=lambda c: (-len(counts[c]), -c)):
        s = counts[c] + [last]
        if len(s) >= k:
            out = frozenset(sorted(s)[:k])
            assert _is_equidistant(rows, out)
            return out
    for c in range(max(max(r) for r in rows), 0, -1):
        s: list[int] = []
        cand = list(range(n))
        while cand and len(s) < k:
            p = cand[0]
            s.append(p)
            cand = [v for v in cand[1:] if rows[p][v] == c]
        if len(s) >= k:
            out = frozenset(s)
            assert _is_equidistant(rows, out)
            return out
    return None


def solve_ef_diameter(game: Game, budget: int = DEFAULT_BUDGET) -> SolveOutcome:
    """Place agents on an equidistant set when one exists; else exhaustive search."""
    s = equidistant_set(game, game.n_agents)
    if s is not None:
        alloc = Allocation(tuple(sorted(s)))
        assert is_stable(game, alloc, Notion.EF), "equidistant placement is not envy-free"
        return SolveOutcome(Status.FOUND, alloc, 1, "diameter")
    out = brute_force_search(game, Notion.EF, budget=budget)
    return SolveOutcome(out.status, out.witness, out.nodes_explored, "diameter")


__all__ = [
    "Kernel", "TypePartition", "compute_vertex_cover", "equidistant_set", "is_vertex_cover",
    "kernel_size_bound", "kernelize_by_vc", "neighborhood_partition", "solve_ef_diameter",
    "solve_ef_nd", "solve_ef_vc",
]
