"""Instances from hardness reductions, small counterexamples and random games."""
from __future__ import annotations

import random
import warnings
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .game import AgentPrefs, Allocation, Game, Topology, ensure_valid


@dataclass(frozen=True)
class ReductionArtifact:
    """A constructed game plus named vertex and agent groups.

    ``forward`` maps a solution of the source problem to an allocation.
    """

    kind: str
    game: Game
    vertex_groups: Mapping[str, tuple[int, ...]]
    agent_groups: Mapping[str, tuple[int, ...]]
    params: Mapping[str, object] = field(default_factory=dict)
    _forward: Callable[..., Allocation] | None = field(default=None, repr=False, compare=False)

    def forward(self, solution) -> Allocation:
        if self._forward is None:
            raise NotImplementedError(f"{self.kind} has no forward map")
        return self._forward(solution)


def _check_3partition(S: Sequence[int], N: int, B: int) -> None:
    if len(S) != 3 * N:
        raise ValueError(f"expected {3 * N} elements, got {len(S)}")
    if any(s < 1 for s in S):
        raise ValueError("elements must be positive")
    if sum(S) != N * B:
        raise ValueError(f"elements sum to {sum(S)}, expected N*B = {N * B}")
    if any(not (B / 4 < s < B / 2) for s in S):
        warnings.warn("some element lies outside (B/4, B/2); the construction is still built", stacklevel=3)


def _check_partition_solution(S, N, B, triples):
    triples = [tuple(t) for t in triples]
    flat = sorted(i for t in triples for i in t)
    if len(triples) != N or flat != list(range(len(S))):
        raise ValueError("solution must split the element indices into N groups")
    for t in triples:
        if sum(S[i] for i in t) != B:
            raise ValueError(f"group {t} does not sum to {B}")
    return triples


def _item_agents(S):
    """Item agents grouped by element, as (agent id ranges, next free id)."""
    groups, nxt = [], 0
    for s in S:
        groups.append(tuple(range(nxt, nxt + s)))
        nxt += s
    return groups, nxt


def gen_from_3partition(S: Sequence[int], N: int, B: int) -> ReductionArtifact:
    """N disjoint B-cliques plus an apex; one guard wants everyone adjacent."""
    S = list(S)
    _check_3partition(S, N, B)
    apex = N * B
    edges = []
    for j in range(N):
        block = range(j * B, (j + 1) * B)
        edges += [(u, v) for u in block for v in block if u < v]
    edges += [(v, apex) for v in range(apex)]
    items, guard = _item_agents(S)
    agents = []
    for i, grp in enumerate(items):
        for j, a in enumerate(grp):
            agents.append(AgentPrefs(f"a{i}_{j}", {b: 1 for b in grp if b != a}))
    agents.append(AgentPrefs("g", {b: 1 for b in range(guard)}))
    topo = Topology(apex + 1, tuple(edges),
                    tuple(f"c{j}_{x}" for j in range(N) for x in range(B)) + ("vg",))
    game = ensure_valid(Game(topo, agents))

    def forward(triples):
        pos = [0] * game.n_agents
        pos[guard] = apex
        for j, t in enumerate(_check_partition_solution(S, N, B, triples)):
            slots = iter(range(j * B, (j + 1) * B))
            for i in t:
                for a in items[i]:
                    pos[a] = next(slots)
        return Allocation(tuple(pos))

    vg = {f"clique{j}": tuple(range(j * B, (j + 1) * B)) for j in range(N)}
    vg["apex"] = (apex,)
    ag = {f"item{i}": grp for i, grp in enumerate(items)}
    ag["guard"] = (guard,)
    return ReductionArtifact("3partition-clique", game, vg, ag, {"S": tuple(S), "N": N, "B": B}, forward)


def gen_3partition_tree(S: Sequence[int], N: int, B: int) -> ReductionArtifact:
    """Depth-two tree: an apex over N star centres, each with B leaves."""
    S = list(S)
    _check_3partition(S, N, B)
    if N <= 2 or B <= N:
        warnings.warn("hardness argument assumes N > 2 and B > N", stacklevel=2)
    apex = N * (B + 1)
    centers = [j * (B + 1) for j in range(N)]
    edges = [(c, c + x) for c in centers for x in range(1, B + 1)] + [(c, apex) for c in centers]
    items, guard = _item_agents(S)
    specials = tuple(range(guard + 1, guard + 1 + N))
    agents = []
    for i, grp in enumerate(items):
        for j, a in enumerate(grp):
            w = {b: 2 for b in grp if b != a}
            w[guard] = 2
            agents.append(AgentPrefs(f"a{i}_{j}", w))
    gw = {b: 2 for b in range(guard)}
    gw.update({b: 1 for b in specials})
    agents.append(AgentPrefs("g", gw))
    agents += [AgentPrefs(f"b{j}", {guard: 1}) for j in range(N)]
    names = []
    for j in range(N):
        names += [f"u{j}"] + [f"l{j}_{x}" for x in range(B)]
    topo = Topology(apex + 1, tuple(edges), tuple(names) + ("vg",))
    game = ensure_valid(Game(topo, agents))

    def forward(triples):
        pos = [0] * game.n_agents
        pos[guard] = apex
        for j, t in enumerate(_check_partition_solution(S, N, B, triples)):
            pos[specials[j]] = centers[j]
            slots = iter(range(centers[j] + 1, centers[j] + B + 1))
            for i in t:
                for a in items[i]:
                    pos[a] = next(slots)
        return Allocation(tuple(pos))

    vg = {f"star{j}": tuple(range(c, c + B + 1)) for j, c in enumerate(centers)}
    vg["apex"] = (apex,)
    ag = {f"item{i}": grp for i, grp in enumerate(items)}
    ag["guard"] = (guard,)
    ag["special"] = specials
    return ReductionArtifact("3partition-tree", game, vg, ag, {"S": tuple(S), "N": N, "B": B}, forward)


def gen_3partition_path(S: Sequence[int], N: int, B: int) -> ReductionArtifact:
    """Path on N*B + N + 1 vertices; boundary agents chained B+1 apart."""
    S = list(S)
    _check_3partition(S, N, B)
    n = N * B + N + 1
    boundary = tuple(range(N + 1))
    agents = []
    for i in range(N + 1):
        other = 1 if i == 0 else i - 1
        agents.append(AgentPrefs(f"b{i}", {other: B + 1}))
    items = []
    nxt = N + 1
    for i, s in enumerate(S):
        grp = tuple(range(nxt, nxt + s))
        nxt += s
        items.append(grp)
        for j, a in enumerate(grp):
            if s == 1:
                w = {}
            else:
                w = {grp[1]: 1} if j == 0 else {grp[j - 1]: 1}
            agents.append(AgentPrefs(f"a{i}_{j}", w))
    game = ensure_valid(Game(Topology.path(n), agents))

    def forward(triples):
        pos = [0] * game.n_agents
        for i in boundary:
            pos[i] = i * (B + 1)
        for j, t in enumerate(_check_partition_solution(S, N, B, triples)):
            slots = iter(range(j * (B + 1) + 1, (j + 1) * (B + 1)))
            for i in t:
                for a in items[i]:
                    pos[a] = next(slots)
        return Allocation(tuple(pos))

    vg = {"boundary": tuple(i * (B + 1) for i in boundary)}
    for j in range(N):
        vg[f"segment{j}"] = tuple(range(j * (B + 1) + 1, (j + 1) * (B + 1)))
    ag = {"boundary": boundary}
    ag.update({f"item{i}": grp for i, grp in enumerate(items)})
    return ReductionArtifact("3partition-path", game, vg, ag, {"S": tuple(S), "N": N, "B": B}, forward)


def _cubic_check(n: int, edges) -> list[tuple[int, int]]:
    edges = sorted({(min(u, v), max(u, v)) for u, v in edges})
    deg = [0] * n
    for u, v in edges:
        if u == v:
            raise ValueError("source graph has a self-loop")
        deg[u] += 1
        deg[v] += 1
    if any(d != 3 for d in deg):
        raise ValueError("source graph is not cubic")
    return edges


def gen_from_cubic_bisection(n: int, edges: Sequence[Sequence[int]], k: int) -> ReductionArtifact:
    """Two B-leaf stars whose centres are joined by k paths of length two.

    Vertex layout: c1 = 0, c2 = 1, the B leaves of c1, the B leaves of c2,
    then the k middle vertices.
    """
    H = _cubic_check(n, edges)
    N = n // 2
    if (3 * N - k) % 2 or k < 1 or k > 3 * N:
        raise ValueError("need 1 <= k <= 3N with 3N - k even")
    B = (3 * N - k) // 2
    c1, c2 = 0, 1
    s1 = tuple(range(2, 2 + B))
    s2 = tuple(range(2 + B, 2 + 2 * B))
    mid = tuple(range(2 + 2 * B, 2 + 2 * B + k))
    topo_edges = [(c1, v) for v in s1] + [(c2, v) for v in s2] + [(c, m) for m in mid for c in (c1, c2)]
    names = ("c1", "c2") + tuple(f"s1_{i}" for i in range(B)) + tuple(f"s2_{i}" for i in range(B)) \
        + tuple(f"m{i}" for i in range(k))
    topo = Topology(2 + 2 * B + k, tuple(topo_edges), names)
    agents = []
    for i, (u, v) in enumerate(H):
        agents.append(AgentPrefs(f"e{u}_{v}", {j: 2 for j, e in enumerate(H) if j != i and {u, v} & set(e)}))
    m = len(H)
    agents += [AgentPrefs(f"g{i}", {j: 1 for j in range(m)}) for i in (1, 2)]
    game = ensure_valid(Game(topo, agents))
    from .parameterized import compute_vertex_cover, is_vertex_cover

    assert is_vertex_cover(topo, {c1, c2}) and len(compute_vertex_cover(topo)) == 2

    def forward(side_x):
        X = set(side_x)
        if len(X) != N or not X <= set(range(n)):
            raise ValueError("bisection side must hold exactly half of the vertices")
        inside_x = [i for i, (u, v) in enumerate(H) if u in X and v in X]
        inside_y = [i for i, (u, v) in enumerate(H) if u not in X and v not in X]
        cut = [i for i, (u, v) in enumerate(H) if (u in X) != (v in X)]
        if len(cut) != k:
            raise ValueError(f"bisection cuts {len(cut)} edges, construction expects exactly {k}")
        pos = [0] * game.n_agents
        pos[m], pos[m + 1] = c1, c2
        for group, slots in ((inside_x, s1), (inside_y, s2), (cut, mid)):
            for a, v in zip(group, slots):
                pos[a] = v
        return Allocation(tuple(pos))

    vg = {"c1": (c1,), "c2": (c2,), "S1": s1, "S2": s2, "M": mid}
    ag = {"edge": tuple(range(m)), "guard": (m, m + 1)}
    return ReductionArtifact("cubic-bisection", game, vg, ag, {"n": n, "k": k, "B": B}, forward)


def gen_from_cnf(clauses: Sequence[Sequence[int]]) -> ReductionArtifact:
    """Literal-occurrence vertices plus 2m+1 universal vertices; 3m+1 agents wanting adjacency.

    Literals are nonzero signed variable ids, DIMACS style.
    """
    clauses = [tuple(c) for c in clauses]
    if not clauses:
        raise ValueError("formula has no clauses")
    for c in clauses:
        if len(c) != 3 or any(not isinstance(x, int) or x == 0 for x in c):
            raise ValueError(f"malformed clause {c!r}: need exactly three nonzero literals")
    m = len(clauses)
    lits = [(ci, p, lit) for ci, c in enumerate(clauses) for p, lit in enumerate(c)]
    n1 = 3 * m
    edges = []
    for i, (c1, _, l1) in enumerate(lits):
        for j in range(i + 1, n1):
            c2, _, l2 = lits[j]
            if c1 != c2 and l1 != -l2:
                edges.append((i, j))
    n = n1 + 2 * m + 1
    for u in range(n1, n):
        edges += [(v, u) for v in range(u)]
    names = tuple(f"l{ci}_{p}" for ci, p, _ in lits) + tuple(f"u{i}" for i in range(2 * m + 1))
    n_agents = 3 * m + 1
    agents = [AgentPrefs(f"a{i}", {b: 1 for b in range(n_agents) if b != i}) for i in range(n_agents)]
    game = ensure_valid(Game(Topology(n, tuple(edges), names), agents))
    assert 5 * n_agents <= 3 * n + 5

    def forward(assignment: Mapping[int, bool]):
        picks = []
        for ci, c in enumerate(clauses):
            p = next((p for p, lit in enumerate(c) if assignment.get(abs(lit), False) == (lit > 0)), None)
            if p is None:
                raise ValueError(f"assignment falsifies clause {ci}")
            picks.append(3 * ci + p)
        return Allocation(tuple(picks + list(range(n1, n))))

    vg = {"V1": tuple(range(n1)), "V2": tuple(range(n1, n))}
    ag = {"agents": tuple(range(n_agents))}
    return ReductionArtifact("cnf", game, vg, ag, {"clauses": tuple(clauses)}, forward)


def parse_dimacs(text: str) -> list[tuple[int, ...]]:
    """Clauses from DIMACS CNF text (comment and problem lines skipped)."""
    clauses, cur = [], []
    for line in text.splitlines():
        line = line.strip()
        if not line or line[0] in "cp%":
            continue
        for tok in line.split():
            x = int(tok)
            if x == 0:
                clauses.append(tuple(cur))
                cur = []
            else:
                cur.append(x)
    if cur:
        clauses.append(tuple(cur))
    return clauses


def gen_from_clique(n: int, edges: Sequence[Sequence[int]], k: int) -> ReductionArtifact:
    """Source graph plus a universal vertex; k+1 agents want mutual adjacency."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= {n}")
    u = n
    topo = Topology(n + 1, tuple((int(a), int(b)) for a, b in edges) + tuple((v, u) for v in range(n)),
                    tuple(f"v{v}" for v in range(n)) + ("u*",))
    interested = tuple(range(k + 1))
    agents = [AgentPrefs(f"i{i}", {b: 1 for b in interested if b != i}) for i in interested]
    agents += [AgentPrefs(f"n{i}", {}) for i in range(n - k)]
    game = ensure_valid(Game(topo, agents))

    def forward(clique):
        clique = sorted(clique)
        if len(clique) != k:
            raise ValueError(f"expected a {k}-clique")
        rest = [v for v in range(n) if v not in clique]
        return Allocation(tuple(clique + [u] + rest))

    vg = {"source": tuple(range(n)), "universal": (u,)}
    ag = {"interested": interested, "neutral": tuple(range(k + 1, n + 1))}
    return ReductionArtifact("clique", game, vg, ag, {"n": n, "k": k}, forward)


@dataclass(frozen=True)
class Counterexample:
    game: Game
    allocation: Allocation | None = None


COUNTEREXAMPLES = ("no-ef-cycle", "no-jump-path", "no-swap-path", "swap-not-ef")


def gen_counterexample(family: str, n_agents: int = 3, path_length: int = 4) -> Counterexample:
    if family == "no-ef-cycle":
        if n_agents < 3:
            raise ValueError("no-ef-cycle needs at least 3 agents")
        wants = [{(i + 1) % n_agents: 2} for i in range(n_agents)]
        return Counterexample(Game.from_wants(Topology.cycle(n_agents + 1), wants))
    if family == "no-jump-path":
        if path_length < 4:
            raise ValueError("no-jump-path needs a path on at least 4 vertices")
        return Counterexample(Game.from_wants(Topology.path(path_length), [{1: 1}, {0: 2}]))
    if family == "no-swap-path":
        wants = [{1: 1, 2: 2}, {0: 2, 2: 1}, {0: 1, 1: 2}]
        return Counterexample(Game.from_wants(Topology.path(3), wants))
    if family == "swap-not-ef":
        game = Game.from_wants(Topology.cycle(4), [{1: 2}, {2: 2}, {0: 2}])
        # a1 on v1, a3 on v2, a2 on v3 along the cycle
        return Counterexample(game, Allocation((0, 2, 1)))
    raise ValueError(f"unknown family {family!r}; choose from {', '.join(COUNTEREXAMPLES)}")


SHAPES = ("generic", "symmetric", "dag", "in-star", "out-star")
TOPOLOGIES = ("random", "clique", "star", "path", "cycle")


def random_topology(n: int, edge_density: float, rng: random.Random, kind: str = "random") -> Topology:
    if kind == "clique":
        return Topology.complete(n)
    if kind == "star":
        return Topology.star(n - 1)
    if kind == "path":
        return Topology.path(n)
    if kind == "cycle":
        return Topology.cycle(n) if n >= 3 else Topology.path(n)
    if kind != "random":
        raise ValueError(f"unknown topology kind {kind!r}")
    perm = list(range(n))
    rng.shuffle(perm)
    edges = {tuple(sorted((perm[v], perm[rng.randrange(v)]))) for v in range(1, n)}
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < edge_density:
                edges.add((u, v))
    return Topology(n, tuple(sorted(edges)))


def gen_random(n: int, edge_density: float, n_agents: int, pref_density: float, max_ideal: int,
               shape: str = "generic", seed: int = 0, topology: str = "random") -> Game:
    """Seeded random game: random spanning tree plus extra edges, preferences per ``shape``."""
    if not 0 <= n_agents <= n or n < 1:
        raise ValueError("need n >= |A| >= 0 and n >= 1")
    if max_ideal < 1:
        raise ValueError("max_ideal must be positive")
    if shape not in SHAPES:
        raise ValueError(f"unknown shape {shape!r}")
    rng = random.Random(seed)
    topo = random_topology(n, edge_density, rng, topology)
    A = n_agents
    wants: list[dict[int, int]] = [{} for _ in range(A)]
    d = lambda: rng.randint(1, max_ideal)  # noqa: E731
    if shape == "generic":
        for a in range(A):
            for b in range(A):
                if a != b and rng.random() < pref_density:
                    wants[a][b] = d()
    elif shape == "symmetric":
        for a in range(A):
            for b in range(a + 1, A):
                if rng.random() < pref_density:
                    wants[a][b] = wants[b][a] = d()
    elif shape == "dag":
        rank = list(range(A))
        rng.shuffle(rank)
        for a in range(A):
            for b in range(A):
                if rank[a] < rank[b] and rng.random() < pref_density:
                    wants[a][b] = d()
    elif A:
        hub = rng.randrange(A)
        for b in range(A):
            if b != hub and rng.random() < pref_density:
                if shape == "in-star":
                    wants[b][hub] = d()
                else:
                    wants[hub][b] = d()
    return ensure_valid(Game.from_wants(topo, wants))
