"""Instance representation for distance preservation games.

A game places agents injectively onto the vertices of a connected, simple,
undirected topology. Every agent may name other agents together with an
ideal hop distance; its cost is the summed absolute gap between those ideal
distances and the realised ones.

Vertices and agents are dense integer ids. Human-readable names are kept
alongside for file I/O only.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np


class ValidationError(ValueError):
    """Raised when a topology, game or allocation violates its invariants."""

    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


@dataclass(frozen=True)
class Topology:
    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    vertex_names: tuple[str, ...] | None = None

    def __post_init__(self):
        norm = tuple((min(u, v), max(u, v)) for u, v in self.edges)
        object.__setattr__(self, "edges", norm)
        if self.vertex_names is not None:
            object.__setattr__(self, "vertex_names", tuple(self.vertex_names))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], names=None) -> "Topology":
        return cls(n, tuple((int(u), int(v)) for u, v in edges), names)

    @classmethod
    def path(cls, n: int) -> "Topology":
        return cls(n, tuple((i, i + 1) for i in range(n - 1)))

    @classmethod
    def cycle(cls, n: int) -> "Topology":
        return cls(n, tuple((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def complete(cls, n: int) -> "Topology":
        return cls(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))

    @classmethod
    def star(cls, leaves: int) -> "Topology":
        """Star with centre 0 and leaves 1..leaves."""
        return cls(leaves + 1, tuple((0, i) for i in range(1, leaves + 1)))

    def name(self, v: int) -> str:
        return self.vertex_names[v] if self.vertex_names else f"v{v}"

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            if u != v and 0 <= u < self.vertex_count and 0 <= v < self.vertex_count:
                adj[u].add(v)
                adj[v].add(u)
        return tuple(frozenset(s) for s in adj)

    def violations(self) -> list[str]:
        out = []
        n = self.vertex_count
        if n < 1:
            out.append("vertex_count must be positive")
            return out
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < n and 0 <= v < n):
                out.append(f"edge ({u}, {v}) references unknown vertex")
            elif u == v:
                out.append(f"self-loop at vertex {u}")
            elif (u, v) in seen:
                out.append(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
        if self.vertex_names is not None:
            if len(self.vertex_names) != n:
                out.append("vertex_names length differs from vertex_count")
            elif len(set(self.vertex_names)) != n:
                out.append("duplicate vertex names")
        if not out and len(_bfs(self.adjacency, 0)) < n:
            out.append("topology is disconnected")
        return out

    def is_connected(self) -> bool:
        return len(_bfs(self.adjacency, 0)) == self.vertex_count

    def relabel(self, perm: Sequence[int]) -> "Topology":
        """Topology with vertex ``v`` renamed to ``perm[v]``."""
        return Topology(self.vertex_count, tuple((perm[u], perm[v]) for u, v in self.edges))


def _bfs(adj, source: int) -> dict[int, int]:
    depth = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in depth:
                depth[w] = depth[u] + 1
                queue.append(w)
    return depth


#: ``dist[u, v]`` is the hop distance between ``u`` and ``v``.
DistanceMatrix = np.ndarray


def build_distance_matrix(t: Topology) -> DistanceMatrix:
    """All-pairs hop distances by one BFS per vertex.

    Raises ValidationError when some pair is unreachable.
    """
    n = t.vertex_count
    dist = np.full((n, n), -1, dtype=np.int32)
    adj = t.adjacency
    for s in range(n):
        for v, d in _bfs(adj, s).items():
            dist[s, v] = d
    if (dist < 0).any():
        u, v = map(int, np.argwhere(dist < 0)[0])
        raise ValidationError(f"topology is disconnected: no path between {u} and {v}")
    dist.flags.writeable = False
    return dist


@dataclass(frozen=True)
class AgentPrefs:
    name: str
    wants: Mapping[int, int] = field(default_factory=dict)


@dataclass(frozen=True)
class Allocation:
    """``placement[a]`` is the vertex hosting agent ``a``."""

    placement: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "placement", tuple(int(v) for v in self.placement))

    def __getitem__(self, agent: int) -> int:
        return self.placement[agent]

    def __len__(self) -> int:
        return len(self.placement)

    @property
    def occupied(self) -> frozenset[int]:
        return frozenset(self.placement)

    def swapped(self, a: int, b: int) -> "Allocation":
        p = list(self.placement)
        p[a], p[b] = p[b], p[a]
        return Allocation(tuple(p))

    def jumped(self, a: int, v: int) -> "Allocation":
        p = list(self.placement)
        p[a] = v
        return Allocation(tuple(p))


@dataclass(frozen=True)
class Game:
    topology: Topology
    agents: tuple[AgentPrefs, ...]

    def __post_init__(self):
        object.__setattr__(self, "agents", tuple(self.agents))

    @classmethod
    def from_wants(cls, topology: Topology, wants: Sequence[Mapping[int, int]], names=None) -> "Game":
        names = names or [f"a{i}" for i in range(len(wants))]
        return cls(topology, tuple(AgentPrefs(n, dict(w)) for n, w in zip(names, wants)))

    @property
    def n_agents(self) -> int:
        return len(self.agents)

    @property
    def n_vertices(self) -> int:
        return self.topology.vertex_count

    def wants(self, a: int) -> Mapping[int, int]:
        return self.agents[a].wants

    def arcs(self) -> list[tuple[int, int, int]]:
        """Preference arcs ``(a, b, ideal)`` sorted by ``(a, b)``."""
        return [(a, b, d) for a, p in enumerate(self.agents) for b, d in sorted(p.wants.items())]

    @cached_property
    def dist(self) -> DistanceMatrix:
        return build_distance_matrix(self.topology)

    @cached_property
    def dist_rows(self) -> list[list[int]]:
        return self.dist.tolist()

    @cached_property
    def pref_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """CSR encoding ``(ptr, target, ideal)`` of the preference graph."""
        ptr = [0]
        tgt: list[int] = []
        ideal: list[int] = []
        for p in self.agents:
            for b, d in sorted(p.wants.items()):
                tgt.append(b)
                ideal.append(d)
            ptr.append(len(tgt))
        return (np.asarray(ptr, dtype=np.int32), np.asarray(tgt, dtype=np.int32),
                np.asarray(ideal, dtype=np.int64))

    def with_agents(self, agents: Sequence[AgentPrefs]) -> "Game":
        return Game(self.topology, tuple(agents))

    def first_allocation(self) -> Allocation:
        return Allocation(tuple(range(self.n_agents)))


def validate_game(g: Game) -> list[str]:
    """Every violated invariant of ``g``; an empty list means the game is valid."""
    out = g.topology.violations()
    n_agents = g.n_agents
    if n_agents > max(g.n_vertices, 0):
        out.append("|A| > |V|")
    names = [p.name for p in g.agents]
    if len(set(names)) != len(names):
        out.append("duplicate agent names")
    for a, p in enumerate(g.agents):
        for b, d in p.wants.items():
            if b == a:
                out.append(f"self-preference: agent {p.name} wants itself")
            elif not (0 <= b < n_agents):
                out.append(f"agent {p.name} wants unknown agent {b}")
            if not isinstance(d, (int, np.integer)) or isinstance(d, bool):
                out.append(f"agent {p.name}: ideal distance {d!r} is not an integer")
            elif d < 1:
                out.append(f"agent {p.name}: nonpositive ideal distance {d}")
    return out


def ensure_valid(g: Game) -> Game:
    bad = validate_game(g)
    if bad:
        raise ValidationError(bad)
    return g


def check_allocation(g: Game, alloc: Allocation) -> None:
    p = alloc.placement
    if len(p) != g.n_agents:
        raise ValidationError(f"allocation places {len(p)} agents, game has {g.n_agents}")
    if len(set(p)) != len(p):
        raise ValidationError("allocation is not injective")
    for v in p:
        if not 0 <= v < g.n_vertices:
            raise ValidationError(f"allocation uses unknown vertex {v}")


def cost(g: Game, alloc: Allocation, a: int, dist: DistanceMatrix | None = None) -> int:
    """Sum over the wanted agents b of ``|ideal(a, b) - dist(pi(a), pi(b))|``."""
    rows = g.dist_rows if dist is None else dist
    pos = alloc.placement
    row = rows[pos[a]]
    return int(sum(abs(d - row[pos[b]]) for b, d in g.agents[a].wants.items()))


def cost_at(g: Game, pos: Sequence[int], a: int, v: int, rows) -> int:
    """Cost of ``a`` if it stood on ``v`` with everybody else fixed."""
    row = rows[v]
    return sum(abs(d - row[pos[b]]) for b, d in g.agents[a].wants.items())


@dataclass(frozen=True)
class PreferenceShape:
    symmetric: bool
    acyclic: bool
    in_star: bool
    out_star: bool
    nonzero_degree_agents: frozenset[int]
    indifferent_agents: frozenset[int]
    hub: int | None = None  # in-star target, when one exists


def topological_order(g: Game) -> list[int] | None:
    """Agents ordered so that every arc points left to right; None on a cycle.

    Kahn's algorithm, smallest ready index first.
    """
    import heapq

    indeg = [0] * g.n_agents
    for _, b, _ in g.arcs():
        indeg[b] += 1
    ready = [a for a in range(g.n_agents) if indeg[a] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        a = heapq.heappop(ready)
        order.append(a)
        for b in g.wants(a):
            indeg[b] -= 1
            if indeg[b] == 0:
                heapq.heappush(ready, b)
    return order if len(order) == g.n_agents else None


def classify_preferences(g: Game) -> PreferenceShape:
    arcs = g.arcs()
    symmetric = all(g.wants(b).get(a) == d for a, b, d in arcs)
    acyclic = topological_order(g) is not None
    heads = {b for _, b, _ in arcs}
    tails = {a for a, _, _ in arcs}
    in_star = len(heads) <= 1
    hub = next(iter(heads)) if len(heads) == 1 else None
    out_star = len(tails) <= 1
    return PreferenceShape(
        symmetric=symmetric,
        acyclic=acyclic,
        in_star=in_star,
        out_star=out_star,
        nonzero_degree_agents=frozenset(heads | tails),
        indifferent_agents=frozenset(a for a in range(g.n_agents) if not g.wants(a)),
        hub=hub,
    )


def diameter(g: Game) -> int:
    return int(g.dist.max()) if g.n_vertices else 0
