"""Polynomial-time solvers that exploit topology or preference structure."""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from .exact import SolveOutcome, Status
from .game import Allocation, Game, classify_preferences, cost_at
from .stability import Notion, is_stable


class ShapeError(ValueError):
    """The instance lacks the structure a specialised solver relies on."""


@dataclass(frozen=True)
class Step:
    movers: tuple[int, ...]
    kind: str  # "jump" or "swap"
    target: int  # vertex for a jump, partner agent for a swap
    cost_before: tuple[int, ...]
    cost_after: tuple[int, ...]
    potential_before: int | None = None
    potential_after: int | None = None

    @property
    def improvement(self) -> int:
        return sum(self.cost_before) - sum(self.cost_after)


@dataclass
class DynamicsTrace:
    final: Allocation
    steps: list[Step] = field(default_factory=list)

    def __len__(self):
        return len(self.steps)


# -- topology detection -------------------------------------------------------

def is_clique(game: Game) -> bool:
    n = game.n_vertices
    return len(set(game.topology.edges)) == n * (n - 1) // 2


def star_center(game: Game) -> int | None:
    """Centre of a star topology: adjacent to all, the rest independent."""
    n = game.n_vertices
    if n < 3 or len(set(game.topology.edges)) != n - 1:
        return None
    for v, nbrs in enumerate(game.topology.adjacency):
        if len(nbrs) == n - 1:
            return v
    return None


def solve_ef_clique_or_star(game: Game) -> SolveOutcome:
    """On a clique any placement is EF; on a star only the centre occupant matters."""
    if is_clique(game):
        return SolveOutcome(Status.FOUND, game.first_allocation(), 1, "clique-star")
    c = star_center(game)
    if c is None:
        raise ShapeError("topology is neither a clique nor a star")
    leaves = [v for v in range(game.n_vertices) if v != c]
    A = game.n_agents
    choices: list[int | None] = list(range(A))
    if A < game.n_vertices:
        choices.append(None)
    for tried, occupant in enumerate(choices, 1):
        placement = [0] * A
        others = [a for a in range(A) if a != occupant]
        for a, v in zip(others, leaves):
            placement[a] = v
        if occupant is not None:
            placement[occupant] = c
        alloc = Allocation(tuple(placement))
        if is_stable(game, alloc, Notion.EF):
            return SolveOutcome(Status.FOUND, alloc, tried, "clique-star")
    return SolveOutcome(Status.NONE, None, len(choices), "clique-star")


# -- out-star swap dynamics ---------------------------------------------------

def out_star_dynamics(game: Game, initial: Allocation | None = None) -> DynamicsTrace:
    """Let the only interested agent take its best swap until it envies nobody.

    Ties between equally good partners go to the smallest partner index.
    """
    shape = classify_preferences(game)
    if not shape.out_star:
        raise ShapeError("preference graph is not an out-star")
    alloc = initial or game.first_allocation()
    trace = DynamicsTrace(alloc)
    hubs = [a for a in range(game.n_agents) if game.wants(a)]
    if not hubs:
        return trace
    a = hubs[0]
    rows = game.dist_rows
    pos = list(alloc.placement)
    start = now = cost_at(game, pos, a, pos[a], rows)
    while True:
        best, partner = 0, None
        for b in range(game.n_agents):
            if b == a:
                continue
            pos[a], pos[b] = pos[b], pos[a]
            gain = now - cost_at(game, pos, a, pos[a], rows)
            pos[a], pos[b] = pos[b], pos[a]
            if gain > best:
                best, partner = gain, b
        if partner is None:
            break
        pos[a], pos[partner] = pos[partner], pos[a]
        trace.steps.append(Step((a,), "swap", partner, (now,), (now - best,), now, now - best))
        now -= best
        assert len(trace.steps) <= start, "out-star dynamics failed to terminate"
    trace.final = Allocation(tuple(pos))
    return trace


def solve_ef_out_star(game: Game, initial: Allocation | None = None) -> Allocation:
    return out_star_dynamics(game, initial).final


# -- symmetric best-response dynamics ----------------------------------------

def potential(game: Game, alloc: Allocation) -> int:
    """Total cost with every ideal distance capped at |V|."""
    n = game.n_vertices
    rows = game.dist_rows
    pos = alloc.placement
    return sum(abs(min(d, n) - rows[pos[a]][pos[b]]) for a, b, d in game.arcs())


def _best_jump(game, pos, a, rows, empty, now):
    best, target = 0, None
    for v in sorted(empty):
        gain = now - cost_at(game, pos, a, v, rows)
        if gain > best:
            best, target = gain, v
    return best, target


def _best_swap(game, pos, a, rows, costs):
    """Partner maximising ``a``'s gain among swaps that strictly help both."""
    best, partner, partner_gain = 0, None, 0
    for b in range(len(pos)):
        if b == a or not game.wants(b):
            continue
        pos[a], pos[b] = pos[b], pos[a]
        ga = costs[a] - cost_at(game, pos, a, pos[a], rows)
        gb = costs[b] - cost_at(game, pos, b, pos[b], rows)
        pos[a], pos[b] = pos[b], pos[a]
        if ga > 0 and gb > 0 and ga > best:
            best, partner, partner_gain = ga, b, gb
    return best, partner, partner_gain


def dynamics_symmetric(game: Game, mode: str = "jump", initial: Allocation | None = None) -> DynamicsTrace:
    """Round-robin best-response dynamics for symmetric preferences.

    ``mode`` is ``"jump"``, ``"swap"`` or ``"both"``; with ``"both"`` an
    agent takes whichever of its best jump and best swap saves it more
    (jumps win ties). Every move lowers the capped potential by exactly twice
    the movers' total saving, which is asserted at each step.
    """
    if mode not in ("jump", "swap", "both"):
        raise ValueError(f"unknown mode {mode!r}")
    if not classify_preferences(game).symmetric:
        raise ShapeError("preferences are not symmetric")
    alloc = initial or game.first_allocation()
    trace = DynamicsTrace(alloc)
    A, n = game.n_agents, game.n_vertices
    if A == 0:
        return trace
    rows = game.dist_rows
    pos = list(alloc.placement)
    empty = set(range(n)) - set(pos)
    costs = [cost_at(game, pos, a, pos[a], rows) for a in range(A)]
    pot = potential(game, alloc)
    limit = A * A * n
    idle, a = 0, 0
    while idle < A:
        move = None
        if game.wants(a):
            gj, v = _best_jump(game, pos, a, rows, empty, costs[a]) if mode != "swap" else (0, None)
            gs, b, gb = _best_swap(game, pos, a, rows, costs) if mode != "jump" else (0, None, 0)
            if v is not None and gj >= gs:
                move = ("jump", v)
            elif b is not None:
                move = ("swap", b)
        if move is None:
            idle += 1
        else:
            idle = 0
            kind, target = move
            if kind == "jump":
                movers = (a,)
                empty.discard(target)
                empty.add(pos[a])
                pos[a] = target
            else:
                movers = (a, target)
                pos[a], pos[target] = pos[target], pos[a]
            before = tuple(costs[m] for m in movers)
            # only the movers and agents related to them change cost
            touched = set(movers).union(*(game.wants(m) for m in movers))
            for t in touched:
                costs[t] = cost_at(game, pos, t, pos[t], rows)
            after = tuple(costs[m] for m in movers)
            new_pot = potential(game, Allocation(tuple(pos)))
            step = Step(movers, kind, target, before, after, pot, new_pot)
            assert pot - new_pot == 2 * step.improvement, "potential identity violated"
            trace.steps.append(step)
            pot = new_pot
            assert len(trace.steps) <= limit, "symmetric dynamics exceeded the potential bound"
        a = (a + 1) % A
    trace.final = Allocation(tuple(pos))
    return trace


# -- acyclic preferences -------------------------------------------------------

def acyclic_order(game: Game) -> list[int]:
    """Order in which agents pick vertices: each after everyone it wants.

    Among ready agents the smallest index goes first.
    """
    waiting = [len(game.wants(a)) for a in range(game.n_agents)]
    wanted_by: list[list[int]] = [[] for _ in range(game.n_agents)]
    for a, b, _ in game.arcs():
        wanted_by[b].append(a)
    ready = [a for a in range(game.n_agents) if waiting[a] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        b = heapq.heappop(ready)
        order.append(b)
        for a in wanted_by[b]:
            waiting[a] -= 1
            if waiting[a] == 0:
                heapq.heappush(ready, a)
    if len(order) != game.n_agents:
        raise ShapeError("preference graph has a cycle")
    return order


def solve_jump_swap_acyclic(game: Game) -> Allocation:
    """Greedy placement in reverse topological order; jump and swap stable."""
    rows = game.dist_rows
    pos = [-1] * game.n_agents
    free = set(range(game.n_vertices))
    for a in acyclic_order(game):
        v = min(sorted(free), key=lambda u: cost_at(game, pos, a, u, rows))
        pos[a] = v
        free.discard(v)
    return Allocation(tuple(pos))


def jump_swap_outcome(alloc: Allocation, solver: str, steps: int = 0) -> SolveOutcome:
    return SolveOutcome(Status.FOUND, alloc, 0, solver, steps)
