"""Envy-freeness when every preference arc points at one hub agent.

Fix the hub's vertex as a centre and split the other vertices into BFS
layers ``L_1..L_l``. Every interested agent ``b`` wants the hub at some
distance, clamped to ``t = min(d_b, l)``. Nobody envies the hub (swapping
with it leaves one's distance to the hub unchanged) and the hub envies no
one, so an allocation is EF iff every interested ``b`` stands in a layer
``q`` minimising ``|t - q|`` over the set ``O`` of layers occupied by
non-hub agents. Indifferent agents only matter through ``O``.

The feasibility question is solved by a DP that walks the occupied layers
in increasing order. Consecutive occupied layers ``q < q'`` share out the
targets strictly between them: targets closer to ``q`` sit on ``q``,
targets closer to ``q'`` sit on ``q'``, and a target exactly halfway may
split in any proportion. Targets below the first occupied layer sit on it,
targets above the last sit on the last. A state is ``(q, r, s)``: the
current occupied layer, the load already committed to it, and the number
of indifferent agents placed on earlier layers. Indifferent agents are
chosen per layer to fill capacity and to keep otherwise-empty layers
occupied.

This is a direct reformulation of the layer/part table from the literature
rather than a transcription of its case analysis; it is validated against
exhaustive search.
"""
from __future__ import annotations

from dataclasses import dataclass

from .exact import SolveOutcome, Status
from .game import Allocation, Game, classify_preferences
from .stability import Notion, is_stable


@dataclass(frozen=True)
class BfsLayers:
    center: int
    layers: tuple[tuple[int, ...], ...]  # layers[i] holds the vertices at distance i + 1
    agent_parts: tuple[tuple[int, ...], ...]  # [0] indifferent, [j] clamped target j

    @property
    def depth(self) -> int:
        return len(self.layers)


def bfs_layers(game: Game, hub: int, center: int) -> BfsLayers:
    row = game.dist_rows[center]
    depth = max(row)
    layers = tuple(tuple(v for v in range(game.n_vertices) if row[v] == t) for t in range(1, depth + 1))
    parts: list[list[int]] = [[] for _ in range(depth + 1)]
    for a in range(game.n_agents):
        if a == hub:
            continue
        w = game.wants(a)
        parts[min(w[hub], depth) if w else 0].append(a)
    return BfsLayers(center, layers, tuple(tuple(p) for p in parts))


def _feasible(bl: BfsLayers):
    """Occupied-layer plan, or None. A plan maps layer -> (targets, idle count).

    ``targets`` lists ``(t, k)``: ``k`` agents of part ``t`` go to the layer.
    """
    depth = bl.depth
    P = [0] + [len(bl.agent_parts[t]) for t in range(1, depth + 1)]
    cap = [0] + [len(L) for L in bl.layers]
    z = len(bl.agent_parts[0])
    above = [0] * (depth + 2)  # above[q] = sum of P[t] for t > q
    for q in range(depth - 1, -1, -1):
        above[q] = above[q + 1] + P[q + 1]

    states: list[dict] = [dict() for _ in range(depth + 1)]
    for q in range(1, depth + 1):
        r = sum(P[1:q + 1])
        if r <= cap[q]:
            states[q].setdefault((r, 0), None)
    visited = 0
    for q in range(1, depth + 1):
        for (r, s) in list(states[q]):
            visited += 1
            load = r + above[q]
            y = z - s
            if load <= cap[q] and (1 if load == 0 else 0) <= y <= cap[q] - load:
                return _replay(bl, states, q, r, s, y), visited
            for q2 in range(q + 1, depth + 1):
                left = sum(P[t] for t in range(q + 1, q2) if t - q < q2 - t)
                right = sum(P[t] for t in range(q + 1, q2) if t - q > q2 - t)
                tie = P[(q + q2) // 2] if (q + q2) % 2 == 0 and q2 - q >= 2 else 0
                for x in range(tie + 1):
                    load_q = r + left + x
                    if load_q > cap[q]:
                        break
                    r2 = right + (tie - x) + P[q2]
                    if r2 > cap[q2]:
                        continue
                    for y in range(1 if load_q == 0 else 0, min(cap[q] - load_q, z - s) + 1):
                        states[q2].setdefault((r2, s + y), (q, r, s, x, y))
    return None, visited


def _replay(bl, states, q, r, s, y_last):
    """Walk predecessors back to the first occupied layer and expand the plan."""
    chain = [(q, None, y_last)]  # (layer, tie agents kept on the left neighbour, idle count)
    cur = (q, r, s)
    while states[cur[0]][cur[1:]] is not None:
        pq, pr, ps, x, y = states[cur[0]][cur[1:]]
        chain.append((pq, x, y))
        cur = (pq, pr, ps)
    chain.reverse()
    occ = [c[0] for c in chain]
    depth = bl.depth
    plan = {layer: ([], idle) for layer, _, idle in chain}
    for t in range(1, depth + 1):
        n = len(bl.agent_parts[t])
        if not n:
            continue
        if t <= occ[0]:
            plan[occ[0]][0].append((t, n))
            continue
        if t >= occ[-1]:
            plan[occ[-1]][0].append((t, n))
            continue
        for i in range(len(occ) - 1):
            lo, hi = occ[i], occ[i + 1]
            if lo < t <= hi:
                if t == hi or t - lo > hi - t:
                    plan[hi][0].append((t, n))
                elif t - lo < hi - t:
                    plan[lo][0].append((t, n))
                else:
                    x = chain[i][1]
                    plan[lo][0].append((t, x))
                    plan[hi][0].append((t, n - x))
                break
    return plan


def _realize(game: Game, hub: int, bl: BfsLayers, plan) -> Allocation:
    pos = [-1] * game.n_agents
    pos[hub] = bl.center
    taken = {t: 0 for t in range(len(bl.agent_parts))}
    idle = list(bl.agent_parts[0])
    for layer in sorted(plan):
        targets, n_idle = plan[layer]
        members = []
        for t, k in targets:
            members.extend(bl.agent_parts[t][taken[t]:taken[t] + k])
            taken[t] += k
        members.extend(idle[:n_idle])
        idle = idle[n_idle:]
        for a, v in zip(sorted(members), bl.layers[layer - 1]):
            pos[a] = v
    return Allocation(tuple(pos))


def solve_ef_in_star(game: Game) -> SolveOutcome:
    """EF for in-star preferences; tries hub centres in increasing vertex id."""
    shape = classify_preferences(game)
    if not shape.in_star:
        raise ValueError("preference graph is not an in-star")
    if shape.hub is None:
        return SolveOutcome(Status.FOUND, game.first_allocation(), 0, "in-star")
    hub = shape.hub
    others = game.n_agents - 1
    nodes = 0
    for center in range(game.n_vertices):
        if others == 0:
            pos = [0] * game.n_agents
            pos[hub] = center
            return SolveOutcome(Status.FOUND, Allocation(tuple(pos)), 1, "in-star")
        bl = bfs_layers(game, hub, center)
        plan, visited = _feasible(bl)
        nodes += visited
        if plan is not None:
            witness = _realize(game, hub, bl, plan)
            assert is_stable(game, witness, Notion.EF), "in-star plan is not envy-free"
            return SolveOutcome(Status.FOUND, witness, nodes, "in-star")
    return SolveOutcome(Status.NONE, None, nodes, "in-star")


def layer_gap_claim_holds(game: Game, alloc: Allocation, hub: int) -> bool:
    """Structural property of EF in-star allocations.

    If an agent of part ``j`` stands in layer ``j + x``, no non-hub agent
    stands strictly closer to ``j``, i.e. in layers ``j-|x|+1 .. j+|x|-1``.
    """
    center = alloc[hub]
    bl = bfs_layers(game, hub, center)
    row = game.dist_rows[center]
    occupied = {row[alloc[a]] for a in range(game.n_agents) if a != hub}
    for j in range(1, bl.depth + 1):
        for a in bl.agent_parts[j]:
            gap = abs(row[alloc[a]] - j)
            if any(abs(layer - j) < gap for layer in occupied):
                return False
    return True
