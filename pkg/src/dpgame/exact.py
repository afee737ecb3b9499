"""Exhaustive and XP searches; these double as oracles for the faster solvers."""
from __future__ import annotations

from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, replace
from enum import Enum

from . import kernels
from .game import AgentPrefs, Allocation, Game, classify_preferences, cost_at
from .stability import Notion, is_stable

DEFAULT_BUDGET = 10**8


class Status(str, Enum):
    FOUND = "found"
    NONE = "none"
    ABORTED = "aborted"


_STATUS = {kernels.FOUND: Status.FOUND, kernels.NONE: Status.NONE, kernels.ABORTED: Status.ABORTED}
_NOTION = {Notion.EF: kernels.EF, Notion.SWAP: kernels.SWAP, Notion.JUMP: kernels.JUMP}


@dataclass(frozen=True)
class SolveOutcome:
    status: Status
    witness: Allocation | None = None
    nodes_explored: int = 0
    solver: str = ""
    steps: int = 0

    def __post_init__(self):
        if (self.status is Status.FOUND) != (self.witness is not None):
            raise ValueError("witness must be present exactly when status is found")

    @property
    def found(self) -> bool:
        return self.status is Status.FOUND


def _outcome(game, notion, status, placement, nodes, solver):
    witness = None
    if status == kernels.FOUND:
        witness = Allocation(tuple(placement))
        assert is_stable(game, witness, notion), "search returned an unstable witness"
    return SolveOutcome(_STATUS[status], witness, nodes, solver)


def _search_from(game, notion, budget, v):
    return kernels.search(game, _NOTION[notion], budget=budget, first_vertex=v)


def brute_force_search(game: Game, notion: Notion | str = Notion.EF, deterministic: bool = True,
                       budget: int = DEFAULT_BUDGET, workers: int = 1) -> SolveOutcome:
    """Try injective placements (agents by index, vertices by id) until one is stable.

    Pairwise checks run as soon as the agents involved are placed, so a
    deterministic run returns the lexicographically smallest stable
    placement. ``workers > 1`` without ``deterministic`` splits the first
    agent's vertex across processes and keeps whichever witness lands first.
    """
    notion = Notion(notion)
    if notion is Notion.EF_JUMP:
        return solve_ef_and_jump(game, budget=budget)
    if deterministic or workers <= 1 or game.n_agents == 0:
        status, placement, nodes = kernels.search(game, _NOTION[notion], budget=budget)
        return _outcome(game, notion, status, placement, nodes, "brute")
    return _parallel_search(game, notion, budget, workers)


def _parallel_search(game, notion, budget, workers):
    nodes = 0
    aborted = False
    with ProcessPoolExecutor(max_workers=workers) as pool:
        pending = {pool.submit(_search_from, game, notion, budget, v) for v in range(game.n_vertices)}
        while pending:
            done, pending = wait(pending, return_when=FIRST_COMPLETED)
            for fut in done:
                status, placement, n = fut.result()
                nodes += n
                if status == kernels.FOUND:
                    for f in pending:
                        f.cancel()
                    return _outcome(game, notion, status, placement, nodes, "brute")
                aborted |= status == kernels.ABORTED
    return SolveOutcome(Status.ABORTED if aborted else Status.NONE, None, nodes, "brute")


def pad_with_indifferent(game: Game) -> Game:
    """Fill every empty vertex with a fresh indifferent agent appended at the end."""
    names = {p.name for p in game.agents}
    extra = []
    i = 0
    while len(extra) < game.n_vertices - game.n_agents:
        name = f"_pad{i}"
        i += 1
        if name not in names:
            extra.append(AgentPrefs(name, {}))
    return game.with_agents(game.agents + tuple(extra))


def solve_ef_and_jump(game: Game, budget: int = DEFAULT_BUDGET) -> SolveOutcome:
    """EF plus jump stability, via EF on the game padded to a full house."""
    padded = pad_with_indifferent(game)
    out = brute_force_search(padded, Notion.EF, budget=budget)
    if not out.found:
        return replace(out, solver="ef-jump")
    witness = Allocation(out.witness.placement[:game.n_agents])
    assert is_stable(game, witness, Notion.EF_JUMP)
    return SolveOutcome(Status.FOUND, witness, out.nodes_explored, "ef-jump")


def solve_ef_fixed_interested(game: Game, budget: int = DEFAULT_BUDGET) -> SolveOutcome:
    """XP in the number of agents that appear on some preference arc.

    Only those agents are enumerated. For each placement that is envy-free
    among them, an empty vertex is safe when no interested agent would
    rather stand there; the zero-degree agents fit iff there are enough safe
    vertices, and they are then dropped onto the safe vertices in id order.
    """
    shape = classify_preferences(game)
    active = sorted(shape.nonzero_degree_agents)
    idle = [a for a in range(game.n_agents) if a not in shape.nonzero_degree_agents]
    index = {a: i for i, a in enumerate(active)}
    sub = game.with_agents(
        AgentPrefs(game.agents[a].name, {index[b]: d for b, d in game.wants(a).items()})
        for a in active
    )
    status, placement, nodes = kernels.search(sub, kernels.EF, n_fill=len(idle), budget=budget)
    if status != kernels.FOUND:
        return SolveOutcome(_STATUS[status], None, nodes, "fixed-interested")
    rows = game.dist_rows
    full = [0] * game.n_agents
    for a, v in zip(active, placement):
        full[a] = v
    taken = set(placement)
    base = {a: cost_at(game, full, a, full[a], rows) for a in active if game.wants(a)}
    safe = [v for v in range(game.n_vertices) if v not in taken
            and all(cost_at(game, full, a, v, rows) >= c for a, c in base.items())]
    for a, v in zip(idle, safe):
        full[a] = v
    witness = Allocation(tuple(full))
    assert is_stable(game, witness, Notion.EF)
    return SolveOutcome(Status.FOUND, witness, nodes, "fixed-interested")
