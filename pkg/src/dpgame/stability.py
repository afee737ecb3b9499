"""Deviation detection for a fixed allocation.

Finders materialise every deviation (sorted lexicographically) so a report
doubles as a counterexample witness; the ``is_*`` predicates short-circuit.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from . import kernels
from .game import Allocation, Game, cost_at


class Notion(str, Enum):
    EF = "ef"
    SWAP = "swap"
    JUMP = "jump"
    EF_JUMP = "ef-jump"


_KERNEL_NOTION = {Notion.EF: kernels.EF, Notion.SWAP: kernels.SWAP, Notion.JUMP: kernels.JUMP}


@dataclass(frozen=True)
class StabilityReport:
    envy_pairs: tuple[tuple[int, int], ...]
    swap_deviations: tuple[tuple[int, int], ...]
    jump_deviations: tuple[tuple[int, int], ...]

    @property
    def is_ef(self) -> bool:
        return not self.envy_pairs

    @property
    def is_swap_stable(self) -> bool:
        return not self.swap_deviations

    @property
    def is_jump_stable(self) -> bool:
        return not self.jump_deviations


def _rows(game, dist):
    if dist is None:
        return game.dist_rows
    return dist.tolist() if hasattr(dist, "tolist") else dist


def swap_costs(game: Game, alloc: Allocation, a: int, b: int, dist=None) -> tuple[int, int]:
    """``(cost of a now, cost of a after swapping places with b)``."""
    rows = _rows(game, dist)
    pos = list(alloc.placement)
    before = cost_at(game, pos, a, pos[a], rows)
    pos[a], pos[b] = pos[b], pos[a]
    return before, cost_at(game, pos, a, pos[a], rows)


def jump_costs(game: Game, alloc: Allocation, a: int, v: int, dist=None) -> tuple[int, int]:
    rows = _rows(game, dist)
    pos = alloc.placement
    return cost_at(game, pos, a, pos[a], rows), cost_at(game, pos, a, v, rows)


def find_envy(game: Game, alloc: Allocation, dist=None) -> list[tuple[int, int]]:
    """Every ``(a, b)`` such that ``a`` strictly gains by trading places with ``b``."""
    rows = _rows(game, dist)
    out = []
    for a in range(game.n_agents):
        if not game.wants(a):
            continue
        for b in range(game.n_agents):
            if b != a:
                before, after = swap_costs(game, alloc, a, b, rows)
                if after < before:
                    out.append((a, b))
    return out


def find_swap_deviations(game: Game, alloc: Allocation, dist=None) -> list[tuple[int, int]]:
    envy = set(find_envy(game, alloc, dist))
    return sorted((a, b) for a, b in envy if a < b and (b, a) in envy)


def find_jump_deviations(game: Game, alloc: Allocation, dist=None) -> list[tuple[int, int]]:
    """Every ``(a, v)`` with ``v`` empty and ``a`` strictly better off on ``v``."""
    rows = _rows(game, dist)
    occupied = alloc.occupied
    empty = [v for v in range(game.n_vertices) if v not in occupied]
    pos = alloc.placement
    out = []
    for a in range(game.n_agents):
        if not game.wants(a):
            continue
        now = cost_at(game, pos, a, pos[a], rows)
        out.extend((a, v) for v in empty if cost_at(game, pos, a, v, rows) < now)
    return out


def stability_report(game: Game, alloc: Allocation, dist=None) -> StabilityReport:
    envy = find_envy(game, alloc, dist)
    mutual = set(envy)
    swaps = [(a, b) for a, b in envy if a < b and (b, a) in mutual]
    return StabilityReport(tuple(envy), tuple(swaps), tuple(find_jump_deviations(game, alloc, dist)))


def is_envy_free(game: Game, alloc: Allocation) -> bool:
    return kernels.is_stable(game, alloc.placement, kernels.EF)


def is_swap_stable(game: Game, alloc: Allocation) -> bool:
    return kernels.is_stable(game, alloc.placement, kernels.SWAP)


def is_jump_stable(game: Game, alloc: Allocation) -> bool:
    return kernels.is_stable(game, alloc.placement, kernels.JUMP)


def is_stable(game: Game, alloc: Allocation, notion: Notion | str) -> bool:
    notion = Notion(notion)
    if notion is Notion.EF_JUMP:
        return is_envy_free(game, alloc) and is_jump_stable(game, alloc)
    return kernels.is_stable(game, alloc.placement, _KERNEL_NOTION[notion])
