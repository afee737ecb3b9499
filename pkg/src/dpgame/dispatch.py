"""Route an instance to the cheapest applicable solver."""
from __future__ import annotations

from dataclasses import replace
from typing import Callable

from .exact import (DEFAULT_BUDGET, SolveOutcome, Status, brute_force_search, pad_with_indifferent,
                    solve_ef_fixed_interested)
from .game import Allocation, Game, classify_preferences
from .instar import solve_ef_in_star
from .parameterized import (equidistant_set, kernelize_by_vc, solve_ef_diameter,
                            solve_ef_nd, solve_ef_vc)
from .stability import Notion, is_stable
from .structured import (dynamics_symmetric, is_clique, out_star_dynamics, solve_ef_clique_or_star,
                         solve_jump_swap_acyclic, star_center)


def _found(game, alloc, notion, solver, steps=0):
    assert is_stable(game, alloc, notion), f"{solver} produced an unstable allocation"
    return SolveOutcome(Status.FOUND, alloc, 0, solver, steps)


def _ef(game: Game, budget: int) -> SolveOutcome:
    shape = classify_preferences(game)
    if game.n_agents <= 1 or not shape.nonzero_degree_agents:
        return _found(game, game.first_allocation(), Notion.EF, "trivial")
    if is_clique(game) or star_center(game) is not None:
        return solve_ef_clique_or_star(game)
    if shape.out_star:
        trace = out_star_dynamics(game)
        return _found(game, trace.final, Notion.EF, "out-star", len(trace))
    if shape.in_star:
        return solve_ef_in_star(game)
    if equidistant_set(game, game.n_agents) is not None:
        return solve_ef_diameter(game, budget)
    if len(shape.nonzero_degree_agents) < game.n_agents:
        return solve_ef_fixed_interested(game, budget)
    if kernelize_by_vc(game).game.n_vertices < game.n_vertices:
        return solve_ef_vc(game, budget)
    return brute_force_search(game, Notion.EF, budget=budget)


def _dynamics(game: Game, notion: Notion, budget: int) -> SolveOutcome:
    shape = classify_preferences(game)
    if notion is Notion.JUMP and game.n_agents == game.n_vertices:
        return _found(game, game.first_allocation(), notion, "trivial")
    if shape.symmetric:
        trace = dynamics_symmetric(game, notion.value)
        return _found(game, trace.final, notion, "symmetric-dynamics", len(trace))
    if shape.acyclic:
        return _found(game, solve_jump_swap_acyclic(game), notion, "acyclic")
    return brute_force_search(game, notion, budget=budget)


def dispatch_solve(game: Game, notion: Notion | str = Notion.EF, budget: int = DEFAULT_BUDGET) -> SolveOutcome:
    """Solve ``game`` for ``notion`` with the first applicable structured solver.

    EF plus jump stability is EF on the game padded with indifferent agents,
    which keeps every preference shape, so it reuses the EF route.
    """
    notion = Notion(notion)
    if notion is Notion.EF:
        return _ef(game, budget)
    if notion is Notion.EF_JUMP:
        padded = pad_with_indifferent(game)
        out = _ef(padded, budget)
        if not out.found:
            return out
        witness = Allocation(out.witness.placement[:game.n_agents])
        assert is_stable(game, witness, Notion.EF_JUMP)
        return replace(out, witness=witness)
    return _dynamics(game, notion, budget)


def _ef_only(fn):
    def run(game, notion, budget):
        if Notion(notion) is not Notion.EF:
            raise ValueError(f"solver only decides envy-freeness, not {Notion(notion).value}")
        return fn(game)
    return run


def _with_budget(fn):
    def run(game, notion, budget):
        if Notion(notion) is not Notion.EF:
            raise ValueError(f"solver only decides envy-freeness, not {Notion(notion).value}")
        return fn(game, budget=budget)
    return run


def _out_star(game, notion, budget):
    if Notion(notion) is not Notion.EF:
        raise ValueError("out-star dynamics target envy-freeness")
    trace = out_star_dynamics(game)
    return _found(game, trace.final, Notion.EF, "out-star", len(trace))


def _symmetric(game, notion, budget):
    notion = Notion(notion)
    if notion not in (Notion.JUMP, Notion.SWAP):
        raise ValueError("symmetric dynamics target jump or swap stability")
    trace = dynamics_symmetric(game, notion.value)
    return _found(game, trace.final, notion, "symmetric-dynamics", len(trace))


def _acyclic(game, notion, budget):
    notion = Notion(notion)
    if notion not in (Notion.JUMP, Notion.SWAP):
        raise ValueError("acyclic greedy targets jump or swap stability")
    return _found(game, solve_jump_swap_acyclic(game), notion, "acyclic")


def _brute(game, notion, budget, deterministic=True, workers=1):
    return brute_force_search(game, notion, deterministic=deterministic, budget=budget, workers=workers)


SOLVERS: dict[str, Callable[..., SolveOutcome]] = {
    "auto": lambda g, n, b: dispatch_solve(g, n, b),
    "brute": _brute,
    "clique-star": _ef_only(solve_ef_clique_or_star),
    "in-star": _ef_only(solve_ef_in_star),
    "out-star": _out_star,
    "nd": _with_budget(solve_ef_nd),
    "vc": _with_budget(solve_ef_vc),
    "diameter": _with_budget(solve_ef_diameter),
    "fixed-interested": _with_budget(solve_ef_fixed_interested),
    "symmetric-dynamics": _symmetric,
    "acyclic": _acyclic,
}
