"""Shared fixtures and an oracle that shares no code with the library.

The oracle recomputes distances with Floyd-Warshall and enumerates
placements with ``itertools.permutations``, which yields them in
lexicographic order.
"""
from __future__ import annotations

import itertools

import pytest

ACCEPTANCE_LINES: list[str] = []


def oracle_dist(game):
    n = game.n_vertices
    inf = float("inf")
    d = [[0 if i == j else inf for j in range(n)] for i in range(n)]
    for u, v in game.topology.edges:
        d[u][v] = d[v][u] = 1
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    return d


def oracle_cost(game, d, placement, a):
    return sum(abs(ideal - d[placement[a]][placement[b]]) for b, ideal in game.agents[a].wants.items())


def _swapped(p, a, b):
    q = list(p)
    q[a], q[b] = q[b], q[a]
    return q


def oracle_envy(game, d, p):
    return [(a, b) for a in range(game.n_agents) for b in range(game.n_agents)
            if a != b and oracle_cost(game, d, _swapped(p, a, b), a) < oracle_cost(game, d, p, a)]


def oracle_swaps(game, d, p):
    envy = set(oracle_envy(game, d, p))
    return sorted((a, b) for a, b in envy if a < b and (b, a) in envy)


def oracle_jumps(game, d, p):
    empty = [v for v in range(game.n_vertices) if v not in p]
    out = []
    for a in range(game.n_agents):
        now = oracle_cost(game, d, p, a)
        for v in empty:
            q = list(p)
            q[a] = v
            if oracle_cost(game, d, q, a) < now:
                out.append((a, v))
    return out


def oracle_stable(game, d, p, notion: str) -> bool:
    if notion == "ef":
        return not oracle_envy(game, d, p)
    if notion == "swap":
        return not oracle_swaps(game, d, p)
    if notion == "jump":
        return not oracle_jumps(game, d, p)
    if notion == "ef-jump":
        return not oracle_envy(game, d, p) and not oracle_jumps(game, d, p)
    raise ValueError(notion)


def oracle_first(game, notion: str):
    """Lexicographically first stable placement, or None."""
    d = oracle_dist(game)
    for p in itertools.permutations(range(game.n_vertices), game.n_agents):
        if oracle_stable(game, d, p, notion):
            return tuple(p)
    return None


@pytest.fixture
def oracle():
    return oracle_first


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
