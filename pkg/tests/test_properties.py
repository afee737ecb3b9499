"""Property-based checks of the model invariants."""
import numpy as np
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from conftest import oracle_dist, oracle_envy, oracle_swaps
from dpgame import (AgentPrefs, Allocation, Game, Topology, build_distance_matrix, classify_preferences, cost,
                    equidistant_set, find_envy, find_swap_deviations, stability_report)
from dpgame.generators import SHAPES, gen_random
from dpgame.structured import potential

FAST = settings(deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def games(draw, max_n=8, max_agents=5, shapes=SHAPES):
    n = draw(st.integers(1, max_n))
    return gen_random(n, draw(st.floats(0, 0.6)), draw(st.integers(0, min(n, max_agents))),
                      draw(st.floats(0, 1)), draw(st.integers(1, 2 * n)), draw(st.sampled_from(shapes)),
                      draw(st.integers(0, 2**31)))


@st.composite
def game_and_allocation(draw, **kw):
    g = draw(games(**kw))
    p = draw(st.permutations(range(g.n_vertices)))[:g.n_agents]
    return g, Allocation(tuple(p))


@settings(FAST, max_examples=1000)
@given(st.integers(1, 30), st.floats(0, 0.5), st.integers(0, 2**31))
def test_distance_matrix_invariants(n, density, seed):
    d = build_distance_matrix(gen_random(n, density, 0, 0, 1, seed=seed).topology).astype(np.int64)
    assert (np.diag(d) == 0).all() and (d == d.T).all()
    off = d[~np.eye(n, dtype=bool)]
    assert off.size == 0 or (off.min() >= 1 and off.max() <= n - 1)
    assert (d[:, None, :] <= d[:, :, None] + d[None, :, :]).all()


def _cycle_automorphisms(n):
    for r in range(n):
        yield [(v + r) % n for v in range(n)]
        yield [(r - v) % n for v in range(n)]


@settings(FAST, max_examples=200)
@given(st.integers(3, 9), st.data())
def test_cost_invariant_under_cycle_automorphisms(n, data):
    A = data.draw(st.integers(0, n))
    seed = data.draw(st.integers(0, 999))
    g = Game.from_wants(Topology.cycle(n), [p.wants for p in gen_random(n, 0, A, 0.7, n, "generic", seed).agents])
    p = data.draw(st.permutations(range(n)))[:A]
    alloc = Allocation(tuple(p))
    base = [cost(g, alloc, a) for a in range(A)]
    for sigma in _cycle_automorphisms(n):
        moved = Allocation(tuple(sigma[v] for v in p))
        assert [cost(g, moved, a) for a in range(A)] == base


@settings(FAST, max_examples=300)
@given(game_and_allocation())
def test_indifferent_agents_cost_nothing(ga):
    g, alloc = ga
    for a in classify_preferences(g).indifferent_agents:
        assert cost(g, alloc, a) == 0


@settings(FAST, max_examples=300)
@given(games())
def test_symmetric_flag_rederived(g):
    triples = {(a, b, d) for a in range(g.n_agents) for b, d in g.wants(a).items()}
    assert classify_preferences(g).symmetric == (triples == {(b, a, d) for a, b, d in triples})


@settings(FAST, max_examples=300)
@given(games())
def test_star_flags_overlap_only_when_small(g):
    s = classify_preferences(g)
    if s.in_star and s.out_star:
        assert len({x for a, b, _ in g.arcs() for x in (a, b)}) <= 2


@settings(FAST, max_examples=1000)
@given(game_and_allocation(max_n=7, max_agents=5, shapes=("generic",)))
def test_ef_implies_swap_stable(ga):
    g, alloc = ga
    rep = stability_report(g, alloc)
    if rep.is_ef:
        assert rep.is_swap_stable


@settings(FAST, max_examples=300)
@given(game_and_allocation())
def test_mutual_envy_is_swap_deviation(ga):
    g, alloc = ga
    d = oracle_dist(g)
    envy = set(find_envy(g, alloc))
    assert envy == set(oracle_envy(g, d, alloc.placement))
    mutual = sorted((a, b) for a, b in envy if a < b and (b, a) in envy)
    assert find_swap_deviations(g, alloc) == mutual == sorted(oracle_swaps(g, d, alloc.placement))
    rep = stability_report(g, alloc)
    for a, b in rep.swap_deviations:
        assert (a, b) in envy and (b, a) in envy


@settings(FAST, max_examples=300)
@given(game_and_allocation(max_n=8, max_agents=4), st.data())
def test_swapping_twin_agents_keeps_flags(ga, data):
    g, alloc = ga
    if g.n_agents + 1 > g.n_vertices or g.n_agents == 0:
        return
    x = data.draw(st.integers(0, g.n_agents - 1))
    y = g.n_agents
    agents = [AgentPrefs(p.name, dict(p.wants)) for p in g.agents]
    for p in agents:
        if x in p.wants:
            p.wants[y] = p.wants[x]
    agents.append(AgentPrefs("twin", dict(agents[x].wants)))
    twin = Game(g.topology, agents)
    free = [v for v in range(g.n_vertices) if v not in alloc.placement]
    pi = Allocation(alloc.placement + (data.draw(st.sampled_from(free)),))
    r1, r2 = stability_report(twin, pi), stability_report(twin, pi.swapped(x, y))
    assert (r1.is_ef, r1.is_swap_stable, r1.is_jump_stable) == (r2.is_ef, r2.is_swap_stable, r2.is_jump_stable)


@settings(FAST, max_examples=300)
@given(game_and_allocation(max_n=10, max_agents=6, shapes=("symmetric",)))
def test_potential_bounds(ga):
    g, alloc = ga
    P = potential(g, alloc)
    assert 0 <= P <= g.n_agents ** 2 * g.n_vertices


@settings(FAST, max_examples=300)
@given(games(max_n=10, max_agents=5))
def test_equidistant_placement_swap_neutral(g):
    s = equidistant_set(g, g.n_agents)
    if s is None:
        return
    alloc = Allocation(tuple(sorted(s)))
    for a in range(g.n_agents):
        c = cost(g, alloc, a)
        for b in range(g.n_agents):
            if b != a:
                assert cost(g, alloc.swapped(a, b), a) == c
