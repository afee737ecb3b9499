import random

import pytest

from conftest import oracle_cost, oracle_dist
from dpgame import (Allocation, Game, ShapeError, Status, Topology, brute_force_search, cost, diameter,
                    dispatch_solve, dynamics_symmetric, is_envy_free, is_jump_stable, is_swap_stable,
                    out_star_dynamics, solve_ef_clique_or_star, solve_jump_swap_acyclic)
from dpgame.generators import gen_random
from dpgame.structured import acyclic_order, potential


def test_clique_any_allocation():
    g = gen_random(5, 0, 3, 1.0, 4, "generic", 1, topology="clique")
    out = solve_ef_clique_or_star(g)
    assert out.found and out.witness.placement == (0, 1, 2) and is_envy_free(g, out.witness)


def test_star_indifferent():
    g = Game.from_wants(Topology.star(4), [{}, {}])
    assert solve_ef_clique_or_star(g).found


def test_star_rejects_other_shapes():
    with pytest.raises(ShapeError):
        solve_ef_clique_or_star(Game.from_wants(Topology.path(4), [{}]))


def test_star_matches_brute():
    rng = random.Random(5)
    for seed in range(300):
        n = rng.randint(2, 7)
        g = gen_random(n, 0, rng.randint(0, min(n, 4)), rng.random(), 3, "generic", seed,
                       topology=rng.choice(["star", "clique"]))
        out = solve_ef_clique_or_star(g)
        assert out.status == brute_force_search(g, "ef").status
        if out.found:
            assert is_envy_free(g, out.witness)


def test_out_star_indifferent_unchanged():
    g = Game.from_wants(Topology.path(4), [{}, {}, {}])
    t = out_star_dynamics(g, Allocation((2, 0, 3)))
    assert t.final == Allocation((2, 0, 3)) and len(t) == 0


def test_out_star_star_example():
    # a on the centre wants b at distance 2; b on a leaf
    g = Game.from_wants(Topology.star(3), [{1: 2}, {}, {}])
    start = Allocation((0, 1, 2))
    assert cost(g, start, 0) == 1
    t = out_star_dynamics(g, start)
    assert len(t) == 1 and t.steps[0].cost_before == (1,) and t.steps[0].cost_after == (0,)
    assert cost(g, t.final, 0) == 0 and is_envy_free(g, t.final)


def test_out_star_random():
    rng = random.Random(9)
    for seed in range(300):
        n = rng.randint(2, 12)
        g = gen_random(n, rng.random() * 0.4, rng.randint(1, min(n, 6)), rng.random(), 8, "out-star", seed)
        t = out_star_dynamics(g)
        assert is_envy_free(g, t.final)
        assert len(t) <= diameter(g) * g.n_agents
        costs = [s.cost_after[0] for s in t.steps]
        assert costs == sorted(costs, reverse=True) and len(set(costs)) == len(costs)


def test_symmetric_p5_single_jump():
    g = Game.from_wants(Topology.path(5), [{1: 2}, {0: 2}])
    t = dynamics_symmetric(g, "jump", Allocation((0, 1)))
    assert len(t) == 1
    s = t.steps[0]
    assert (s.potential_before, s.potential_after) == (2, 0)
    assert g.dist[t.final[0]][t.final[1]] == 2
    assert cost(g, t.final, 0) == cost(g, t.final, 1) == 0


def test_symmetric_potential_counts_both_directions():
    g = Game.from_wants(Topology.path(5), [{1: 2}, {0: 2}])
    # each agent has cost 1, so the potential is 2 and drops by twice the gain of 1
    assert potential(g, Allocation((0, 1))) == 2


def test_symmetric_stable_start_empty_trace():
    g = Game.from_wants(Topology.path(5), [{1: 2}, {0: 2}])
    assert len(dynamics_symmetric(g, "both", Allocation((0, 2)))) == 0


def test_symmetric_rejects_asymmetric():
    with pytest.raises(ShapeError):
        dynamics_symmetric(Game.from_wants(Topology.path(3), [{1: 1}, {}]), "jump")


def _replay_and_check(g, trace, start):
    d = oracle_dist(g)
    n = g.n_vertices
    pos = list(start.placement)

    def pot(p):
        return sum(abs(min(ideal, n) - d[p[a]][p[b]]) for a in range(g.n_agents)
                   for b, ideal in g.agents[a].wants.items())

    for s in trace.steps:
        before = [oracle_cost(g, d, pos, m) for m in s.movers]
        p_before = pot(pos)
        if s.kind == "jump":
            pos[s.movers[0]] = s.target
        else:
            a, b = s.movers
            pos[a], pos[b] = pos[b], pos[a]
        after = [oracle_cost(g, d, pos, m) for m in s.movers]
        assert all(x > y for x, y in zip(before, after))
        assert p_before - pot(pos) == 2 * (sum(before) - sum(after))
        assert (s.potential_before, s.potential_after) == (p_before, pot(pos))
    assert tuple(pos) == trace.final.placement


@pytest.mark.parametrize("mode", ["jump", "swap", "both"])
def test_symmetric_random(mode):
    rng = random.Random(11)
    for seed in range(60):
        n = rng.randint(2, 20)
        g = gen_random(n, rng.random() * 0.3, rng.randint(1, min(n, 8)), rng.random(), 2 * n, "symmetric", seed)
        start = g.first_allocation()
        t = dynamics_symmetric(g, mode, start)
        _replay_and_check(g, t, start)
        assert len(t) <= g.n_agents ** 2 * g.n_vertices
        if mode != "swap":
            assert is_jump_stable(g, t.final)
        if mode != "jump":
            assert is_swap_stable(g, t.final)


def test_acyclic_chain_on_p4():
    g = Game.from_wants(Topology.path(4), [{1: 1}, {2: 1}, {}])
    alloc = solve_jump_swap_acyclic(g)
    assert acyclic_order(g) == [2, 1, 0]
    assert all(cost(g, alloc, a) == 0 for a in range(3))
    assert sorted(alloc.placement) in ([0, 1, 2], [1, 2, 3])
    assert is_jump_stable(g, alloc) and is_swap_stable(g, alloc)


def test_acyclic_all_indifferent():
    g = Game.from_wants(Topology.cycle(6), [{}, {}, {}, {}])
    assert solve_jump_swap_acyclic(g).placement == (0, 1, 2, 3)


def test_acyclic_rejects_cycle():
    with pytest.raises(ShapeError):
        solve_jump_swap_acyclic(Game.from_wants(Topology.path(3), [{1: 1}, {0: 1}]))


def test_acyclic_random():
    rng = random.Random(13)
    for seed in range(200):
        n = rng.randint(1, 15)
        g = gen_random(n, rng.random() * 0.4, rng.randint(0, min(n, 8)), rng.random(), 6, "dag", seed)
        alloc = solve_jump_swap_acyclic(g)
        assert is_jump_stable(g, alloc) and is_swap_stable(g, alloc)


def test_dispatch_routes():
    g = gen_random(5, 0, 3, 1.0, 4, "generic", 2, topology="clique")
    assert dispatch_solve(g, "ef").solver == "clique-star"
    g = gen_random(8, 0.2, 4, 0.8, 3, "symmetric", 3)
    out = dispatch_solve(g, "jump")
    assert out.solver == "symmetric-dynamics" and is_jump_stable(g, out.witness)


def test_dispatch_generic_uses_brute():
    g = Game.from_wants(Topology.path(4), [{1: 1, 2: 2}, {0: 2, 2: 1, 3: 1}, {0: 1, 1: 2}, {2: 3}])
    out = dispatch_solve(g, "swap")
    assert out.solver == "brute"
    ref = brute_force_search(g, "swap")
    assert (out.status, out.witness) == (ref.status, ref.witness)


def test_dispatch_matches_brute_all_notions():
    rng = random.Random(17)
    for seed in range(400):
        n = rng.randint(1, 7)
        shape = rng.choice(["generic", "symmetric", "dag", "in-star", "out-star"])
        g = gen_random(n, rng.random() * 0.5, rng.randint(0, min(n, 4)), rng.random(), 3, shape, seed,
                       topology=rng.choice(["random", "random", "star", "clique", "cycle"]))
        for notion in ["ef", "swap", "jump", "ef-jump"]:
            out = dispatch_solve(g, notion)
            assert out.status == brute_force_search(g, notion).status
            assert out.status is not Status.ABORTED
