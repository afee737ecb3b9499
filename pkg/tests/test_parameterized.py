import itertools
import random

from conftest import oracle_dist
from dpgame import (Game, Status, Topology, brute_force_search, compute_vertex_cover, equidistant_set,
                    is_envy_free, kernelize_by_vc, neighborhood_partition, solve_ef_clique_or_star,
                    solve_ef_diameter, solve_ef_nd, solve_ef_vc)
from dpgame.generators import gen_counterexample, gen_random
from dpgame.parameterized import is_vertex_cover, kernel_size_bound


def _min_cover_size(t):
    for k in range(t.vertex_count + 1):
        for s in itertools.combinations(range(t.vertex_count), k):
            if is_vertex_cover(t, set(s)):
                return k


def test_cover_star_and_path():
    assert compute_vertex_cover(Topology.star(5)) == {0}
    assert len(compute_vertex_cover(Topology.path(4))) == 2


def test_cover_minimum_on_random_graphs():
    rng = random.Random(23)
    for seed in range(150):
        t = gen_random(rng.randint(1, 14), rng.random() * 0.6, 0, 0, 1, seed=seed).topology
        c = compute_vertex_cover(t)
        assert is_vertex_cover(t, c) and len(c) == _min_cover_size(t)


def test_kernel_star():
    g = Game.from_wants(Topology.star(5), [{1: 2}, {}])
    k = kernelize_by_vc(g, {0})
    assert k.game.n_vertices == 3 and k.back_map == (0, 1, 2)
    kg, back = k
    assert kg is k.game and back == k.back_map


def test_kernel_identity_when_small():
    g = Game.from_wants(Topology.path(4), [{1: 1}, {}])
    k = kernelize_by_vc(g)
    assert k.game.topology.edges == g.topology.edges and k.back_map == (0, 1, 2, 3)


def test_kernel_preserves_ef_existence():
    rng = random.Random(29)
    for seed in range(300):
        n = rng.randint(1, 12)
        g = gen_random(n, rng.random() * 0.5, rng.randint(0, min(n, 3)), rng.random(), 4, "generic", seed)
        k = kernelize_by_vc(g)
        assert k.game.n_vertices <= kernel_size_bound(len(k.cover), g.n_agents)
        assert brute_force_search(k.game, "ef").status == brute_force_search(g, "ef").status


def test_vc_solver():
    assert solve_ef_vc(Game.from_wants(Topology.path(5), [{}, {}])).found
    assert solve_ef_vc(gen_counterexample("no-ef-cycle").game).status is Status.NONE
    rng = random.Random(31)
    for seed in range(200):
        n = rng.randint(2, 8)
        g = gen_random(n, 0, rng.randint(0, min(n, 4)), rng.random(), 3, "generic", seed, topology="star")
        out = solve_ef_vc(g)
        assert out.status == solve_ef_clique_or_star(g).status
        if out.found:
            assert is_envy_free(g, out.witness)


def test_nd_partitions():
    p = neighborhood_partition(Topology.complete(5))
    assert p.classes == ((0, 1, 2, 3, 4),) and p.kinds == ("clique",)
    p = neighborhood_partition(Topology.star(4))
    assert p.classes == ((0,), (1, 2, 3, 4)) and p.kinds[1] == "independent"
    assert len(neighborhood_partition(Topology.path(4))) == 4


def test_nd_classes_are_twins():
    rng = random.Random(37)
    for seed in range(200):
        t = gen_random(rng.randint(1, 12), rng.random(), 0, 0, 1, seed=seed).topology
        adj = t.adjacency
        p = neighborhood_partition(t)
        assert sorted(v for c in p.classes for v in c) == list(range(t.vertex_count))
        for c, kind in zip(p.classes, p.kinds):
            for u, v in itertools.combinations(c, 2):
                assert adj[u] - {v} == adj[v] - {u}
                assert (v in adj[u]) == (kind == "clique")
        # maximality: members of different classes are not twins
        for c1, c2 in itertools.combinations(p.classes, 2):
            u, v = c1[0], c2[0]
            assert adj[u] - {v} != adj[v] - {u}


def test_nd_clique_first_mapping():
    g = gen_random(5, 0, 4, 1.0, 3, "generic", 3, topology="clique")
    out = solve_ef_nd(g)
    assert out.found and out.witness.placement == (0, 1, 2, 3)


def test_nd_matches_brute():
    rng = random.Random(41)
    for seed in range(500):
        n = rng.randint(1, 10)
        g = gen_random(n, rng.random() * 0.6, rng.randint(0, min(n, 4)), rng.random(), 3, "generic", seed)
        out = solve_ef_nd(g)
        assert out.status == brute_force_search(g, "ef").status
        if out.found:
            assert is_envy_free(g, out.witness)


def test_equidistant_examples():
    assert equidistant_set(Topology.complete(6), 4) is not None
    assert equidistant_set(Topology.cycle(6), 3) == {0, 2, 4}
    assert equidistant_set(Topology.path(3), 3) is None
    assert equidistant_set(Topology.cycle(4), 3) is None


def _exhaustive_has_equidistant(t, k):
    d = oracle_dist(Game.from_wants(t, []))
    return any(len({d[u][v] for u, v in itertools.combinations(s, 2)}) <= 1
               for s in itertools.combinations(range(t.vertex_count), k))


def test_equidistant_outputs_verified():
    rng = random.Random(43)
    for seed in range(200):
        t = gen_random(rng.randint(1, 12), rng.random() * 0.5, 0, 0, 1, seed=seed).topology
        d = oracle_dist(Game.from_wants(t, []))
        for k in range(1, 5):
            s = equidistant_set(t, k)
            if s is None:
                continue
            assert len(s) == k
            assert len({d[u][v] for u, v in itertools.combinations(sorted(s), 2)}) <= 1


def test_equidistant_none_cases_are_small():
    # the extractor is not complete below the Ramsey threshold, but P3 and C4 have no 3-set at all
    for t in (Topology.path(3), Topology.cycle(4)):
        assert not _exhaustive_has_equidistant(t, 3)


def test_diameter_solver():
    g = gen_random(6, 0, 3, 1.0, 4, "generic", 5, topology="clique")
    assert solve_ef_diameter(g).found
    g = Game.from_wants(Topology.cycle(6), [{1: 3, 2: 1}, {0: 2}, {1: 1}])
    out = solve_ef_diameter(g)
    assert out.found and set(out.witness.placement) == {0, 2, 4} and is_envy_free(g, out.witness)
    assert solve_ef_diameter(gen_counterexample("no-ef-cycle").game).status is Status.NONE


def test_parameterized_solvers_agree():
    rng = random.Random(47)
    for seed in range(300):
        n = rng.randint(1, 8)
        g = gen_random(n, rng.random() * 0.5, rng.randint(0, min(n, 4)), rng.random(), 3, "generic", seed)
        ref = brute_force_search(g, "ef").status
        assert solve_ef_vc(g).status == solve_ef_nd(g).status == solve_ef_diameter(g).status == ref
