import math

import networkx as nx
import pytest

from cliquecount import degeneracy_orient, degeneracy_stats

from conftest import (complete_graph, cycle_graph, empty_graph, path_graph,
                      quadratic_peel, random_gnp, star_graph)


def test_path_has_degeneracy_one():
    o = degeneracy_orient(path_graph(3))
    assert o.alpha == 1
    assert all(len(out) <= 1 for out in o.out_neighbors)


def test_cycle_has_degeneracy_two():
    assert degeneracy_orient(cycle_graph(5)).alpha == 2


def test_complete_graph_out_degrees_descend_along_order():
    n = 7
    o = degeneracy_orient(complete_graph(n))
    assert o.alpha == n - 1
    assert [o.out_degree(v) for v in o.order] == list(range(n - 1, -1, -1))


def test_star_has_degeneracy_one():
    o = degeneracy_orient(star_graph(10))
    assert degeneracy_stats(o)["alpha"] == 1


def test_k4_stats():
    stats = degeneracy_stats(degeneracy_orient(complete_graph(4)))
    assert stats["alpha"] == 3
    assert stats["max_core_size"] == 4
    assert sorted(stats["order"]) == [0, 1, 2, 3]


def test_empty_graph():
    o = degeneracy_orient(empty_graph(0))
    assert o.alpha == 0
    assert o.order == []
    assert degeneracy_stats(o)["max_core_size"] == 0


def test_isolated_vertices_ordered_first():
    o = degeneracy_orient(star_graph(3))  # center 0
    assert o.order[-1] == 0 or o.out_degree(0) <= 1


@pytest.mark.parametrize("seed", range(12))
def test_orientation_invariants_random(seed):
    g = random_gnp(seed % 30 + 5, [0.1, 0.3, 0.6][seed % 3], seed)
    o = degeneracy_orient(g)
    out_degrees = [len(row) for row in o.out_neighbors]
    assert max(out_degrees, default=0) == o.alpha
    assert o.alpha == max(o.core_numbers, default=0)
    if g.m:
        assert o.alpha <= math.sqrt(2 * g.m)
    covered = 0
    for v in range(g.n):
        for u in o.out_neighbors[v]:
            assert o.rank[u] > o.rank[v], "orientation must be acyclic"
        ins = [u for u in range(g.n) if v in o.out_neighbors[u]]
        assert sorted(o.out_neighbors[v] + ins) == sorted(map(int, g.neighbors(v)))
        covered += len(o.out_neighbors[v])
    assert covered == g.m


@pytest.mark.parametrize("seed", range(10))
def test_order_matches_quadratic_peeler(seed):
    g = random_gnp(4 + 4 * seed, 0.35, 1000 + seed)
    o = degeneracy_orient(g)
    ref_order, ref_alpha = quadratic_peel(g)
    assert o.alpha == ref_alpha
    # both implementations use the lowest-id tie-break, so even the order
    # must agree, not just alpha
    assert o.order == ref_order


@pytest.mark.parametrize("seed", range(8))
def test_core_numbers_match_networkx(seed):
    g = random_gnp(25, 0.3, 2000 + seed)
    o = degeneracy_orient(g)
    gx = nx.Graph()
    gx.add_nodes_from(range(g.n))
    gx.add_edges_from((u, v) for u, v in g.edges())
    expected = nx.core_number(gx)
    assert {v: o.core_numbers[v] for v in range(g.n)} == expected


def test_rank_is_inverse_of_order():
    g = random_gnp(20, 0.4, 99)
    o = degeneracy_orient(g)
    assert [o.rank[v] for v in o.order] == list(range(g.n))
