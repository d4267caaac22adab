import math

import pytest

from cliquecount import (CounterOverflowError, CountTables, Graph,
                         accumulate_leaf, compare, count, degeneracy_orient,
                         enumerate_all_cliques, max_clique_size, pascal_rows,
                         traverse)
from cliquecount.counting import FAST_COUNTER_MAX

from conftest import (complete_graph, empty_graph, petersen_graph, random_gnp)


def test_pascal_rows():
    rows = pascal_rows(12)
    for r, row in enumerate(rows):
        assert row[0] == row[-1] == 1
        for i in range(1, r):
            assert row[i] == rows[r - 1][i - 1] + rows[r - 1][i]
        assert row == [math.comb(r, i) for i in range(r + 1)]


def test_pascal_rows_exceed_64_bits_exactly():
    # counts can exceed the 64-bit range; exact integers must carry them
    value = pascal_rows(67)[67][33]
    assert value == math.comb(67, 33) == 14226520737620288370
    assert value > 2 ** 63 - 1


def test_accumulate_leaf_single_vertex():
    g = empty_graph(1)
    tables = CountTables(g)
    accumulate_leaf(tables, [0], [], pascal_rows(2))
    assert tables.global_counts == [0, 1]


def test_accumulate_leaf_hand_derived_triangle():
    g = complete_graph(3)  # vertices a=0, b=1, c=2
    tables = CountTables(g, per_vertex=True, per_edge=True)
    accumulate_leaf(tables, [0], [1, 2], pascal_rows(3))
    assert tables.global_counts == [0, 1, 2, 1]
    assert tables.vertex_count(0, 3) == 1   # hold rule
    assert tables.vertex_count(1, 3) == 1   # pivot rule, i = 1
    assert tables.vertex_count(1, 2) == 1   # pivot rule, i = 0
    assert tables.vertex_count(0, 1) == 1 and tables.vertex_count(1, 1) == 0
    assert tables.edge_count(0, 1, 2) == 1  # hold-pivot rule
    assert tables.edge_count(0, 1, 3) == 1
    assert tables.edge_count(1, 2, 3) == 1  # pivot-pivot rule
    assert tables.edge_count(1, 2, 2) == 0


def test_accumulate_leaf_respects_max_k():
    g = complete_graph(3)
    tables = CountTables(g, per_vertex=True, per_edge=True)
    applied = accumulate_leaf(tables, [0], [1, 2], pascal_rows(3), max_k=2)
    assert tables.global_counts == [0, 1, 2]
    assert tables.vertex_count(1, 2) == 1
    assert tables.edge_count(1, 2, 3) == 0
    assert applied > 0


def test_k4_end_to_end():
    tables = count(complete_graph(4), per_vertex=True, per_edge=True)
    assert tables.global_count(3) == 4 and tables.global_count(4) == 1
    for v in range(4):
        assert tables.vertex_count(v, 3) == 3
    for u in range(4):
        for v in range(u + 1, 4):
            assert tables.edge_count(u, v, 3) == 2
            assert tables.edge_count(u, v, 4) == 1


def test_complete_graph_closed_form():
    tables = count(complete_graph(7))
    for k in range(1, 8):
        assert tables.global_count(k) == math.comb(7, k)
    assert tables.global_count(8) == 0


def test_petersen_triangle_free():
    tables = count(petersen_graph())
    assert tables.global_counts == [0, 10, 15]
    assert tables.max_clique_size() == 2


@pytest.mark.parametrize("seed", range(5))
def test_random_graph_matches_oracle(seed):
    g = random_gnp(20, 0.4, 700 + seed)
    census = enumerate_all_cliques(g, store_cliques=False)
    assert compare(census, count(g, per_vertex=True, per_edge=True))
    assert compare(census, count(g))  # fused global kernel


def test_max_clique_size():
    assert max_clique_size(count(complete_graph(5))) == 5
    assert max_clique_size(count(empty_graph(3))) == 1
    assert max_clique_size(count(empty_graph(0))) == 0


@pytest.mark.parametrize("seed", range(6))
def test_sum_identities(seed):
    g = random_gnp(16, 0.5, 800 + seed)
    t = count(g, per_vertex=True, per_edge=True)
    for k in range(1, len(t.global_counts)):
        ck = t.global_count(k)
        assert sum(t.vertex_count(v, k) for v in range(g.n)) == k * ck
        if k >= 2:
            total = sum(t.edge_count(u, v, k) for u, v in t.edge_keys)
            assert total == math.comb(k, 2) * ck


@pytest.mark.parametrize("seed", range(4))
def test_truncation_equals_prefix(seed):
    g = random_gnp(15, 0.6, 900 + seed)
    full = count(g, per_vertex=True, per_edge=True)
    for cap in range(1, full.max_clique_size() + 1):
        part = count(g, per_vertex=True, per_edge=True, max_k=cap)
        assert part.global_counts == full.global_counts[:cap + 1]
        for v in range(g.n):
            assert part.per_vertex[v] == full.per_vertex[v][:cap + 1]
        for eid in range(len(full.edge_keys)):
            assert part.per_edge[eid] == full.per_edge[eid][:max(cap - 1, 0)]
        fast = count(g, max_k=cap, counters="fast")
        assert fast.global_counts == full.global_counts[:cap + 1]


def test_basic_count_identities():
    for seed in range(4):
        g = random_gnp(18, 0.3, 1000 + seed)
        t = count(g, per_edge=True)
        assert t.global_count(1) == g.n
        assert t.global_count(2) == g.m
        assert set(t.edge_keys) == set(g.edges())
        for u, v in t.edge_keys:
            assert t.edge_count(u, v, 2) == 1


def test_exact_counts_beyond_64_bits():
    t = count(complete_graph(67))
    assert t.global_count(33) == math.comb(67, 33)
    assert t.max_clique_size() == 67


def test_fast_counters_match_exact():
    for seed in range(5):
        g = random_gnp(17, 0.5, 1100 + seed)
        exact = count(g)
        fast = count(g, counters="fast")
        assert fast.global_counts == exact.global_counts
        assert fast.stats == exact.stats


def test_fast_counters_overflow_aborts():
    # eleven disjoint copies of K63: alpha stays 62 but C_31 passes 2^63
    edges = []
    for c in range(11):
        base = c * 63
        edges.extend((base + i, base + j)
                     for i in range(63) for j in range(i + 1, 63))
    g = Graph.from_edges(edges)
    with pytest.raises(CounterOverflowError, match="--exact"):
        count(g, counters="fast")
    # exact mode on the same graph is fine
    assert count(g).global_count(31) == 11 * math.comb(63, 31)


def test_fast_counters_fall_back_when_alpha_large():
    # K70 pushes alpha past the mask width; checked pure path must abort
    g = complete_graph(70)
    with pytest.raises(CounterOverflowError):
        count(g, counters="fast")


def test_checked_bound_enforced_on_local_tables():
    g = complete_graph(3)
    tables = CountTables(g, per_vertex=True, counter_bound=10)
    accumulate_leaf(tables, [0], [1, 2], pascal_rows(3))
    tables._bump_vertex(0, 1, 100)
    with pytest.raises(CounterOverflowError):
        tables._enforce_bound()
    assert FAST_COUNTER_MAX == 2 ** 63 - 1


def test_per_leaf_update_bounds():
    # per leaf: global <= p+1, vertex <= (h+p)(p+1), edge <= (h+p)^2 (p+1)
    g = random_gnp(14, 0.6, 1200)
    o = degeneracy_orient(g)
    binom = pascal_rows(o.alpha + 1)
    g_tbl = CountTables(g)
    v_tbl = CountTables(g, per_vertex=True)
    e_tbl = CountTables(g, per_vertex=True, per_edge=True)

    def check(hold, pivots):
        h, p = len(hold), len(pivots)
        assert accumulate_leaf(g_tbl, hold, pivots, binom) <= p + 1
        assert accumulate_leaf(v_tbl, hold, pivots, binom) <= \
            (p + 1) + (h + p) * (p + 1)
        assert accumulate_leaf(e_tbl, hold, pivots, binom) <= \
            (p + 1) + (h + p) * (p + 1) + (h + p) ** 2 * (p + 1)

    traverse(g, o, check)


def test_threads_with_local_mode_warns_and_runs_sequential(caplog):
    g = random_gnp(12, 0.5, 1300)
    with caplog.at_level("WARNING"):
        t = count(g, per_vertex=True, threads=4)
    assert "single-threaded" in caplog.text
    ref = count(g, per_vertex=True)
    assert t.global_counts == ref.global_counts
    assert t.per_vertex == ref.per_vertex


def test_count_rejects_bad_arguments():
    g = complete_graph(3)
    with pytest.raises(ValueError):
        count(g, max_k=0)
    with pytest.raises(ValueError):
        count(g, threads=0)
    with pytest.raises(ValueError):
        count(g, counters="approximate")


def test_empty_graph_counts():
    t = count(empty_graph(0))
    assert t.global_counts == [0]
    assert t.max_clique_size() == 0
