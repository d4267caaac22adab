import math

import pytest

from cliquecount import count, count_global_parallel, degeneracy_orient

from conftest import complete_graph, empty_graph, random_gnp


def test_workers_one_equals_sequential():
    g = random_gnp(20, 0.5, 50)
    o = degeneracy_orient(g)
    seq = count(g, orientation=o)
    par = count_global_parallel(g, o, workers=1)
    assert par.global_counts == seq.global_counts
    assert par.stats == seq.stats


@pytest.mark.parametrize("workers", [2, 4, 8])
def test_worker_count_does_not_change_results(workers):
    g = random_gnp(24, 0.5, 51)
    o = degeneracy_orient(g)
    seq = count(g, orientation=o)
    par = count_global_parallel(g, o, workers=workers)
    assert par.global_counts == seq.global_counts
    assert par.stats.node_count == seq.stats.node_count
    assert par.stats.leaf_count == seq.stats.leaf_count
    assert par.stats.max_depth == seq.stats.max_depth


def test_k15_across_workers():
    g = complete_graph(15)
    tables = count(g, threads=4)
    for k in range(1, 16):
        assert tables.global_count(k) == math.comb(15, k)


def test_parallel_with_max_k():
    g = random_gnp(22, 0.6, 52)
    full = count(g)
    for cap in (2, 3, 4):
        par = count(g, threads=3, max_k=cap)
        assert par.global_counts == full.global_counts[:cap + 1]


def test_parallel_fast_counters():
    g = random_gnp(22, 0.5, 53)
    seq = count(g)
    par = count(g, threads=2, counters="fast")
    assert par.global_counts == seq.global_counts


def test_parallel_empty_graph():
    g = empty_graph(0)
    tables = count_global_parallel(g, degeneracy_orient(g), workers=2)
    assert tables.global_counts == [0]


def test_workers_must_be_positive():
    g = complete_graph(3)
    with pytest.raises(ValueError):
        count_global_parallel(g, degeneracy_orient(g), workers=0)
