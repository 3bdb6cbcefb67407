import numpy as np
import pytest
from scipy.sparse.csgraph import connected_components as bfs_components

from junctions.graph import build_adjacency
from junctions.kmeans import kmeans_best_of
from junctions.oracles import UnionFind, connected_components, objective_eval
from tests.helpers import same_partition, scenario_scan


def test_union_find_merges_and_counts():
    uf = UnionFind(range(5))
    assert uf.union(0, 1)
    assert uf.union(3, 4)
    assert not uf.union(1, 0)
    assert uf.find(1) == uf.find(0)
    assert uf.find(2) != uf.find(3)
    assert len(uf) == 5


def test_union_find_adds_unknown_elements():
    uf = UnionFind()
    uf.union("a", "b")
    assert uf.find("a") == uf.find("b")
    assert len(uf) == 2


def test_fully_connected_is_one_component():
    assert connected_components(np.ones((6, 6))).count == 1


def test_block_diagonal_three_blocks():
    w = np.zeros((7, 7))
    for block in ([0, 1, 2], [3, 4], [5, 6]):
        w[np.ix_(block, block)] = 1.0
    result = connected_components(w)
    assert result.count == 3
    assert result.labels == (0, 0, 0, 1, 1, 2, 2)


def test_t_scan_has_three_components(t_scan):
    assert connected_components(build_adjacency(t_scan, 1.5, 1e-8)).count == 3


def test_union_find_agrees_with_breadth_first_search():
    rng = np.random.default_rng(100)
    for _ in range(100):
        n = int(rng.integers(1, 60))
        density = rng.uniform(0.0, 0.1)
        upper = np.triu(rng.random((n, n)) < density, k=1)
        w = (upper | upper.T).astype(np.float64)
        np.fill_diagonal(w, 1.0)
        count, labels = bfs_components(w, directed=False)
        ours = connected_components(w)
        assert ours.count == count
        assert same_partition(ours.labels, labels)


def test_objective_all_singletons_is_zero():
    rows = np.random.default_rng(0).normal(size=(5, 2))
    assert objective_eval(rows, range(5)) == 0.0


def test_objective_one_cluster_closed_form():
    rows = np.array([[0.0, 0.0], [2.0, 0.0], [4.0, 0.0]])
    assert objective_eval(rows, [0, 0, 0]) == pytest.approx(3 * np.mean([4.0, 0.0, 4.0]))


def test_objective_matches_stored_kmeans_objective():
    cloud, _ = scenario_scan("X")
    rows = cloud.xy
    result = kmeans_best_of(rows, 4, restarts=3, rng_seed=5)
    assert objective_eval(rows, result.labels) == pytest.approx(result.objective, rel=1e-9)
