from itertools import combinations

import numpy as np
import pytest

from pyhyperdense.hypergraph import UniformHypergraph
from pyhyperdense.kernel import BUDGET_ENV_VAR, HdException, HdStatus
from pyhyperdense.models import PlantedModel, RngStream, sample_planted
from pyhyperdense.statistics import (
    clique_number,
    hcnt_has_clique,
    hst_oracle,
    hst_stat,
    hst_stat_greedy,
)

from ..fixtures import *

# TESTS


def _is_clique(graph: UniformHypergraph, vertices: tuple[int, ...]) -> bool:
    return all(graph.has_edge(edge) for edge in combinations(vertices, graph.m))


def test_scan_whole_vertex_set(complete_5_3, path_graph):
    assert hst_stat(complete_5_3, 5).value == 10
    assert hst_stat(path_graph, 3).value == 2


def test_scan_empty(empty_6_3):
    value = hst_stat(empty_6_3, 4)
    assert value.value == 0
    assert len(value.witness) == 4


def test_scan_complete():
    value = hst_stat(UniformHypergraph.complete(6, 3), 4)
    assert value.value == 4
    assert value.aux["subsets"] == 15


def test_scan_finds_planted_clique():
    graph = sample_planted(PlantedModel(12, 3, 5, 0.1, 1.0), RngStream(3, 0))
    assert hst_stat(graph, 5).value == 10


def test_scan_matches_oracle():
    rng = np.random.default_rng(7)
    for idx in range(100):
        N = int(rng.integers(7, 13))
        m = int(rng.integers(2, 4))
        n = int(rng.integers(m, 7))
        graph = random_graph(N, m, float(rng.uniform(0.1, 0.9)), seed=31, stream_id=idx)

        fast = hst_stat(graph, n)
        assert fast.value == hst_oracle(graph, n).value
        assert len(fast.witness) == n
        assert graph.edges_within(fast.witness) == fast.value


def test_scan_domain(path_graph):
    with pytest.raises(HdException) as exc_info:
        hst_stat(path_graph, 1)
    assert exc_info.value.status == HdStatus.DOMAIN_ERROR
    with pytest.raises(HdException):
        hst_stat(path_graph, 4)


def test_scan_budget_argument(no_budget_env):
    graph = random_graph(10, 2, 0.5, seed=1)
    with pytest.raises(HdException) as exc_info:
        hst_stat(graph, 5, budget=100)
    assert exc_info.value.status == HdStatus.BUDGET_EXCEEDED
    assert hst_stat(graph, 5, budget=252).value == hst_oracle(graph, 5).value


def test_scan_budget_environment(monkeypatch):
    monkeypatch.setenv(BUDGET_ENV_VAR, "10")
    with pytest.raises(HdException) as exc_info:
        hst_stat(random_graph(10, 2, 0.5, seed=1), 5)
    assert exc_info.value.status == HdStatus.BUDGET_EXCEEDED


def test_oracle_size_guard():
    with pytest.raises(HdException) as exc_info:
        hst_oracle(UniformHypergraph(40, 2), 20)
    assert exc_info.value.status == HdStatus.SIZE_GUARD


def test_oracle_at_edge_size(empty_6_3, complete_5_3):
    assert hst_oracle(empty_6_3, 3).value == 0
    assert hst_oracle(complete_5_3, 3).value == 1


def test_greedy_is_exact_on_whole_set(complete_5_3):
    value = hst_stat_greedy(complete_5_3, 5)
    assert value.value == 10
    assert not value.approximate


def test_greedy_is_lower_bound(seeded_graphs):
    for idx, graph in enumerate(seeded_graphs):
        greedy = hst_stat_greedy(graph, 4, rng=RngStream(5, idx))
        assert greedy.approximate
        assert greedy.value <= hst_stat(graph, 4).value
        assert graph.edges_within(greedy.witness) == greedy.value


def test_greedy_finds_planted_clique():
    model = PlantedModel(40, 2, 10, 0.05, 1.0)
    for seed in range(10):
        graph = sample_planted(model, RngStream(seed, 0))
        assert hst_stat_greedy(graph, 10, rng=RngStream(seed, 1)).value == 45


def test_clique_indicator(complete_5_3, empty_6_3):
    found = hcnt_has_clique(UniformHypergraph.complete(6, 3), 5)
    assert found.value == 1.0
    assert len(found.witness) == 5
    assert hcnt_has_clique(empty_6_3, 3).value == 0.0
    assert hcnt_has_clique(complete_5_3, 5).witness == (0, 1, 2, 3, 4)


def test_clique_indicator_planted():
    model = PlantedModel(20, 3, 6, 0.1, 1.0)
    graph = sample_planted(model, RngStream(8, 0))
    value = hcnt_has_clique(graph, 6)
    assert value.value == 1.0
    assert _is_clique(graph, value.witness)


def test_clique_indicator_agrees_with_scan(seeded_graphs):
    for graph in seeded_graphs:
        n = graph.m + 1
        full = hst_stat(graph, n).value == len(list(combinations(range(n), graph.m)))
        assert hcnt_has_clique(graph, n).value == float(full)


def test_clique_indicator_budget():
    with pytest.raises(HdException) as exc_info:
        hcnt_has_clique(UniformHypergraph.complete(6, 3), 5, budget=1)
    assert exc_info.value.status == HdStatus.BUDGET_EXCEEDED


def test_clique_number(complete_5_3, empty_6_3, path_graph):
    assert clique_number(UniformHypergraph.complete(6, 3)).size == 6
    assert clique_number(empty_6_3).size == 2
    result = clique_number(path_graph)
    assert result.size == 2
    assert _is_clique(path_graph, result.witness)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_scan_and_clique_ignore_vertex_labels(n, no_budget_env):
    rng = np.random.default_rng(n)
    for idx in range(20):
        graph = random_graph(9, 3, float(rng.uniform(0.2, 0.8)), seed=31, stream_id=idx)
        perm = rng.permutation(9)
        image = graph.relabel(perm)

        exact = hst_stat(graph, n)
        moved = hst_stat(image, n)
        assert moved.value == exact.value
        assert hst_oracle(image, n).value == hst_oracle(graph, n).value == exact.value
        assert image.edges_within(perm[list(exact.witness)]) == exact.value
        assert hcnt_has_clique(image, n).value == hcnt_has_clique(graph, n).value
