import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brod.core import Digraph, example1, validate_influence_matrix
from brod.graph import (
    NoDominantNeighborError,
    analysis_report,
    consensus_cycle_condition,
    dominant_neighbor_condition,
    functional_graph_cycles,
    has_unique_globally_reachable_sink,
    reduce_to_linear,
    strongly_connected_components,
)

from conftest import dominant_instance, single_cycle_map
from oracles import all_paths_exist, brute_scc, functional_cycles_brute, reachability


def _is_acyclic(n, edges):
    indeg = [0] * n
    out = [[] for _ in range(n)]
    for a, b in edges:
        out[a].append(b)
        indeg[b] += 1
    queue = [v for v in range(n) if indeg[v] == 0]
    seen = 0
    while queue:
        v = queue.pop()
        seen += 1
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return seen == n


def test_complete_digraph():
    g = Digraph.from_matrix(np.ones((4, 4)))
    cond = strongly_connected_components(g)
    assert cond.components == ((0, 1, 2, 3),)
    assert cond.sinks == (0,)
    assert has_unique_globally_reachable_sink(g)


def test_two_isolated_self_loops():
    g = Digraph.from_matrix(np.eye(2))
    cond = strongly_connected_components(g)
    assert len(cond.components) == 2 and cond.sinks == (0, 1)
    assert not has_unique_globally_reachable_sink(g)


def test_star_into_center():
    n = 5
    a = np.zeros((n, n))
    a[0, 0] = 1
    a[1:, 0] = 1
    g = Digraph.from_matrix(a)
    cond = strongly_connected_components(g)
    assert len(cond.components) == n
    assert [cond.components[s] for s in cond.sinks] == [(0,)]
    assert has_unique_globally_reachable_sink(g)


def test_example1_condensation():
    W = example1().W
    cond = strongly_connected_components(W.digraph())
    # 0 -> 2 -> 1 -> 0 through the small weights 0.1, 0.05, 0.2
    assert cond.components == ((0, 1, 2), (3,), (4,), (5,))
    assert sorted(cond.components[s] for s in cond.sinks) == [(3,), (4,), (5,)]
    a = W.weights
    assert all(all_paths_exist(a, i, j) for i in (0, 1, 2) for j in (0, 1, 2))
    assert not any(all_paths_exist(a, i, j) for i in (3, 4, 5) for j in range(6) if j != i)
    assert not has_unique_globally_reachable_sink(W.digraph())


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 8), st.integers(0, 2**32 - 1), st.floats(0.05, 0.6))
def test_scc_matches_reachability_oracle(n, seed, density):
    rng = np.random.default_rng(seed)
    adj = (rng.random((n, n)) < density).astype(float)
    g = Digraph.from_matrix(adj)
    cond = strongly_connected_components(g)
    assert sorted(cond.components) == brute_scc(adj)
    assert sorted(itertools.chain(*cond.components)) == list(range(n))
    assert _is_acyclic(len(cond.components), cond.edges)
    assert cond.sinks
    # unique globally reachable sink iff some node is reachable from every node
    r = reachability(adj)
    assert has_unique_globally_reachable_sink(g) == bool(np.any(r.all(axis=0)))


def test_long_path_does_not_recurse():
    n = 5000
    g = Digraph(n, tuple((i + 1,) for i in range(n - 1)) + ((),))
    cond = strongly_connected_components(g)
    assert len(cond.components) == n and len(cond.sinks) == 1


def test_dominant_neighbor_examples():
    assert dominant_neighbor_condition(validate_influence_matrix(np.eye(3))) == (0, 1, 2)
    assert dominant_neighbor_condition(example1().W) is None
    assert dominant_neighbor_condition(validate_influence_matrix([[0.5, 0.5], [0, 1]])) is None


def test_reduce_to_linear_examples():
    red = reduce_to_linear(validate_influence_matrix(np.eye(3)), 0.4)
    np.testing.assert_array_equal(red.F, np.eye(3))
    red = reduce_to_linear(validate_influence_matrix([[0.1, 0.9], [0.8, 0.2]]), 0.4)
    np.testing.assert_allclose(red.F, [[0.4, 0.6], [0.6, 0.4]], atol=1e-15)
    W = validate_influence_matrix([[0.2, 0.7, 0.1], [0.0, 0.3, 0.7], [0.1, 0.1, 0.8]])
    red = reduce_to_linear(W, 0.5)
    np.testing.assert_array_equal(red.F, [[0.5, 0.5, 0], [0, 0.5, 0.5], [0, 0, 1.0]])
    with pytest.raises(NoDominantNeighborError):
        reduce_to_linear(example1().W, 0.4)


def test_reduction_rows(rng):
    for _ in range(30):
        W, dom = dominant_instance(rng, int(rng.integers(2, 10)))
        red = reduce_to_linear(W, 0.3)
        assert list(red.dominant) == dom
        np.testing.assert_allclose(red.F.sum(axis=1), 1.0, atol=1e-15)
        assert np.all((red.F > 0).sum(axis=1) <= 2)


def test_cycle_condition_examples():
    # 3-cycle 0->1->2->0 with nodes 3, 4 hanging off it
    succ = [1, 2, 0, 0, 3]
    W, _ = dominant_instance(np.random.default_rng(0), 5, succ)
    assert consensus_cycle_condition(W)
    W, _ = dominant_instance(np.random.default_rng(0), 4, [1, 0, 3, 2])
    assert not consensus_cycle_condition(W)
    assert not consensus_cycle_condition(validate_influence_matrix(np.eye(3)))
    assert consensus_cycle_condition(validate_influence_matrix(np.eye(1)))
    with pytest.raises(NoDominantNeighborError):
        consensus_cycle_condition(example1().W)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 9), min_size=1, max_size=10).filter(lambda s: max(s) < len(s)))
def test_functional_cycles_match_brute(succ):
    assert len(functional_graph_cycles(succ)) == functional_cycles_brute(succ)


def test_single_cycle_generator(rng):
    for _ in range(50):
        assert functional_cycles_brute(single_cycle_map(rng, int(rng.integers(1, 10)))) == 1


def test_analysis_report_shapes():
    rep = analysis_report(example1().W)
    assert rep["dominant_neighbor"] is None and rep["cycle_condition"] is None
    assert rep["sink_count"] == 3 and rep["unique_globally_reachable_sink"] is False
    rep = analysis_report(validate_influence_matrix(np.eye(3)))
    assert rep["dominant_neighbor"] == [0, 1, 2]
    assert rep["cycle_condition"] is False and rep["sink_count"] == 3
