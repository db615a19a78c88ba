import numpy as np
import pytest
from hypothesis import given, settings

from clusternet import DimensionError, ValidationError, from_edges, grid_cluster, linear_cluster, ring_cluster
from clusternet.graph import AdjacencyGraph, from_dict

from conftest import graphs


def test_linear_cluster_small():
    np.testing.assert_array_equal(linear_cluster(1).V, [[0.0]])
    np.testing.assert_array_equal(linear_cluster(3).V, [[0, 1, 0], [1, 0, 1], [0, 1, 0]])
    np.testing.assert_array_equal(linear_cluster(4).degrees(), [1, 2, 2, 1])


def test_linear_cluster_rejects_zero():
    with pytest.raises(DimensionError):
        linear_cluster(0)


def test_from_edges():
    np.testing.assert_array_equal(from_edges(2, [(0, 1, 1)]).V, [[0, 1], [1, 0]])
    assert from_edges(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)]) == linear_cluster(4)
    assert from_edges(4, [(0, 1), (2, 1), (3, 2)]) == linear_cluster(4)


@pytest.mark.parametrize(
    "edges, exc",
    [
        ([(0, 0, 1)], ValidationError),
        ([(0, 3, 1)], DimensionError),
        ([(-1, 0, 1)], DimensionError),
        ([(0, 1, 1), (1, 0, 2)], ValidationError),
        ([(0, 1, float("nan"))], ValidationError),
        ([(0,)], ValidationError),
    ],
)
def test_from_edges_errors(edges, exc):
    with pytest.raises(exc):
        from_edges(3, edges)


def test_direct_construction_validates():
    with pytest.raises(ValidationError):
        AdjacencyGraph(np.array([[0.0, 1.0], [0.5, 0.0]]))
    with pytest.raises(ValidationError):
        AdjacencyGraph(np.eye(2))
    g = linear_cluster(3)
    with pytest.raises(ValueError):
        g.V[0, 1] = 5.0


def test_ring_and_grid():
    assert np.all(ring_cluster(5).degrees() == 2)
    g = grid_cluster(2, 3)
    assert g.n == 6
    assert sorted(g.degrees()) == [2, 2, 2, 2, 3, 3]


def test_dict_round_trip():
    g = from_edges(4, [(0, 2, 0.5), (1, 3, -1.25)])
    assert from_dict(g.to_dict()) == g
    assert from_dict({"n": 3, "edges": [[0, 1, 1], [1, 2, 1]]}) == linear_cluster(3)
    assert g.digest() == from_dict(g.to_dict()).digest()
    assert g.digest() != linear_cluster(4).digest()


@settings(max_examples=100, deadline=None)
@given(graphs())
def test_graph_invariants(g):
    assert np.array_equal(g.V, g.V.T)
    assert np.all(np.diag(g.V) == 0)
    w = np.linalg.eigvalsh(g.V @ g.V + np.eye(g.n))
    assert w.min() >= 1 - 1e-10
