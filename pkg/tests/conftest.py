import numpy as np
import pytest
from hypothesis import strategies as st

from clusternet import from_edges
from clusternet.linalg import n_angles
from clusternet.mbqc import load_fixtures


@pytest.fixture(scope="session")
def fixtures():
    return load_fixtures()


@pytest.fixture
def rng():
    return np.random.default_rng(20141015)


@st.composite
def graphs(draw, min_n=1, max_n=8, weighted=True):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    if weighted:
        weights = draw(st.lists(st.floats(-2.0, 2.0).filter(lambda w: abs(w) > 1e-3),
                                min_size=len(chosen), max_size=len(chosen)))
    else:
        weights = [1.0] * len(chosen)
    return from_edges(n, [(i, j, w) for (i, j), w in zip(chosen, weights)])


@st.composite
def graph_and_theta(draw, max_n=8, weighted=True):
    g = draw(graphs(max_n=max_n, weighted=weighted))
    theta = draw(st.lists(st.floats(-np.pi, np.pi), min_size=n_angles(g.n), max_size=n_angles(g.n)))
    return g, np.array(theta)


def random_graph(rng, n, p=0.5, weighted=True):
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                edges.append((i, j, rng.uniform(0.3, 1.5) if weighted else 1.0))
    return from_edges(n, edges)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
