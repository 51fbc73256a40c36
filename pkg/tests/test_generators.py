import pytest

from cyclesolve.errors import InvalidParams
from cyclesolve.generators import cycle_graph, generate, grid_graph, path_graph, random_graph, torus_graph


def test_path():
    g = path_graph(5)
    assert (g.n, g.m) == (5, 4)
    assert g.edges == tuple((i, i + 1) for i in range(4))


def test_grid():
    g = grid_graph(2, 2)
    assert (g.n, g.m) == (4, 4)
    g = grid_graph(3, 5)
    assert g.m == 3 * 4 + 2 * 5


@pytest.mark.parametrize("k", [3, 4, 6, 8])
def test_torus_sizes(k):
    g = torus_graph(k)
    assert (g.n, g.m) == (k * k, 2 * k * k)
    assert g.m - g.n + 1 == k * k + 1


def test_torus_orientation():
    g = torus_graph(3)
    assert g.edges[:4] == ((0, 1), (0, 3), (1, 2), (1, 4))
    assert (2, 0) in g.edges and (6, 0) in g.edges


def test_cycle():
    g = cycle_graph(4)
    assert g.edges == ((0, 1), (1, 2), (2, 3), (3, 0))


@pytest.mark.parametrize("n, m", [(1, 0), (2, 1), (10, 9), (10, 45), (30, 70)])
def test_random_graph_sizes(n, m):
    g = random_graph(n, m, seed=n + m)
    assert (g.n, g.m) == (n, m)


def test_random_graph_deterministic():
    assert random_graph(20, 40, seed=3).edges == random_graph(20, 40, seed=3).edges
    assert random_graph(20, 40, seed=3).edges != random_graph(20, 40, seed=4).edges


@pytest.mark.parametrize(
    "kind, params",
    [("torus", (2,)), ("cycle", (2,)), ("grid", (0, 3)), ("random", (5, 11)), ("random", (5, 3)),
     ("path", (0,)), ("star", (3,)), ("path", (1, 2))],
)
def test_invalid_params(kind, params):
    with pytest.raises(InvalidParams):
        generate(kind, *params)


def test_generate_dispatch():
    assert generate("torus", 3).m == 18
    assert generate("grid", 2, 3).n == 6
    assert generate("random", 6, 8, seed=1) == random_graph(6, 8, seed=1)
