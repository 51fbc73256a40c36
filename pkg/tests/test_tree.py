import numpy as np
import pytest

from cyclesolve import (
    build_graph,
    divergence,
    feasible_flow,
    gradient,
    induced_potential,
    spanning_tree,
    tree_basis,
    tree_cycle,
    tree_from_edges,
)
from cyclesolve.analysis import exact_rank, incidence_matrix
from cyclesolve.errors import EdgeInTree, IncompatibleRHS, InvalidParams
from cyclesolve.generators import path_graph, torus_graph
from cyclesolve.tree import STRATEGIES

from conftest import mean_zero, random_small_graph


def _is_spanning_tree(g, t):
    # independent union-find check: n - 1 edges, no cycle
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in t.tree_edges:
        a, b = (find(v) for v in g.edges[e])
        if a == b:
            return False
        parent[a] = b
    return len(t.tree_edges) == g.n - 1


def test_bfs_triangle(triangle):
    t = spanning_tree(triangle, "bfs", 0)
    assert [triangle.edges[e] for e in t.tree_edges] == [(0, 1), (0, 2)]
    assert [triangle.edges[e] for e in t.non_tree_edges] == [(1, 2)]


def test_dfs_triangle_follows_input_order(triangle):
    t = spanning_tree(triangle, "dfs", 0)
    assert [triangle.edges[e] for e in t.tree_edges] == [(0, 1), (1, 2)]


def test_tree_graph_has_no_non_tree_edges(path3):
    t = spanning_tree(path3)
    assert t.tree_edges == (0, 1)
    assert t.non_tree_edges == ()


@pytest.mark.parametrize("strategy", STRATEGIES)
def test_torus3_non_tree_count(strategy):
    g = torus_graph(3)
    assert (g.n, g.m) == (9, 18)
    t = spanning_tree(g, strategy)
    assert len(t.non_tree_edges) == 10
    assert _is_spanning_tree(g, t)


@pytest.mark.parametrize("seed", range(30))
@pytest.mark.parametrize("strategy", STRATEGIES)
def test_spanning_tree_invariants(seed, strategy):
    rng = np.random.default_rng(seed)
    g = random_small_graph(rng, n_max=15)
    root = int(rng.integers(g.n))
    t = spanning_tree(g, strategy, root)
    assert t.root == root
    assert _is_spanning_tree(g, t)
    assert t.depth[root] == 0
    for v in range(g.n):
        if v != root:
            assert t.depth[t.parent[v]] == t.depth[v] - 1
            assert set(g.edges[t.parent_edge[v]]) == {v, int(t.parent[v])}
    assert sorted(t.tree_edges + t.non_tree_edges) == list(range(g.m))


def test_low_stretch_heuristic_picks_center():
    # on a path the double-sweep center is the middle vertex
    g = path_graph(7)
    t = spanning_tree(g, "low_stretch_heuristic", root=0)
    assert t.tree_edges == tuple(range(6))
    from cyclesolve.tree import _double_sweep_center

    assert _double_sweep_center(g) == 3


def test_bad_strategy_and_root(triangle):
    with pytest.raises(InvalidParams):
        spanning_tree(triangle, "mst")
    with pytest.raises(InvalidParams):
        spanning_tree(triangle, "bfs", root=3)


def test_tree_from_edges_rejects_cycles(triangle, square):
    with pytest.raises(InvalidParams):
        tree_from_edges(triangle, [0])
    with pytest.raises(InvalidParams):
        # right edge count, but the triangle leaves vertex 3 unreached
        tree_from_edges(build_graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)]), [0, 1, 2])


def test_induced_potential_examples(triangle, path3):
    t = tree_from_edges(triangle, [0, 2])
    np.testing.assert_array_equal(induced_potential(triangle, t, [3, 3, 0]), [0, 3, 0])
    tp = spanning_tree(path3)
    np.testing.assert_array_equal(induced_potential(path3, tp, [3, 3]), [0, 3, 6])
    np.testing.assert_array_equal(induced_potential(path3, tp, [0, 0]), [0, 0, 0])


def test_induced_potential_base_vertex(path3):
    t = spanning_tree(path3)
    np.testing.assert_array_equal(induced_potential(path3, t, [3, 3], base=2), [-6, -3, 0])


def test_feasible_flow_examples(triangle, path3):
    t = tree_from_edges(triangle, [0, 2])
    A = feasible_flow(triangle, t, [-3, 0, 3])
    np.testing.assert_array_equal(A, [0, 0, 3])
    np.testing.assert_array_equal(divergence(triangle, A), [-3, 0, 3])
    A = feasible_flow(path3, spanning_tree(path3), [-3, 0, 3])
    np.testing.assert_array_equal(A, [3, 3])
    np.testing.assert_array_equal(feasible_flow(path3, spanning_tree(path3), [0, 0, 0]), [0, 0])


def test_feasible_flow_incompatible(triangle):
    with pytest.raises(IncompatibleRHS) as info:
        feasible_flow(triangle, spanning_tree(triangle), [1, 0, 0])
    assert info.value.total == 1.0


def _leaf_stripping_recursive(g, tree_edges, f):
    """Direct transcription of the recursive leaf-stripping construction."""
    A = np.zeros(g.m)
    edges = set(tree_edges)
    f = {v: float(x) for v, x in enumerate(f)}
    alive = set(range(g.n))
    while edges:
        deg = {v: 0 for v in alive}
        for e in edges:
            for v in g.edges[e]:
                deg[v] += 1
        leaf = min(v for v in alive if deg[v] == 1)
        e = next(e for e in edges if leaf in g.edges[e])
        a, b = g.edges[e]
        other = b if a == leaf else a
        A[e] = -f[leaf] if a == leaf else f[leaf]
        f[other] += f[leaf]
        edges.remove(e)
        alive.remove(leaf)
    return A


@pytest.mark.parametrize("seed", range(30))
def test_feasible_flow_matches_recursive_construction(seed):
    rng = np.random.default_rng(seed)
    g = random_small_graph(rng, n_max=14)
    t = spanning_tree(g, "dfs", int(rng.integers(g.n)))
    f = mean_zero(rng, g.n)
    A = feasible_flow(g, t, f)
    np.testing.assert_allclose(A, _leaf_stripping_recursive(g, t.tree_edges, f), atol=1e-12)
    assert np.max(np.abs(divergence(g, A) - f)) <= 1e-12 * (1 + np.abs(f).sum())
    assert np.all(A[list(t.non_tree_edges)] == 0)


@pytest.mark.parametrize("seed", range(30))
def test_induced_potential_reproduces_tree_values(seed):
    rng = np.random.default_rng(seed)
    g = random_small_graph(rng, n_max=20)
    t = spanning_tree(g, "bfs", int(rng.integers(g.n)))
    A = rng.standard_normal(g.m)
    u = induced_potential(g, t, A)
    assert u[t.root] == 0
    idx = list(t.tree_edges)
    np.testing.assert_allclose(gradient(g, u)[idx], A[idx], rtol=1e-12, atol=1e-12)


def test_tree_cycle_examples(triangle, square):
    t = tree_from_edges(triangle, [0, 2])
    c = tree_cycle(triangle, t, 1)
    assert c.entries() == [(1, 1), (2, -1), (0, 1)]
    np.testing.assert_array_equal(divergence(triangle, c.to_dense(3)), [0, 0, 0])
    ts = tree_from_edges(square, [0, 1, 2])
    cs = tree_cycle(square, ts, 3)
    assert cs.norm_squared == 4
    assert cs.entries()[0] == (3, 1)
    with pytest.raises(EdgeInTree):
        tree_cycle(triangle, t, 0)


@pytest.mark.parametrize("seed", range(30))
def test_tree_cycles_brute_force(seed):
    rng = np.random.default_rng(seed)
    g = random_small_graph(rng, n_max=12, dense=True)
    t = spanning_tree(g, STRATEGIES[seed % 3], int(rng.integers(g.n)))
    basis = tree_basis(g, t)
    tree_set = set(t.tree_edges)
    M = np.array([c.to_dense(g.m) for c in basis.cycles]).reshape(len(basis), g.m)
    for i, (c, e) in enumerate(zip(basis.cycles, t.non_tree_edges)):
        assert c.entries()[0] == (e, 1)
        assert set(c.edges) - {e} <= tree_set
        assert np.all(divergence(g, c.to_dense(g.m)) == 0)
        # only C_e touches e
        assert np.count_nonzero(M[:, e]) == 1 and M[i, e] == 1
    assert len(basis) == g.m - g.n + 1
    assert basis.tau == sum(c.norm_squared for c in basis.cycles)
    assert basis.tau >= 3 * len(basis)
    if g.m <= 20:
        assert exact_rank(incidence_matrix(basis.cycles, g.m)) == g.m - g.n + 1


def test_tree_basis_examples(triangle, path3):
    b = tree_basis(triangle, spanning_tree(triangle))
    assert (len(b), b.tau) == (1, 3)
    b = tree_basis(path3, spanning_tree(path3))
    assert (len(b), b.tau) == (0, 0)
    assert len(tree_basis(torus_graph(3), spanning_tree(torus_graph(3)))) == 10


def test_tau_invariant_under_edge_relabeling():
    rng = np.random.default_rng(7)
    g = random_small_graph(rng, n_max=12, dense=True)
    t = spanning_tree(g)
    tau = tree_basis(g, t).tau
    # rebuild with non-tree edges listed in reverse; same tree edge set
    nt = list(reversed(t.non_tree_edges))
    order = list(t.tree_edges) + nt
    g2 = build_graph(g.n, [g.edges[e] for e in order])
    t2 = tree_from_edges(g2, range(len(t.tree_edges)))
    assert tree_basis(g2, t2).tau == tau
