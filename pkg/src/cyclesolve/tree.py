"""Spanning trees, induced potentials, tree-supported flows and the
fundamental cycle basis."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .errors import DomainMismatch, EdgeInTree, IncompatibleRHS, InvalidParams
from .graph import Graph, edge_function, vertex_function
from .operators import Cycle, check_compatibility

__all__ = [
    "STRATEGIES",
    "SpanningTree",
    "TreeBasis",
    "spanning_tree",
    "tree_from_edges",
    "induced_potential",
    "feasible_flow",
    "tree_cycle",
    "tree_basis",
]

STRATEGIES = ("bfs", "dfs", "low_stretch_heuristic")


@dataclass(frozen=True, eq=False)
class SpanningTree:
    """Rooted spanning tree of the undirected support of a graph.

    ``parent[v]`` and ``parent_edge[v]`` are -1 at the root. ``order`` lists
    vertices root-first so that every parent precedes its children.
    """

    root: int
    parent: np.ndarray = field(repr=False)
    parent_edge: np.ndarray = field(repr=False)
    depth: np.ndarray = field(repr=False)
    order: tuple[int, ...] = field(repr=False)
    tree_edges: tuple[int, ...]
    non_tree_edges: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "_tree_set", frozenset(self.tree_edges))

    def is_tree_edge(self, e: int) -> bool:
        return e in self._tree_set

    @property
    def n(self) -> int:
        return len(self.parent)


@dataclass(frozen=True, eq=False)
class TreeBasis:
    """Tree cycle functions, one per non-tree edge, with sampling weights."""

    cycles: tuple[Cycle, ...]
    non_tree_edges: tuple[int, ...]
    tau: int
    cumulative_weights: np.ndarray = field(repr=False)

    def __len__(self):
        return len(self.cycles)


def _rooted(g: Graph, tree_edges: Iterable[int], root: int) -> SpanningTree:
    tree_edges = sorted(set(int(e) for e in tree_edges))
    if len(tree_edges) != g.n - 1:
        raise InvalidParams(f"a spanning tree needs {g.n - 1} edges, got {len(tree_edges)}")
    adj = [[] for _ in range(g.n)]
    for e in tree_edges:
        a, b = g.edges[e]
        adj[a].append(e)
        adj[b].append(e)
    parent = np.full(g.n, -1, dtype=np.int64)
    parent_edge = np.full(g.n, -1, dtype=np.int64)
    depth = np.full(g.n, -1, dtype=np.int64)
    depth[root] = 0
    order = [root]
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for e in adj[v]:
            w = g.other_end(e, v)
            if depth[w] < 0:
                depth[w] = depth[v] + 1
                parent[w] = v
                parent_edge[w] = e
                order.append(w)
                queue.append(w)
    if len(order) != g.n:
        raise InvalidParams("edge set does not span the graph (contains a cycle)")
    in_tree = set(tree_edges)
    for arr in (parent, parent_edge, depth):
        arr.setflags(write=False)
    return SpanningTree(
        root=root,
        parent=parent,
        parent_edge=parent_edge,
        depth=depth,
        order=tuple(order),
        tree_edges=tuple(tree_edges),
        non_tree_edges=tuple(e for e in range(g.m) if e not in in_tree),
    )


def tree_from_edges(g: Graph, tree_edges: Iterable[int], root: int = 0) -> SpanningTree:
    """Root an explicitly chosen set of ``n - 1`` tree edges at ``root``."""
    _check_root(g, root)
    return _rooted(g, tree_edges, root)


def _check_root(g, root):
    if not 0 <= root < g.n:
        raise InvalidParams(f"root {root} not in [0, {g.n})")


def _bfs(g: Graph, source: int):
    dist = np.full(g.n, -1, dtype=np.int64)
    dist[source] = 0
    via = []
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for e in g.incident[v]:
            w = g.other_end(e, v)
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                via.append(e)
                queue.append(w)
    return dist, via


def _dfs_edges(g: Graph, source: int):
    seen = np.zeros(g.n, dtype=bool)
    seen[source] = True
    via = []
    stack = [(source, iter(g.incident[source]))]
    while stack:
        v, it = stack[-1]
        for e in it:
            w = g.other_end(e, v)
            if not seen[w]:
                seen[w] = True
                via.append(e)
                stack.append((w, iter(g.incident[w])))
                break
        else:
            stack.pop()
    return via


def _double_sweep_center(g: Graph) -> int:
    d0, _ = _bfs(g, 0)
    a = int(np.argmax(d0))
    da, _ = _bfs(g, a)
    b = int(np.argmax(da))
    db, _ = _bfs(g, b)
    # argmin returns the lowest index on ties
    return int(np.argmin(np.maximum(da, db)))


def spanning_tree(g: Graph, strategy: str = "bfs", root: int = 0) -> SpanningTree:
    """Build a spanning tree of ``g`` rooted at ``root``.

    ``bfs`` and ``dfs`` explore from ``root`` visiting incident edges in
    edge-input order. ``low_stretch_heuristic`` grows a BFS tree from an
    approximate graph center (double-sweep eccentricity estimate) and then
    roots it at ``root``; it tends to give shorter tree cycles than a BFS
    from a peripheral vertex but carries no stretch guarantee.
    """
    _check_root(g, root)
    if strategy == "bfs":
        _, via = _bfs(g, root)
    elif strategy == "dfs":
        via = _dfs_edges(g, root)
    elif strategy == "low_stretch_heuristic":
        _, via = _bfs(g, _double_sweep_center(g))
    else:
        raise InvalidParams(f"unknown tree strategy {strategy!r}; expected one of {STRATEGIES}")
    return _rooted(g, via, root)


def induced_potential(g: Graph, t: SpanningTree, A, base: Optional[int] = None) -> np.ndarray:
    """Vertex function of signed path sums of ``A`` along tree paths.

    The value at ``base`` (default: the tree root) is zero. An edge counts
    positively when it points toward the vertex being reached.
    """
    A = edge_function(g, A)
    if t.n != g.n:
        raise DomainMismatch("tree and graph have different vertex counts")
    u = np.zeros(g.n)
    heads = g.heads
    for v in t.order[1:]:
        e = t.parent_edge[v]
        p = t.parent[v]
        u[v] = u[p] + A[e] if heads[e] == v else u[p] - A[e]
    if base is not None and base != t.root:
        u -= u[base]
    return u


def feasible_flow(g: Graph, t: SpanningTree, f, tol: float = 1e-9) -> np.ndarray:
    """Tree-supported edge function with divergence ``f``.

    Strips leaves deepest-first: each non-root vertex pushes its residual
    demand across its parent edge and hands it on to the parent.
    """
    f = vertex_function(g, f)
    if not check_compatibility(f, tol):
        raise IncompatibleRHS(float(np.sum(f)))
    residual = f.copy()
    A = np.zeros(g.m)
    tails = g.tails
    for v in reversed(t.order[1:]):
        e = t.parent_edge[v]
        r = residual[v]
        A[e] = -r if tails[e] == v else r
        residual[t.parent[v]] += r
    return A


def _path_to_lca(g: Graph, t: SpanningTree, x: int, y: int):
    """Tree edges on the paths x -> lca and y -> lca, each listed upward."""
    up_x, up_y = [], []
    depth, parent, parent_edge = t.depth, t.parent, t.parent_edge
    while depth[x] > depth[y]:
        up_x.append((x, int(parent_edge[x])))
        x = parent[x]
    while depth[y] > depth[x]:
        up_y.append((y, int(parent_edge[y])))
        y = parent[y]
    while x != y:
        up_x.append((x, int(parent_edge[x])))
        up_y.append((y, int(parent_edge[y])))
        x, y = parent[x], parent[y]
    return up_x, up_y


def tree_cycle(g: Graph, t: SpanningTree, e: int) -> Cycle:
    """Fundamental cycle of non-tree edge ``e``, signed +1 on ``e``.

    The cycle runs tail -> head along ``e`` and returns to the tail along
    the tree path.
    """
    e = int(e)
    if not 0 <= e < g.m:
        raise InvalidParams(f"edge {e} not in [0, {g.m})")
    if t.is_tree_edge(e):
        raise EdgeInTree(f"edge {e} = {g.edges[e]} belongs to the spanning tree")
    tail, head = g.edges[e]
    up_head, up_tail = _path_to_lca(g, t, head, tail)
    entries = [(e, 1)]
    tails, heads = g.tails, g.heads
    # head climbs to the lca: moving child -> parent
    for v, pe in up_head:
        entries.append((pe, 1 if tails[pe] == v else -1))
    # then descend from the lca to the tail: moving parent -> child
    for v, pe in reversed(up_tail):
        entries.append((pe, 1 if heads[pe] == v else -1))
    return Cycle.from_entries(entries)


def tree_basis(g: Graph, t: SpanningTree) -> TreeBasis:
    """All tree cycle functions, in non-tree-edge order, with weight tau."""
    cycles = tuple(tree_cycle(g, t, e) for e in t.non_tree_edges)
    weights = np.array([c.norm_squared for c in cycles], dtype=np.float64)
    cumulative = np.cumsum(weights)
    cumulative.setflags(write=False)
    return TreeBasis(
        cycles=cycles,
        non_tree_edges=t.non_tree_edges,
        tau=int(weights.sum()),
        cumulative_weights=cumulative,
    )
