"""Deterministic graph generators: paths, cycles, grids, tori, random graphs."""

from __future__ import annotations

import heapq

import numpy as np

from .errors import InvalidParams
from .graph import Graph, build_graph

__all__ = ["path_graph", "cycle_graph", "grid_graph", "torus_graph", "random_graph", "generate"]


def path_graph(n: int) -> Graph:
    if n < 1:
        raise InvalidParams(f"path needs n >= 1, got {n}")
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidParams(f"cycle needs n >= 3, got {n}")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def grid_graph(rows: int, cols: int) -> Graph:
    """Rectangular mesh; vertex ``r * cols + c``, edges point right and down."""
    if rows < 1 or cols < 1:
        raise InvalidParams(f"grid needs rows, cols >= 1, got {rows}x{cols}")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return build_graph(rows * cols, edges)


def torus_graph(k: int, cols: int | None = None) -> Graph:
    """Periodic mesh with right and down edges; ``k x k`` unless ``cols`` is given."""
    rows, cols = k, k if cols is None else cols
    if rows < 3 or cols < 3:
        # a side of 2 would wrap onto an existing edge in the opposite direction
        raise InvalidParams(f"torus needs both sides >= 3, got {rows}x{cols}")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            edges.append((v, r * cols + (c + 1) % cols))
            edges.append((v, ((r + 1) % rows) * cols + c))
    return build_graph(rows * cols, edges)


def _uniform_tree_edges(n, rng):
    """Decode a uniformly random Pruefer sequence into ``n - 1`` tree edges."""
    if n == 1:
        return []
    if n == 2:
        return [(0, 1)]
    seq = rng.integers(0, n, size=n - 2).tolist()
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return edges


def random_graph(n: int, m: int, seed: int = 0) -> Graph:
    """Uniform random spanning tree plus ``m - n + 1`` random extra pairs.

    Every edge gets a random orientation; pairs already joined in either
    direction are rejected, so the result has no 2-cycles.
    """
    if n < 1 or m < n - 1 or m > n * (n - 1) // 2:
        raise InvalidParams(f"random graph needs n - 1 <= m <= n(n-1)/2, got n={n}, m={m}")
    rng = np.random.Generator(np.random.PCG64(seed))
    pairs = [tuple(sorted(e)) for e in _uniform_tree_edges(n, rng)]
    used = set(pairs)
    while len(pairs) < m:
        a, b = (int(x) for x in rng.choice(n, size=2, replace=False))
        key = (min(a, b), max(a, b))
        if key not in used:
            used.add(key)
            pairs.append(key)
    flips = rng.random(len(pairs)) < 0.5
    edges = [(b, a) if flip else (a, b) for (a, b), flip in zip(pairs, flips)]
    return build_graph(n, edges)


def generate(kind: str, *params: int, seed: int = 0) -> Graph:
    """Dispatch by name: ``path n``, ``cycle n``, ``grid r c``, ``torus k [c]``, ``random n m``."""
    try:
        if kind == "path":
            (n,) = params
            return path_graph(n)
        if kind == "cycle":
            (n,) = params
            return cycle_graph(n)
        if kind == "grid":
            r, c = params if len(params) == 2 else (params[0], params[0])
            return grid_graph(r, c)
        if kind == "torus":
            return torus_graph(*params)
        if kind == "random":
            n, m = params
            return random_graph(n, m, seed)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InvalidParams):
            raise
        raise InvalidParams(f"bad parameters for {kind}: {params}") from exc
    raise InvalidParams(f"unknown graph kind {kind!r}")
