"""Immutable directed graph and the inner-product primitives.

Vertices are ``0..n-1`` and edges are indexed by their position in the
input list. Vertex and edge functions are plain float64 numpy arrays of
length ``n`` and ``m``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    Disconnected,
    DomainMismatch,
    LoopEdge,
    TwoCycleOrParallelEdge,
    VertexOutOfRange,
)

__all__ = [
    "Graph",
    "build_graph",
    "inner_product",
    "norm_squared",
    "vertex_function",
    "edge_function",
]


def _frozen(a):
    a = np.asarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Graph:
    """A connected directed graph with no loops, 2-cycles or parallel edges.

    Build instances through :func:`build_graph`, which validates the input.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    tails: np.ndarray = field(repr=False)
    heads: np.ndarray = field(repr=False)
    out_edges: tuple[tuple[int, ...], ...] = field(repr=False)
    in_edges: tuple[tuple[int, ...], ...] = field(repr=False)
    incident: tuple[tuple[int, ...], ...] = field(repr=False)
    _index: dict = field(repr=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.incident[v])

    def find_edge(self, a: int, b: int):
        """Return ``(edge_id, sign)`` joining ``a`` and ``b``, or ``None``.

        ``sign`` is +1 if ``(a, b)`` is the stored orientation, -1 if the
        edge is stored as ``(b, a)``.
        """
        e = self._index.get((a, b))
        if e is not None:
            return e, 1
        e = self._index.get((b, a))
        if e is not None:
            return e, -1
        return None

    def other_end(self, e: int, v: int) -> int:
        t, h = self.edges[e]
        return h if v == t else t

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))


def build_graph(n: int, edge_list: Iterable[Sequence[int]]) -> Graph:
    """Validate ``edge_list`` and return a :class:`Graph`.

    Raises the first problem found: :class:`VertexOutOfRange`,
    :class:`LoopEdge`, :class:`TwoCycleOrParallelEdge`, or
    :class:`Disconnected`.
    """
    n = int(n)
    if n < 1:
        raise VertexOutOfRange(f"graph needs at least one vertex, got n={n}")
    edges = []
    index = {}
    for e, pair in enumerate(edge_list):
        a, b = (int(x) for x in pair)
        for v in (a, b):
            if not 0 <= v < n:
                raise VertexOutOfRange(f"edge {e} = ({a}, {b}): vertex {v} not in [0, {n})")
        if a == b:
            raise LoopEdge(f"edge {e} = ({a}, {b}) is a self-loop")
        if (a, b) in index:
            raise TwoCycleOrParallelEdge(
                f"edge {e} = ({a}, {b}) duplicates edge {index[(a, b)]}"
            )
        if (b, a) in index:
            raise TwoCycleOrParallelEdge(
                f"edge {e} = ({a}, {b}) forms a 2-cycle with edge {index[(b, a)]} = ({b}, {a})"
            )
        index[(a, b)] = e
        edges.append((a, b))

    out_edges = [[] for _ in range(n)]
    in_edges = [[] for _ in range(n)]
    incident = [[] for _ in range(n)]
    for e, (a, b) in enumerate(edges):
        out_edges[a].append(e)
        in_edges[b].append(e)
        incident[a].append(e)
        incident[b].append(e)

    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for e in incident[v]:
            a, b = edges[e]
            w = b if a == v else a
            if not seen[w]:
                seen[w] = True
                queue.append(w)
    if not seen.all():
        missing = int(np.flatnonzero(~seen)[0])
        raise Disconnected(f"vertex {missing} is not reachable from vertex 0")

    tails = np.fromiter((a for a, _ in edges), dtype=np.int64, count=len(edges))
    heads = np.fromiter((b for _, b in edges), dtype=np.int64, count=len(edges))
    return Graph(
        n=n,
        edges=tuple(edges),
        tails=_frozen(tails),
        heads=_frozen(heads),
        out_edges=tuple(map(tuple, out_edges)),
        in_edges=tuple(map(tuple, in_edges)),
        incident=tuple(map(tuple, incident)),
        _index=index,
    )


def _as_function(values, size, what):
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1 or arr.shape[0] != size:
        raise DomainMismatch(f"{what} must have length {size}, got shape {arr.shape}")
    return arr


def vertex_function(g: Graph, values) -> np.ndarray:
    """Coerce ``values`` to a float array on the vertices of ``g``."""
    return _as_function(values, g.n, "vertex function")


def edge_function(g: Graph, values) -> np.ndarray:
    """Coerce ``values`` to a float array on the edges of ``g``."""
    return _as_function(values, g.m, "edge function")


def inner_product(f, g) -> float:
    """Sum of the products of corresponding entries."""
    f = np.asarray(f, dtype=np.float64)
    g = np.asarray(g, dtype=np.float64)
    if f.shape != g.shape or f.ndim != 1:
        raise DomainMismatch(f"domains differ: {f.shape} vs {g.shape}")
    return float(np.dot(f, g))


def norm_squared(f) -> float:
    return inner_product(f, f)
