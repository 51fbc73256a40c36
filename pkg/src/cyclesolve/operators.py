"""Gradient, divergence, Laplacian, cycle functions and curl on a graph."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainMismatch, EdgeOutOfRange, NotAnEdge, RepeatedEdge
from .graph import Graph, edge_function, vertex_function

__all__ = [
    "Cycle",
    "gradient",
    "divergence",
    "laplacian_apply",
    "cycle_function",
    "curl",
    "check_compatibility",
]

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class Cycle:
    """A signed edge set with entries +1/-1, stored sparsely.

    ``edges[i]`` carries sign ``signs[i]``; every other edge is zero.
    """

    edges: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        edges = tuple(int(e) for e in self.edges)
        signs = tuple(int(s) for s in self.signs)
        if len(edges) != len(signs):
            raise ValueError("edges and signs differ in length")
        if len(set(edges)) != len(edges):
            dup = next(e for e in edges if edges.count(e) > 1)
            raise RepeatedEdge(f"edge {dup} appears more than once in cycle")
        if any(s not in (1, -1) for s in signs):
            raise ValueError("cycle signs must be +1 or -1")
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "signs", signs)

    @classmethod
    def from_entries(cls, entries: Iterable[tuple[int, int]]) -> "Cycle":
        entries = list(entries)
        return cls(tuple(e for e, _ in entries), tuple(s for _, s in entries))

    @property
    def norm_squared(self) -> int:
        return len(self.edges)

    def __len__(self):
        return len(self.edges)

    def entries(self) -> list[tuple[int, int]]:
        return list(zip(self.edges, self.signs))

    def to_dense(self, m: int) -> np.ndarray:
        out = np.zeros(m)
        if self.edges and max(self.edges) >= m:
            raise EdgeOutOfRange(f"cycle uses edge {max(self.edges)} but m={m}")
        out[list(self.edges)] = self.signs
        return out

    def dot(self, A) -> float:
        """Sparse inner product ``(A, C)``."""
        total = 0.0
        for e, s in zip(self.edges, self.signs):
            total += A[e] if s > 0 else -A[e]
        return float(total)

    def reversed(self) -> "Cycle":
        return Cycle(self.edges, tuple(-s for s in self.signs))


def gradient(g: Graph, u) -> np.ndarray:
    """Edge function ``u(head) - u(tail)``."""
    u = vertex_function(g, u)
    return u[g.heads] - u[g.tails]


def divergence(g: Graph, A) -> np.ndarray:
    """Inflow minus outflow at every vertex."""
    A = edge_function(g, A)
    out = np.zeros(g.n)
    np.add.at(out, g.heads, A)
    np.subtract.at(out, g.tails, A)
    return out


def laplacian_apply(g: Graph, u) -> np.ndarray:
    """Apply the graph Laplacian (degree minus symmetric adjacency) to ``u``."""
    u = vertex_function(g, u)
    diff = u[g.tails] - u[g.heads]
    out = np.zeros(g.n)
    np.add.at(out, g.tails, diff)
    np.subtract.at(out, g.heads, diff)
    return out


def cycle_function(g: Graph, walk: Sequence[int]) -> Cycle:
    """Signed cycle function of a closed walk ``(a_1, ..., a_k[, a_1])``.

    An edge traversed along its direction gets +1, against it -1.
    """
    walk = [int(v) for v in walk]
    if len(walk) > 1 and walk[0] == walk[-1]:
        walk = walk[:-1]
    if not walk:
        raise NotAnEdge("empty walk")
    entries = []
    used = set()
    k = len(walk)
    for i in range(k):
        a, b = walk[i], walk[(i + 1) % k]
        found = g.find_edge(a, b)
        if found is None:
            raise NotAnEdge(f"no edge joins {a} and {b}")
        e, sign = found
        if e in used:
            raise RepeatedEdge(f"edge {e} = {g.edges[e]} used twice in walk")
        used.add(e)
        entries.append((e, sign))
    return Cycle.from_entries(entries)


def curl(A, basis: Sequence[Cycle]) -> np.ndarray:
    """``(A, C_i)`` for every cycle in ``basis``."""
    A = np.asarray(A, dtype=np.float64)
    m = A.shape[0]
    out = np.empty(len(basis))
    for i, c in enumerate(basis):
        if c.edges and max(c.edges) >= m:
            raise DomainMismatch(f"cycle {i} references edge {max(c.edges)} but m={m}")
        out[i] = c.dot(A)
    return out


def check_compatibility(f, tol: float = DEFAULT_TOL) -> bool:
    """True iff ``|sum f| <= tol * max(1, sum |f|)``."""
    f = np.asarray(f, dtype=np.float64)
    total = math.fsum(f)
    scale = max(1.0, math.fsum(np.abs(f)))
    return abs(total) <= tol * scale
