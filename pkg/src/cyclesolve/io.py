"""Plain-text graph and vector files.

Graph file: first line ``n m``, then ``m`` lines ``tail head``. Vector
file: one real per line. Blank lines and ``#`` comments are skipped in
both.
"""

from __future__ import annotations

import numpy as np

from .errors import GraphError, ParseError
from .graph import Graph, build_graph

__all__ = ["read_graph", "write_graph", "read_vector", "write_vector", "format_float"]

def format_float(x: float) -> str:
    return repr(float(x))

def _content_lines(path):
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if line and not line.startswith("#"):
                yield lineno, line

def read_graph(path) -> Graph:
    lines = _content_lines(path)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise ParseError(path, None, "empty graph file") from None
    parts = header.split()
    try:
        n, m = (int(x) for x in parts)
    except ValueError:
        raise ParseError(path, lineno, f"expected 'n m', got {header!r}") from None
    edges = []
    last = lineno
    for lineno, line in lines:
        parts = line.split()
        try:
            a, b = (int(x) for x in parts)
        except ValueError:
            raise ParseError(path, lineno, f"expected 'tail head', got {line!r}") from None
        edges.append((a, b))
        last = lineno
    if len(edges) != m:
        raise ParseError(path, last, f"header declares {m} edges, found {len(edges)}")
    try:
        return build_graph(n, edges)
    except GraphError as exc:
        raise ParseError(path, None, str(exc)) from exc

def write_graph(g: Graph, path) -> None:
    with open(path, "w") as fh:
        fh.write(f"{g.n} {g.m}\n")
        for a, b in g.edges:
            fh.write(f"{a} {b}\n")

def read_vector(path, size: int | None = None) -> np.ndarray:
    values = []
    for lineno, line in _content_lines(path):
        try:
            values.append(float(line))
        except ValueError:
            raise ParseError(path, lineno, f"expected a real number, got {line!r}") from None
    if size is not None and len(values) != size:
        raise ParseError(path, None, f"expected {size} entries, found {len(values)}")
    return np.array(values, dtype=np.float64)

def write_vector(values, path) -> None:
    with open(path, "w") as fh:
        for x in values:
            fh.write(format_float(x) + "\n")
