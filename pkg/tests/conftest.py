import numpy as np
import pytest

from cyclesolve import build_graph
from cyclesolve.generators import random_graph

ACCEPTANCE_LINES = []


def report(number, passed, detail):
    line = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture
def triangle():
    return build_graph(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def square():
    return build_graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])


@pytest.fixture
def path3():
    return build_graph(3, [(0, 1), (1, 2)])


def random_small_graph(rng, n_max=12, dense=False):
    n = int(rng.integers(2, n_max + 1))
    top = n * (n - 1) // 2 if dense else min(n * (n - 1) // 2, 3 * n)
    m = int(rng.integers(n - 1, top + 1))
    return random_graph(n, m, seed=int(rng.integers(2**31)))


def mean_zero(rng, n):
    f = rng.standard_normal(n)
    return f - f.mean()


def dense_incidence(g):
    """Edge-by-vertex matrix with -1 at the tail and +1 at the head."""
    B = np.zeros((g.m, g.n))
    for e, (a, b) in enumerate(g.edges):
        B[e, a] = -1.0
        B[e, b] = 1.0
    return B
