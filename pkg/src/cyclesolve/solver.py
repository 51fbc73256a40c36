"""Energy minimization by randomized (or sweeping) tree-cycle updates.

A solve starts from the tree-supported flow with the requested divergence
and repeatedly projects out one tree cycle at a time. The duality gap,
computed from the same tree, certifies the remaining energy error and
drives the stopping rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import EmptyBasis, EmptyCycle, IncompatibleRHS, InvalidParams
from .graph import Graph, edge_function, inner_product, vertex_function
from .operators import Cycle, check_compatibility, gradient
from .tree import (
    STRATEGIES,
    SpanningTree,
    TreeBasis,
    feasible_flow,
    induced_potential,
    spanning_tree,
    tree_basis,
)

__all__ = [
    "RNG_ALGORITHM",
    "SolverConfig",
    "SolveResult",
    "cycle_update",
    "gap",
    "gap_definition",
    "gap_tree_residual",
    "sample_cycle",
    "make_rng",
    "solve",
    "extract_potentials",
    "energy_trajectory",
]

RNG_ALGORITHM = "numpy.random.Generator(PCG64)"
TINY_ABS = 1e-30
MODES = ("random", "sweep")


@dataclass(frozen=True)
class SolverConfig:
    tol: float = 1e-8
    max_iters: int = 1_000_000
    seed: int = 0
    # None means one check per p updates, p = number of tree cycles
    gap_check_every: Optional[int] = None
    mode: str = "random"
    tree_strategy: str = "bfs"
    root: int = 0

    def __post_init__(self):
        if not self.tol > 0:
            raise InvalidParams(f"tol must be positive, got {self.tol}")
        if self.max_iters < 0:
            raise InvalidParams(f"max_iters must be non-negative, got {self.max_iters}")
        if self.gap_check_every is not None and self.gap_check_every < 1:
            raise InvalidParams(f"gap_check_every must be >= 1, got {self.gap_check_every}")
        if self.mode not in MODES:
            raise InvalidParams(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.tree_strategy not in STRATEGIES:
            raise InvalidParams(f"tree_strategy must be one of {STRATEGIES}")


@dataclass
class SolveResult:
    A: np.ndarray
    u: np.ndarray
    iterations: int
    termination: str
    trace: list[tuple[int, float, float]]
    tau: int
    seed: int
    rng_algorithm: str = RNG_ALGORITHM
    tree: Optional[SpanningTree] = field(default=None, repr=False)
    basis: Optional[TreeBasis] = field(default=None, repr=False)

    @property
    def converged(self) -> bool:
        return self.termination == "converged"

    @property
    def energy(self) -> float:
        return self.trace[-1][1]

    @property
    def gap(self) -> float:
        return self.trace[-1][2]


def cycle_update(A, C: Cycle):
    """Minimize ``||A + alpha C||^2`` over ``alpha``.

    Returns ``(A_new, alpha, delta_energy)``; ``A`` is left untouched and
    only the entries on the cycle's support differ in ``A_new``.
    """
    if C.norm_squared == 0:
        raise EmptyCycle("cannot update along an empty cycle")
    A = np.asarray(A, dtype=np.float64)
    dot = C.dot(A)
    alpha = -dot / C.norm_squared
    A_new = A.copy()
    idx = np.fromiter(C.edges, dtype=np.int64, count=len(C.edges))
    A_new[idx] += alpha * np.asarray(C.signs, dtype=np.float64)
    return A_new, alpha, -dot * dot / C.norm_squared


def gap(g: Graph, t: SpanningTree, basis: TreeBasis, A, f=None) -> float:
    """Duality gap as the sum of squared tree-cycle residuals.

    ``f`` is accepted for symmetry with the other forms and is not used;
    ``A`` is assumed feasible for it.
    """
    A = edge_function(g, A)
    return float(sum(c.dot(A) ** 2 for c in basis.cycles))


def gap_definition(g: Graph, t: SpanningTree, A, f) -> float:
    """``||A||^2 - (2(u, f) - (grad u, grad u))`` with ``u`` induced from ``A``."""
    A = edge_function(g, A)
    f = vertex_function(g, f)
    u = induced_potential(g, t, A)
    du = gradient(g, u)
    return inner_product(A, A) - (2.0 * inner_product(u, f) - inner_product(du, du))


def gap_tree_residual(g: Graph, t: SpanningTree, A) -> float:
    """``||A - grad u||^2`` over the non-tree edges, ``u`` induced from ``A``."""
    A = edge_function(g, A)
    u = induced_potential(g, t, A)
    r = (A - gradient(g, u))[list(t.non_tree_edges)]
    return float(np.dot(r, r))


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def sample_cycle(basis: TreeBasis, rng: np.random.Generator) -> int:
    """Draw a cycle index with probability proportional to its length."""
    if len(basis) == 0:
        raise EmptyBasis("no cycles to sample from")
    x = rng.random() * basis.tau
    return int(np.searchsorted(basis.cumulative_weights, x, side="right"))


def _sample_many(basis: TreeBasis, rng: np.random.Generator, k: int) -> np.ndarray:
    x = rng.random(k) * basis.tau
    return np.searchsorted(basis.cumulative_weights, x, side="right")


class _Updater:
    """Hot loop over plain Python lists; numpy per-update overhead dominates
    for the short cycles seen here."""

    def __init__(self, A: np.ndarray, basis: TreeBasis):
        self.A = A.tolist()
        self.plus = []
        self.minus = []
        self.length = []
        for c in basis.cycles:
            self.plus.append(tuple(e for e, s in zip(c.edges, c.signs) if s > 0))
            self.minus.append(tuple(e for e, s in zip(c.edges, c.signs) if s < 0))
            self.length.append(float(c.norm_squared))

    def run(self, indices) -> float:
        """Apply updates for ``indices`` in order; return the summed decrement."""
        A = self.A
        get = A.__getitem__
        plus, minus, length = self.plus, self.minus, self.length
        total = 0.0
        for i in indices:
            p, q = plus[i], minus[i]
            dot = sum(map(get, p)) - sum(map(get, q))
            if dot == 0.0:
                continue
            alpha = -dot / length[i]
            for e in p:
                A[e] += alpha
            for e in q:
                A[e] -= alpha
            total -= dot * dot / length[i]
        return total

    def array(self) -> np.ndarray:
        return np.array(self.A)


def extract_potentials(g: Graph, t: SpanningTree, A) -> np.ndarray:
    """Induced potential of ``A``, shifted to mean zero."""
    u = induced_potential(g, t, A)
    return u - u.mean()


def solve(
    g: Graph,
    f,
    cfg: Optional[SolverConfig] = None,
    tree: Optional[SpanningTree] = None,
) -> SolveResult:
    """Solve the graph Laplace equation ``L u = f`` for a mean-zero ``u``.

    ``cfg.tol`` bounds the relative flow error: the run stops once
    ``gap <= tol**2 * max(energy(A_f), 1e-30)``, which certifies
    ``||A - A*|| <= tol * ||A_f||`` for the optimal flow ``A*`` and the
    initial tree flow ``A_f``. Otherwise it stops after ``cfg.max_iters``
    cycle updates.
    """
    cfg = cfg or SolverConfig()
    f = vertex_function(g, f)
    if not check_compatibility(f):
        raise IncompatibleRHS(math.fsum(f))
    t = tree if tree is not None else spanning_tree(g, cfg.tree_strategy, cfg.root)
    basis = tree_basis(g, t)
    A = feasible_flow(g, t, f)
    p = len(basis)
    check_every = cfg.gap_check_every or max(1, p)
    threshold = cfg.tol**2 * max(float(np.dot(A, A)), TINY_ABS)
    rng = make_rng(cfg.seed)

    updater = _Updater(A, basis)
    g0 = gap(g, t, basis, A)
    trace = [(0, float(np.dot(A, A)), g0)]
    it = 0
    converged = g0 <= threshold
    while not converged and it < cfg.max_iters:
        k = min(check_every, cfg.max_iters - it)
        if cfg.mode == "random":
            idx = _sample_many(basis, rng, k).tolist()
        else:
            idx = [(it + j) % p for j in range(k)]
        updater.run(idx)
        it += k
        A = updater.array()
        current = gap(g, t, basis, A)
        trace.append((it, float(np.dot(A, A)), current))
        converged = current <= threshold

    A = updater.array()
    return SolveResult(
        A=A,
        u=extract_potentials(g, t, A),
        iterations=it,
        termination="converged" if converged else "max_iters",
        trace=trace,
        tau=basis.tau,
        seed=cfg.seed,
        tree=t,
        basis=basis,
    )


def energy_trajectory(
    A0, basis: TreeBasis, n_updates: int, seed: int = 0, mode: str = "random"
) -> np.ndarray:
    """Energies ``xi(A_k)`` for ``k = 0..n_updates`` along one update run.

    Energies after the first are accumulated from exact per-update
    decrements, so the array costs O(total cycle length) to build.
    """
    if mode not in MODES:
        raise InvalidParams(f"mode must be one of {MODES}")
    A0 = np.asarray(A0, dtype=np.float64)
    out = np.empty(n_updates + 1)
    out[0] = float(np.dot(A0, A0))
    if n_updates == 0:
        return out
    if len(basis) == 0:
        out[1:] = out[0]
        return out
    if mode == "random":
        idx = _sample_many(basis, make_rng(seed), n_updates).tolist()
    else:
        idx = [j % len(basis) for j in range(n_updates)]
    updater = _Updater(A0, basis)
    energy = out[0]
    for k, i in enumerate(idx, start=1):
        energy += updater.run((i,))
        out[k] = energy
    return out
