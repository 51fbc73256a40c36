"""Solve graph Laplace equations by randomized tree-cycle updates."""

from .errors import *  # noqa: F401,F403
from .graph import Graph, build_graph, edge_function, inner_product, norm_squared, vertex_function
from .operators import (
    Cycle,
    check_compatibility,
    curl,
    cycle_function,
    divergence,
    gradient,
    laplacian_apply,
)
from .tree import (
    SpanningTree,
    TreeBasis,
    feasible_flow,
    induced_potential,
    spanning_tree,
    tree_basis,
    tree_cycle,
    tree_from_edges,
)
from .solver import (
    SolveResult,
    SolverConfig,
    cycle_update,
    energy_trajectory,
    extract_potentials,
    gap,
    gap_definition,
    gap_tree_residual,
    make_rng,
    sample_cycle,
    solve,
)

__version__ = "0.1.0"
