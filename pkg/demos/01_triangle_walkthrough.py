"""
Solving L u = f on a triangle, one step at a time
=================================================

The smallest graph with a cycle is enough to see every moving part: a
tree-supported flow with the right divergence, one cycle update, the
duality gap dropping to zero, and potentials read off the tree.
"""

import numpy as np

from cyclesolve import (
    build_graph,
    cycle_update,
    divergence,
    feasible_flow,
    gap,
    gap_definition,
    extract_potentials,
    tree_basis,
    tree_from_edges,
)

# %%
# Three vertices, three directed edges. f sums to zero, as it must for
# L u = f to have a solution.
g = build_graph(3, [(0, 1), (1, 2), (0, 2)])
f = np.array([-3.0, 0.0, 3.0])

# %%
# Use the path 0 -> 1 -> 2 as the spanning tree. Edge (0, 2) is the only
# non-tree edge, so the cycle space is one-dimensional.
t = tree_from_edges(g, [0, 1])
basis = tree_basis(g, t)
print("tree cycle:", basis.cycles[0].entries(), "tau =", basis.tau)

# %%
# The tree flow pushes all the demand along the path.
A = feasible_flow(g, t, f)
print("A_f =", A, " divergence =", divergence(g, A))
print("energy =", A @ A, " gap =", gap(g, t, basis, A), "=", gap_definition(g, t, A, f))

# %%
# One cycle update removes the whole circulation error.
A, alpha, delta = cycle_update(A, basis.cycles[0])
print(f"alpha = {alpha:+g}, energy change = {delta:g}")
print("A =", A, " energy =", A @ A, " gap =", gap(g, t, basis, A))

# %%
# A is now a gradient; its tree potential, centred, solves L u = f.
print("u =", extract_potentials(g, t, A))
