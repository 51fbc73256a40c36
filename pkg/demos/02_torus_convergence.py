"""
Expected energy decay on a torus
================================

Averaged over many random runs, the distance to the optimal energy
shrinks at least as fast as (1 - 1/tau)^k, where tau is the total length
of the tree cycles. Here we measure it on a 6x6 torus.
"""

import numpy as np

from cyclesolve import energy_trajectory, feasible_flow, spanning_tree, tree_basis
from cyclesolve.analysis import optimal_flow_oracle
from cyclesolve.generators import torus_graph

g = torus_graph(6)
rng = np.random.default_rng(0)
f = rng.standard_normal(g.n)
f -= f.mean()

# %%
# Compare trees: tau depends on which spanning tree is used.
for strategy in ("bfs", "dfs", "low_stretch_heuristic"):
    t = spanning_tree(g, strategy)
    print(f"{strategy:>22}: tau = {tree_basis(g, t).tau}")

t = spanning_tree(g, "bfs")
basis = tree_basis(g, t)
A0 = feasible_flow(g, t, f)
A_star = optimal_flow_oracle(g, f)
xi_star = A_star @ A_star

# %%
# Average D_k = xi(A_k) - xi(A*) over 200 seeds and compare with the bound.
K = 5 * basis.tau
D = np.mean([energy_trajectory(A0, basis, K, seed=s) - xi_star for s in range(200)], axis=0)
bound = D[0] * (1 - 1 / basis.tau) ** np.arange(K + 1)
for k in np.linspace(0, K, 6, dtype=int):
    print(f"k={k:5d}  mean D_k={D[k]:.3e}  bound={bound[k]:.3e}  ratio={D[k] / bound[k]:.3f}")

# %%
# To plot (matplotlib is not a dependency of the package):
#
#   import matplotlib.pyplot as plt
#   plt.semilogy(D, label="mean D_k"); plt.semilogy(bound, "--", label="(1-1/tau)^k")
#   plt.legend(); plt.show()
