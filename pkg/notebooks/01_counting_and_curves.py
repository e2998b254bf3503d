"""
Counting oriented hyperedges and expected growth
================================================

Exact counts for the complete oriented hypergraph, the expected number of
hyperedges in G(n, p) along the family p = n^alpha / beta^n, and the two
extremum problems.
"""

# %%
# Exact counts are Python integers, so any n works.
import math

import numpy as np

import orientedhg as ohg
from orientedhg import random_model as rm

for n in range(2, 9):
    print(n, ohg.total_edges(n), ohg.impossible_pairs(n), ohg.per_vertex_total(n))

# %%
# Size classes for n = 6: a hyperedge of size s splits its s vertices into two sides.
report = ohg.full_report(6, blocks=True)
print(report.to_csv())

# %%
# Expected hyperedge counts along p = n^alpha / 3^n grow like n^alpha.
n = np.unique(np.round(np.geomspace(1e3, 1e5, 25)).astype(int))
for alpha in (-1, 0, 1, 2):
    curve = ohg.expectation_curve("total_edges", n, ohg.ProbabilityFamily(alpha, 3))
    slope = np.polyfit(np.log(curve.n), curve.log_values, 1)[0]
    print(f"alpha={alpha:+d}  fitted exponent {slope:.4f}")

# %%
# With beta = 1 the growth is exponential with rate ln 3.
curve = ohg.expectation_curve("total_edges", n, ohg.ProbabilityFamily(0, 1))
print(np.polyfit(curve.n, curve.log_values, 1)[0], math.log(3))

# %%
# The ratio of expected hyperedges to expected vertex degree tends to 3/2.
for k in (5, 10, 20, 50):
    print(k, rm.ratio_R_over_D(k), rm.simple_graph_ratio(k))

# %%
# The vertex count that maximises E[R_s], and the most populated size class.
for s in (50, 100, 150, 200):
    result = ohg.solve_n_max(s, 2.0)
    print(s, result.integer_value, f"{result.value:.4f}", f"{result.residual:.1e}")
print(ohg.solve_s_max(100).to_dict())
