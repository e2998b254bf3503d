"""
Sampling G(n, p) and testing for randomness
===========================================

Two samplers draw the same distribution. The randomness test compares the
size and degree statistics of an instance against the model.
"""

# %%
import numpy as np

import orientedhg as ohg
from orientedhg import analysis
from orientedhg import random_model as rm

g = ohg.sample(ohg.RandomModelParams(n=8, p=0.3, seed=7))
print(len(g), ohg.expected_edges(8, 0.3))
print(g.size_histogram())
print(ohg.hypergraph_size(g) == ohg.hypergraph_degree(g))

# %%
# The by-size sampler draws R_s ~ Binomial(u_s, p) and then unranks R_s distinct edges.
rng = np.random.default_rng(1)
counts = {"bernoulli": [], "by_size": []}
for strategy in counts:
    for _ in range(2000):
        left, _, _ = rm.draw_edges(7, 0.2, rng, strategy)
        counts[strategy].append(left.size)
print({k: np.mean(v) for k, v in counts.items()}, ohg.expected_edges(7, 0.2))

# %%
# Ranking is a bijection onto [0, u_s) for each size.
e = ohg.unrank_edge(6, 4, 17)
print(e, ohg.rank_edge(e))

# %%
# A genuine sample is usually consistent with the model.
report = analysis.fit_randomness(g)
print(report.summary())

# %%
# Removing every size-2 hyperedge from a complete hypergraph is caught by the size fit.
full = ohg.OrientedHypergraph.complete(6)
skewed = ohg.OrientedHypergraph.from_masks(
    6, [(a, b) for a, b in full.edge_masks() if (a | b).bit_count() != 2]
)
print(analysis.fit_randomness(skewed).verdict)

# %%
# Calibration: rejection rate over seeded replicates at nominal 1%.
rejected = sum(
    analysis.fit_randomness(ohg.sample(ohg.RandomModelParams(8, 0.3, s))).verdict
    == analysis.REJECTED
    for s in range(200)
)
print(rejected / 200)
