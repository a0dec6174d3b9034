"""Shortest paths on a ring with a central hub.

Run with ``python notebooks/02_path_lengths.py``.
"""

import numpy as np

import swqnet as sw

params = sw.NetworkParams.from_mean_shortcuts(1000, 10)  # ten hub links on average
r = 50

dist = sw.path_dist_undirected(r, params.p)
print("P(ell | r=50), first ten:", np.round(dist.probs[:10], 4))
print("mean actual distance", dist.mean())

# sampled graphs agree with the closed form
emp = sw.empirical_path_dist(params, r, 20_000, seed=0)
print("TV distance to Monte Carlo", emp.tv_distance(dist))

# directed rings: the closed form misses mass at ell = r, which the tail repair restores
d = sw.path_dist_directed(2, 0.1)
print("raw", d.raw, "deficit", d.normalization_deficit, "repaired", d.probs)

# average network distance falls quickly once a few shortcuts appear
for p in (0.0, 0.01, 0.05, 0.2):
    print(p, sw.mean_network_distance(sw.NetworkParams(100, p, directed=True)))

print("clustering at p=0.1:", sw.clustering_coefficient(0.1))
