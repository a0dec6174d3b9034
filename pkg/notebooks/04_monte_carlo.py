"""Monte Carlo cross-checks with reproducible seeds.

Run with ``python notebooks/04_monte_carlo.py``.
"""

import math

import swqnet as sw

# chain simulation against the exact DP
for links in (1, 3, 6, 10):
    exact = sw.exact_chain_scp(links, 0.4)
    est = sw.simulate_chain_scp(links, 0.4, 200_000, seed=0)
    z = (est.estimate - exact) / math.sqrt(exact * (1 - exact) / est.trials)
    print(f"links={links:2d} exact={exact:.5f} sim={est.estimate:.5f} z={z:+.2f}")

# the same seed gives the same answer
a = sw.simulate_chain_scp(5, 0.45, 50_000, seed=7)
b = sw.simulate_chain_scp(5, 0.45, 50_000, seed=7)
print("reproducible:", a == b)

# clustering estimate from independent graphs
for p in (0.05, 0.3):
    est = sw.empirical_clustering(sw.NetworkParams(1000, p), 50_000, seed=0)
    print(f"p={p}: clustering {est:.5f} vs p^2 {p * p:.5f}")
