"""Averaged SCP over the path-length distribution, and the shortcut budget
needed to reach a target.

Run with ``python notebooks/03_thresholds.py``.
"""

import numpy as np

import swqnet as sw

phi, n = 0.45, 1000
print("avg SCP at r=20, m=50:", sw.avg_scp(20, phi, 50, n))

grid = sw.scp_heatmap(80, n, np.linspace(0.3, 0.5, 5), np.array([0.0, 25, 50, 100, 200]))
print("phi x m heatmap at r=80")
print(np.round(grid.values, 3))

# below threshold_distance the ring alone suffices
for target in (2 / 3, 3 / 4):
    r0 = sw.threshold_distance(phi, target, n)
    m_far = sw.threshold_shortcuts(400, phi, n, target, 300)
    print(f"target {target:.3f}: ring-only up to r={r0}, far pairs need m={m_far}")

# the boundary of the feasible region flattens once shortcuts dominate
rs, ms = np.arange(1, 501), np.arange(0, 301.0)
boundary = sw.threshold_boundary(sw.threshold_region(phi, 2 / 3, n, rs, ms), ms)
print("min m at r = 10, 20, 40, 100, 500:", boundary[[9, 19, 39, 99, 499]])
