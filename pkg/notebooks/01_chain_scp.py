"""Singlet conversion along a chain of identical repeater links.

Run with ``python notebooks/01_chain_scp.py``.
"""

import numpy as np

import swqnet as sw

# one swap of two links with Schmidt coefficient phi either succeeds outright
# or leaves a weaker state that is then distilled
phi = 0.4
out = sw.swap_identical(phi)
print("swap success", out.success_prob, "residual coeff", out.residual_coeff)
print("composed SCP", out.success_prob + out.residual_prob * sw.distill_prob(out.residual_coeff))
print("2 * phi     ", 2 * phi)

# the two series conventions differ by one repeater
links = np.arange(1, 11)
for conv in sw.ChainConvention:
    vals = [sw.scp_chain(k, phi, conv) for k in links]
    print(conv.value.ljust(10), np.round(vals, 4))

# the exact outcome-tree DP tracks the calibrated convention
exact = [sw.exact_chain_scp(k, phi) for k in links]
print("exact DP  ", np.round(exact, 4))

# long chains fall off exponentially, well under the (4 phi (1-phi))^(L/2) envelope
long = np.arange(20, 201, 20)
ratio = [sw.scp_chain(k, phi) / sw.scp_bound(k, phi) for k in long]
print("SCP / envelope", np.round(ratio, 3))
