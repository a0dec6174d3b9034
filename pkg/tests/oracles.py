"""Independent reference computations used only by the tests."""

import itertools
from collections import deque
from fractions import Fraction
from math import comb

import numpy as np

BELL = {
    "phi+": np.array([1, 0, 0, 1]) / np.sqrt(2),
    "phi-": np.array([1, 0, 0, -1]) / np.sqrt(2),
    "psi+": np.array([0, 1, 1, 0]) / np.sqrt(2),
    "psi-": np.array([0, 1, -1, 0]) / np.sqrt(2),
}


def schmidt_pair(c):
    return np.array([np.sqrt(c), 0.0, 0.0, np.sqrt(1.0 - c)])


def bell_swap_statevector(lam, phi):
    """Project the middle qubits of (A R1)(R2 B) onto each Bell state.

    Returns ``{outcome: (probability, smaller Schmidt coefficient of AB)}``.
    """
    psi = np.kron(schmidt_pair(lam), schmidt_pair(phi)).reshape(2, 2, 2, 2)
    out = {}
    for name, bell in BELL.items():
        b = bell.reshape(2, 2)
        ab = np.einsum("arsb,rs->ab", psi, b.conj())
        prob = float(np.sum(np.abs(ab) ** 2))
        if prob < 1e-300:
            out[name] = (0.0, 0.0)
            continue
        sv = np.linalg.svd(ab / np.sqrt(prob), compute_uv=False)
        out[name] = (prob, float(min(sv) ** 2))
    return out


def scp_series_exact(links, phi, limit):
    """The chain series evaluated with exact binomials and rationals."""
    phi = Fraction(phi)
    x = phi * (1 - phi)
    total = sum(comb(2 * k, k) * x**k for k in range(limit + 1))
    return float(1 - (1 - 2 * phi) * total)


def _bfs_doubled(n, directed, hubs, a, b):
    """Shortest path in ring steps, with two ring hops per step and one per shortcut."""
    # split every ring edge in two so all edges have unit length
    adj = {}

    def add(u, v):
        adj.setdefault(u, []).append(v)

    for i in range(n):
        j = (i + 1) % n
        mid = ("m", i)
        add(("r", i), mid)
        add(mid, ("r", j))
        if not directed:
            add(("r", j), mid)
            add(mid, ("r", i))
    for h in hubs:
        add(("r", h), "hub")
        add("hub", ("r", h))
    seen = {("r", a): 0}
    queue = deque([("r", a)])
    while queue:
        u = queue.popleft()
        for v in adj.get(u, ()):
            if v not in seen:
                seen[v] = seen[u] + 1
                queue.append(v)
    return seen[("r", b)] / 2


def enumerate_path_dist(n, r, p, directed):
    """Exact P(actual distance = ell) by summing over all 2**n hub patterns."""
    probs = np.zeros(r)
    for pattern in itertools.product((0, 1), repeat=n):
        k = sum(pattern)
        w = p**k * (1 - p) ** (n - k)
        hubs = [i for i, bit in enumerate(pattern) if bit]
        ell = _bfs_doubled(n, directed, hubs, 0, r)
        assert ell == int(ell)
        probs[int(ell) - 1] += w
    return probs
