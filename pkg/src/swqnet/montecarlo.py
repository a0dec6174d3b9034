"""Monte Carlo and exact-enumeration checks for the closed-form results.

Random streams are derived from ``(seed, *key)`` through
:class:`numpy.random.SeedSequence`, one stream per block of
``BLOCK_SIZE`` trials.  A run is therefore fixed by its seed and trial count
alone, whatever order the blocks are evaluated in.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra

from ._prob import DomainError, check_phi, check_positive_int
from .pathdist import NetworkParams

__all__ = [
    "BLOCK_SIZE",
    "ChainEstimate",
    "EmpiricalDistribution",
    "HubRingGraph",
    "SeededRun",
    "UnreachableError",
    "chain_outcome_distribution",
    "derive_rng",
    "empirical_clustering",
    "empirical_mean_network_distance",
    "empirical_path_dist",
    "exact_chain_scp",
    "general_shortest_path_len",
    "sample_graph",
    "shortest_path_len",
    "simulate_chain_scp",
    "swap_branches",
]

BLOCK_SIZE = 4096
MAX_EXACT_LINKS = 24
# residual coefficients closer than this are merged in the exact DP
DP_LATTICE = 1e-12

_SEED_LIMIT = 2**64


class UnreachableError(RuntimeError):
    """No path joins the two requested nodes."""


def _check_seed(seed):
    seed = int(seed)
    if not 0 <= seed < _SEED_LIMIT:
        raise DomainError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def derive_rng(seed, *key):
    """Independent generator for the stream addressed by ``(seed, *key)``."""
    ss = np.random.SeedSequence(_check_seed(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.PCG64(ss))


def _blocks(trials, seed, *key):
    for i, start in enumerate(range(0, trials, BLOCK_SIZE)):
        yield min(BLOCK_SIZE, trials - start), derive_rng(seed, *key, i)


@dataclass(frozen=True)
class SeededRun:
    seed: int
    trials: int
    params: NetworkParams

    def __post_init__(self):
        object.__setattr__(self, "seed", _check_seed(self.seed))
        object.__setattr__(self, "trials", check_positive_int(self.trials, "trials"))


@dataclass
class HubRingGraph:
    """One sampled network: ring ``0..n-1`` plus hub node ``n``.

    In doubled units a ring edge weighs 2 and a hub shortcut 1.  On a
    directed ring the edges run ``i -> i + 1``; shortcuts are always two-way.
    """

    n: int
    directed: bool
    hub_links: np.ndarray
    seed: int = None

    def ring_steps(self, a, b):
        d = (b - a) % self.n
        return d if self.directed else min(d, self.n - d)

    def doubled_weight_matrix(self):
        n = self.n
        src = np.arange(n)
        nxt = (src + 1) % n
        rows = [src]
        cols = [nxt]
        weights = [np.full(n, 2)]
        if not self.directed:
            rows.append(nxt)
            cols.append(src)
            weights.append(np.full(n, 2))
        linked = np.flatnonzero(self.hub_links)
        hub = np.full(linked.size, n)
        rows += [linked, hub]
        cols += [hub, linked]
        weights += [np.ones(linked.size, int), np.ones(linked.size, int)]
        return csr_matrix(
            (np.concatenate(weights), (np.concatenate(rows), np.concatenate(cols))),
            shape=(n + 1, n + 1),
        )


def sample_graph(params, seed):
    """Draw the hub links of one graph i.i.d. Bernoulli(p) from ``seed``."""
    rng = derive_rng(seed, 0)
    hub = rng.random(params.n) < params.p
    return HubRingGraph(n=params.n, directed=params.directed, hub_links=hub, seed=seed)


def _nearest_hub(hub, start, limit, step):
    """Ring steps from ``start`` to the closest hub-linked node, or None.

    ``step`` is +1 or -1 for a one-way scan, 0 for both directions.
    """
    n = len(hub)
    for k in range(limit):
        if step >= 0 and hub[(start + k) % n]:
            return k
        if step <= 0 and hub[(start - k) % n]:
            return k
    return None


def shortest_path_len(g, a, b):
    """Exact shortest path between ring nodes ``a`` and ``b`` in ring steps.

    Compares the ring route with the best single detour through the hub,
    looking no further than the ring distance from either endpoint.
    """
    if a == b:
        raise DomainError("endpoints must differ")
    r = g.ring_steps(a, b)
    if g.directed:
        da = _nearest_hub(g.hub_links, a, r, +1)
        db = _nearest_hub(g.hub_links, b, r, -1)
    else:
        da = _nearest_hub(g.hub_links, a, r, 0)
        db = _nearest_hub(g.hub_links, b, r, 0)
    if da is None or db is None:
        return r
    return min(r, da + db + 1)


def general_shortest_path_len(g, a, b):
    """Dijkstra on the doubled-weight graph, halved back to ring steps."""
    dist = dijkstra(g.doubled_weight_matrix(), directed=True, indices=a)[b]
    if not np.isfinite(dist):
        raise UnreachableError(f"node {b} unreachable from {a}")
    doubled = int(round(dist))
    if doubled % 2:
        raise AssertionError(f"odd doubled length {doubled}")
    return doubled // 2


def _scan_offsets(r, directed, backward=False):
    k = np.arange(r)
    if directed:
        return (-k if backward else k), k
    offs = np.empty(2 * r - 1, dtype=int)
    offs[0] = 0
    offs[1::2] = k[1:]
    offs[2::2] = -k[1:]
    return offs, np.abs(offs)


def _batch_nearest(hub, start, r, directed, backward=False):
    offs, dist = _scan_offsets(r, directed, backward)
    cols = hub[:, (start + offs) % hub.shape[1]]
    found = cols.any(axis=1)
    return np.where(found, dist[cols.argmax(axis=1)], r)


def _batch_lengths(hub, a, r, directed):
    n = hub.shape[1]
    b = (a + r) % n
    da = _batch_nearest(hub, a, r, directed)
    db = _batch_nearest(hub, b, r, directed, backward=True)
    return np.minimum(r, da + db + 1)


@dataclass
class EmpiricalDistribution:
    """Histogram of sampled actual distances; ``counts[ell - 1]`` for ell = 1..r."""

    r: int
    counts: np.ndarray
    trials: int
    seed: int = None

    @property
    def frequencies(self):
        return self.counts / self.trials

    def mean(self):
        return float(np.arange(1, self.r + 1) @ self.frequencies)

    def tv_distance(self, dist):
        return dist.tv_distance(self.frequencies)


def empirical_path_dist(params, r, trials, seed, a=0):
    """Sample ``trials`` graphs and histogram the distance from ``a`` to ``a + r``."""
    r = check_positive_int(r, "r")
    trials = check_positive_int(trials, "trials")
    if r > params.max_distance:
        raise DomainError(f"r={r} exceeds the largest ring distance {params.max_distance}")
    counts = np.zeros(r, dtype=np.int64)
    for size, rng in _blocks(trials, seed, 1):
        hub = rng.random((size, params.n)) < params.p
        lengths = _batch_lengths(hub, a, r, params.directed)
        counts += np.bincount(lengths - 1, minlength=r)
    return EmpiricalDistribution(r=r, counts=counts, trials=trials, seed=seed)


def empirical_mean_network_distance(params, trials_per_distance, seed):
    """Monte Carlo estimate of the ring-averaged mean actual distance.

    Hub links are exchangeable, so every regular distance is sampled from
    node 0 without loss of generality.
    """
    means = []
    for r in range(1, params.max_distance + 1):
        total = 0
        for size, rng in _blocks(trials_per_distance, seed, 2, r):
            hub = rng.random((size, params.n)) < params.p
            total += int(_batch_lengths(hub, 0, r, params.directed).sum())
        means.append(total / trials_per_distance)
    return float(np.mean(means))


def empirical_clustering(params, trials, seed):
    """Fraction of sampled nodes whose two ring neighbours are both hub-linked.

    Each trial draws a fresh graph and one uniformly chosen node in it.
    """
    trials = check_positive_int(trials, "trials")
    n = params.n
    hits = 0
    for size, rng in _blocks(trials, seed, 3):
        hub = rng.random((size, n)) < params.p
        node = rng.integers(0, n, size)
        rows = np.arange(size)
        hits += int(np.count_nonzero(hub[rows, (node - 1) % n] & hub[rows, (node + 1) % n]))
    return hits / trials


def swap_branches(lam, phi):
    """Bell measurement joining a ``lam`` pair to a fresh ``phi`` pair.

    Returns ``((q1, c1), (q2, c2))``: the Phi-type outcomes occur with
    probability ``q1 = lam phi + (1-lam)(1-phi)`` and the Psi-type ones with
    ``q2 = 1 - q1``; ``c1``, ``c2`` are the smaller Schmidt coefficients left
    on the outer pair.  Works elementwise on arrays.
    """
    lam = np.asarray(lam, dtype=float)
    q1 = lam * phi + (1.0 - lam) * (1.0 - phi)
    q2 = lam * (1.0 - phi) + (1.0 - lam) * phi
    with np.errstate(invalid="ignore", divide="ignore"):
        c1 = np.where(q1 > 0, np.minimum(lam * phi, (1.0 - lam) * (1.0 - phi)) / q1, 0.0)
        c2 = np.where(q2 > 0, np.minimum(lam * (1.0 - phi), (1.0 - lam) * phi) / q2, 0.0)
    if lam.ndim == 0:
        return (float(q1), float(c1)), (float(q2), float(c2))
    return (q1, c1), (q2, c2)


@dataclass
class ChainEstimate:
    estimate: float
    stderr: float
    successes: int
    trials: int
    seed: int = None

    def within(self, value, sigmas=3.0):
        """Whether ``value`` lies within ``sigmas`` binomial standard errors.

        The error uses the reference value, so a degenerate estimate of 0
        or 1 still gets a usable band.
        """
        sd = math.sqrt(max(value * (1.0 - value), 0.0) / self.trials)
        return abs(self.estimate - value) <= sigmas * sd + 1e-15


def simulate_chain_scp(links, phi, trials, seed):
    """Sample the sequential swap-then-distill protocol along a chain.

    The chain is built left to right: each repeater joins the running pair
    to the next fresh ``phi`` pair, choosing a Bell-outcome branch at
    random.  The surviving pair is distilled once at the end with success
    probability ``min(1, 2 lam)``.
    """
    links = check_positive_int(links, "links")
    phi = check_phi(phi)
    trials = check_positive_int(trials, "trials")
    successes = 0
    for size, rng in _blocks(trials, seed, 4, links):
        lam = np.full(size, phi)
        for _ in range(links - 1):
            (q1, c1), (_, c2) = swap_branches(lam, phi)
            lam = np.where(rng.random(size) < q1, c1, c2)
        successes += int(np.count_nonzero(rng.random(size) < np.minimum(1.0, 2.0 * lam)))
    est = successes / trials
    return ChainEstimate(
        estimate=est,
        stderr=math.sqrt(est * (1.0 - est) / trials),
        successes=successes,
        trials=trials,
        seed=seed,
    )


@dataclass
class OutcomeDistribution:
    """Law of the final Schmidt coefficient after all swaps of a chain."""

    coeffs: np.ndarray
    probs: np.ndarray
    merge_error: float = 0.0


def chain_outcome_distribution(links, phi):
    """Enumerate the swap outcome tree, merging coefficients on a fine lattice.

    ``merge_error`` accumulates probability-weighted shifts caused by
    merging nearly equal coefficients.
    """
    links = check_positive_int(links, "links")
    phi = check_phi(phi)
    if links > MAX_EXACT_LINKS:
        raise DomainError(f"exact enumeration is capped at {MAX_EXACT_LINKS} links")
    states = {round(phi / DP_LATTICE): [phi, 1.0]}
    merge_error = 0.0
    for _ in range(links - 1):
        nxt = {}
        for lam, w in states.values():
            for q, c in swap_branches(lam, phi):
                if q <= 0.0:
                    continue
                key = round(c / DP_LATTICE)
                slot = nxt.get(key)
                if slot is None:
                    nxt[key] = [c, w * q]
                else:
                    merge_error += w * q * abs(slot[0] - c)
                    slot[1] += w * q
        states = nxt
    coeffs = np.array([s[0] for s in states.values()])
    probs = np.array([s[1] for s in states.values()])
    order = np.argsort(coeffs)
    return OutcomeDistribution(coeffs=coeffs[order], probs=probs[order], merge_error=merge_error)


def exact_chain_scp(links, phi):
    """Exact success probability of the sequential swap-then-distill protocol."""
    dist = chain_outcome_distribution(links, phi)
    # first-order: treats the value of a coefficient downstream as 2-Lipschitz
    if 2.0 * dist.merge_error >= 1e-9:
        raise ArithmeticError(f"lattice merging error {dist.merge_error:.3g} too large")
    return float(dist.probs @ np.minimum(1.0, 2.0 * dist.coeffs))
