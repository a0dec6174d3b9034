"""Shortest-path statistics of a ring whose nodes link to one central hub.

Every ring node is joined to the hub independently with probability ``p``.
A shortcut counts as half a ring step, so a detour through the hub costs
exactly one step and every actual distance is an integer.
"""

from dataclasses import dataclass, field

import numpy as np

from ._prob import DomainError, check_positive_int, check_prob

__all__ = [
    "NetworkParams",
    "PathLengthDistribution",
    "clustering_coefficient",
    "mean_actual_distance",
    "mean_network_distance",
    "path_dist",
    "path_dist_directed",
    "path_dist_undirected",
    "undirected_prob_matrix",
]

REPAIR_POLICIES = ("tail", "rescale")


@dataclass(frozen=True)
class NetworkParams:
    """Ring size ``n``, hub-link probability ``p`` and ring orientation."""

    n: int
    p: float
    directed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "n", check_positive_int(self.n, "n", minimum=3))
        object.__setattr__(self, "p", check_prob(self.p))
        object.__setattr__(self, "directed", bool(self.directed))

    @classmethod
    def from_mean_shortcuts(cls, n, m, directed=False):
        n = check_positive_int(n, "n", minimum=3)
        if m < 0:
            raise DomainError(f"mean shortcut count must be >= 0, got {m}")
        return cls(n=n, p=min(1.0, m / n), directed=directed)

    @property
    def m(self):
        """Mean number of hub links, ``n * p``."""
        return self.n * self.p

    @property
    def max_distance(self):
        """Largest regular distance realised between two ring nodes."""
        return self.n - 1 if self.directed else self.n // 2


@dataclass
class PathLengthDistribution:
    """Probability of each actual distance 1..r given regular distance r.

    ``raw`` keeps the closed-form masses before repair and
    ``normalization_deficit`` is ``1 - raw.sum()``.
    """

    r: int
    probs: np.ndarray
    normalization_deficit: float = 0.0
    raw: np.ndarray = field(default=None, repr=False)

    @property
    def lengths(self):
        return np.arange(1, self.r + 1)

    def __getitem__(self, ell):
        if not 1 <= ell <= self.r:
            return 0.0
        return float(self.probs[ell - 1])

    def mean(self):
        return float(self.lengths @ self.probs)

    def cdf(self):
        return np.cumsum(self.probs)

    def tv_distance(self, other):
        """Total variation distance to another distribution or frequency vector."""
        q = np.asarray(getattr(other, "probs", other), dtype=float)
        size = max(len(q), self.r)
        a = np.zeros(size)
        b = np.zeros(size)
        a[: self.r] = self.probs
        b[: len(q)] = q
        return 0.5 * float(np.abs(a - b).sum())


def _point_mass(r):
    probs = np.zeros(r)
    probs[-1] = 1.0
    return PathLengthDistribution(r=r, probs=probs, raw=probs.copy())


def _complement_tail(interior, r):
    """Close a distribution by putting the missing mass on ell = r.

    When the interior already exceeds 1 the tail is set to zero and the
    interior rescaled.
    """
    probs = np.zeros(r)
    probs[:-1] = interior
    head = float(interior.sum())
    if head > 1.0:
        probs[:-1] /= head
    else:
        probs[-1] = 1.0 - head
    return probs


def path_dist_directed(r, p, repair="tail"):
    """Actual-distance distribution on the ring with one-way links.

    The closed forms ``ell p^2 (1-p)^(ell-1)`` for ``ell < r`` and
    ``(1-p)^(r+1)`` for ``ell = r`` do not sum to one.  With
    ``repair="tail"`` (default) the tail is replaced by the complement of the
    interior mass; ``repair="rescale"`` instead divides every raw mass by the
    raw total.  The raw masses and their deficit are kept on the result.
    """
    r = check_positive_int(r, "r")
    p = check_prob(p)
    if repair not in REPAIR_POLICIES:
        raise DomainError(f"unknown repair policy {repair!r}")
    if r == 1:
        return _point_mass(1)
    ell = np.arange(1, r)
    raw = np.empty(r)
    # numpy gives 0.0 ** 0 == 1.0, which is the convention needed at p = 1
    raw[:-1] = ell * p * p * (1.0 - p) ** (ell - 1)
    raw[-1] = (1.0 - p) ** (r + 1)
    deficit = 1.0 - float(raw.sum())
    if repair == "tail":
        probs = _complement_tail(raw[:-1], r)
    else:
        probs = raw / raw.sum()
    return PathLengthDistribution(r=r, probs=probs, normalization_deficit=deficit, raw=raw)


def _undirected_interior(r, p):
    """Closed-form masses for ell = 1..r-1; ``p`` may be an array (one row each)."""
    p = np.asarray(p, dtype=float)[..., None]
    ell = np.arange(1, r)
    # ell = 1 is overwritten below; clip its exponent so p = 1 stays finite
    decay = (1.0 - p) ** np.maximum(2 * ell - 4, 0)
    interior = p * p * decay * (2.0 - p) * (2 * ell - p * ell - 2)
    interior[..., 0] = (p * p)[..., 0]
    return interior


def path_dist_undirected(r, p):
    """Actual-distance distribution on the ring with two-way links.

    ``P(1) = p^2``, ``P(ell) = p^2 (1-p)^(2 ell - 4) (2-p) (2 ell - p ell - 2)``
    for ``1 < ell < r`` and ``P(r)`` takes the remaining mass.  If the
    interior ever summed past one the tail would be clamped to zero, the
    interior renormalised and the overflow stored as a negative
    ``normalization_deficit``.
    """
    r = check_positive_int(r, "r")
    p = check_prob(p)
    if r == 1:
        return _point_mass(1)
    interior = _undirected_interior(r, p)
    head = float(interior.sum())
    raw = np.empty(r)
    raw[:-1] = interior
    raw[-1] = max(0.0, 1.0 - head)
    probs = _complement_tail(interior, r)
    return PathLengthDistribution(
        r=r, probs=probs, normalization_deficit=1.0 - float(raw.sum()), raw=raw
    )


def undirected_prob_matrix(r, ps):
    """Repaired undirected distributions stacked row-wise, one per ``p`` in ``ps``.

    Equivalent to ``path_dist_undirected(r, p).probs`` for each ``p`` but
    evaluated in one pass.
    """
    r = check_positive_int(r, "r")
    ps = np.atleast_1d(np.asarray(ps, dtype=float))
    if np.any((ps < 0) | (ps > 1)):
        raise DomainError("every p must lie in [0, 1]")
    out = np.zeros((ps.size, r))
    if r == 1:
        out[:, 0] = 1.0
        return out
    interior = _undirected_interior(r, ps)
    head = interior.sum(axis=1)
    over = head > 1.0
    out[:, :-1] = interior
    out[over, :-1] /= head[over, None]
    out[~over, -1] = 1.0 - head[~over]
    return out


def path_dist(r, p, directed=False):
    if directed:
        return path_dist_directed(r, p)
    return path_dist_undirected(r, p)


def mean_actual_distance(r, p, directed=False):
    """Expected shortest-path length between nodes at regular distance ``r``."""
    return path_dist(r, p, directed).mean()


def mean_network_distance(params):
    """Mean actual distance averaged over the ring's regular distances.

    Regular distances are taken uniformly from 1..n-1 on a directed ring and
    1..n//2 on an undirected one.
    """
    rs = range(1, params.max_distance + 1)
    return float(np.mean([mean_actual_distance(r, params.p, params.directed) for r in rs]))


def clustering_coefficient(p):
    """Clustering coefficient ``p**2``: both ring neighbours reach the hub."""
    p = check_prob(p)
    return p * p
