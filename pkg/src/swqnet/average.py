"""Singlet conversion probability averaged over hub-shortcut configurations."""

from dataclasses import dataclass, field

import numpy as np

from ._prob import DomainError, check_phi, check_positive_int, check_prob, clamp_probability
from .entanglement import ChainConvention, scp_chain, scp_chain_table
from .pathdist import path_dist_undirected, undirected_prob_matrix

__all__ = [
    "AvgScpQuery",
    "ScpGrid",
    "avg_scp",
    "scp_heatmap",
    "threshold_boundary",
    "threshold_distance",
    "threshold_region",
    "threshold_shortcuts",
]

# slack when comparing a computed SCP against a target
_TARGET_ATOL = 1e-12


@dataclass(frozen=True)
class AvgScpQuery:
    r: int
    phi: float
    m: float
    n: int = 1000
    conv: ChainConvention = ChainConvention.PAPER_VERBATIM

    def __post_init__(self):
        n = check_positive_int(self.n, "n", minimum=3)
        r = check_positive_int(self.r, "r")
        if r > n // 2:
            raise DomainError(f"r={r} exceeds the largest ring distance {n // 2}")
        if self.m < 0:
            raise DomainError(f"m must be >= 0, got {self.m}")
        object.__setattr__(self, "phi", check_phi(self.phi))
        object.__setattr__(self, "conv", ChainConvention.coerce(self.conv))

    @property
    def p(self):
        return min(1.0, self.m / self.n)


@dataclass
class ScpGrid:
    """Dense grid of SCP values; ``values[i, j]`` sits at ``(x_axis[i], y_axis[j])``."""

    x_axis: np.ndarray
    y_axis: np.ndarray
    values: np.ndarray
    meta: dict = field(default_factory=dict)


def _as_axis(samples, name):
    axis = np.asarray(samples, dtype=float)
    if axis.ndim != 1 or axis.size == 0:
        raise DomainError(f"{name} axis must be a non-empty 1-D sequence")
    if np.any(np.diff(axis) < 0):
        raise DomainError(f"{name} axis must be sorted")
    return axis


def _distribution_matrix(r, n, m_axis):
    """Row ``j`` holds P(ell | r) for ``ell = 1..r`` at ``p = m_axis[j] / n``."""
    return undirected_prob_matrix(r, np.minimum(1.0, np.asarray(m_axis, dtype=float) / n))


def avg_scp(r, phi, m, n=1000, conv=ChainConvention.PAPER_VERBATIM):
    """Mean chain SCP over the actual distance between nodes ``r`` apart.

    Parameters
    ----------
    r : int
        Regular distance along the ring, at most ``n // 2``.
    phi : float
        Schmidt coefficient of every link, ring and hub alike.
    m : float
        Mean number of hub shortcuts; the link probability is ``m / n``.
    n : int
        Ring size.
    conv : ChainConvention or str
        Chain-length convention passed to :func:`scp_chain`.
    """
    q = AvgScpQuery(r=r, phi=phi, m=m, n=n, conv=conv)
    dist = path_dist_undirected(q.r, q.p)
    if q.p == 0.0:
        return scp_chain(q.r, q.phi, q.conv)
    chain = scp_chain_table(q.r, q.phi, q.conv)
    return clamp_probability(float(chain @ dist.probs))


def scp_heatmap(r, n, phi_samples, m_samples, conv=ChainConvention.PAPER_VERBATIM):
    """Grid of :func:`avg_scp` over Schmidt coefficient (x) and mean shortcuts (y)."""
    conv = ChainConvention.coerce(conv)
    AvgScpQuery(r=r, phi=0.5, m=0, n=n, conv=conv)
    phis = _as_axis(phi_samples, "phi")
    ms = _as_axis(m_samples, "m")
    for phi in phis:
        check_phi(phi)
    if ms[0] < 0:
        raise DomainError("m axis must be non-negative")
    chains = np.stack([scp_chain_table(r, phi, conv) for phi in phis])
    values = clamp_probability(chains @ _distribution_matrix(r, n, ms).T)
    meta = {"r": int(r), "n": int(n), "convention": conv.value}
    return ScpGrid(x_axis=phis, y_axis=ms, values=np.atleast_2d(values), meta=meta)


def threshold_shortcuts(
    r, phi, n, target, m_max, conv=ChainConvention.PAPER_VERBATIM, m_step=1.0
):
    """Smallest scanned ``m`` whose averaged SCP reaches ``target``.

    Scans ``0, m_step, 2 m_step, ... <= m_max`` in order and returns the
    first hit, or ``None`` when the target is never reached.  A linear scan
    is used because nothing guarantees monotonicity in ``m``.
    """
    target = _check_target(target)
    if m_step <= 0:
        raise DomainError("m_step must be positive")
    ms = m_step * np.arange(int(np.floor(m_max / m_step + 1e-9)) + 1)
    hits = _reaches(r, phi, n, target, ms, conv)
    idx = np.flatnonzero(hits)
    return float(ms[idx[0]]) if idx.size else None


def _check_target(target):
    target = check_prob(target, "target")
    if target == 0.0:
        raise DomainError("target must be > 0")
    return target


def _reaches(r, phi, n, target, m_axis, conv):
    conv = ChainConvention.coerce(conv)
    AvgScpQuery(r=r, phi=phi, m=0, n=n, conv=conv)
    values = _distribution_matrix(r, n, m_axis) @ scp_chain_table(r, phi, conv)
    return values >= target - _TARGET_ATOL


def threshold_distance(phi, target, n=1000, conv=ChainConvention.PAPER_VERBATIM):
    """Largest ``r <= n // 2`` whose bare-ring SCP still reaches ``target``.

    Returns 0 when even a single link falls short.  Bisection is sound since
    the chain SCP is non-increasing in length.
    """
    phi = check_phi(phi)
    target = _check_target(target)
    n = check_positive_int(n, "n", minimum=3)
    conv = ChainConvention.coerce(conv)

    def ok(r):
        return scp_chain(r, phi, conv) >= target - _TARGET_ATOL

    lo, hi = 0, n // 2
    if ok(hi):
        return hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            lo = mid
        else:
            hi = mid
    return lo


def threshold_region(phi, target, n, r_samples, m_samples, conv=ChainConvention.PAPER_VERBATIM):
    """Boolean grid, ``True`` where ``avg_scp(r, phi, m) >= target``.

    Shape is ``(len(r_samples), len(m_samples))``.
    """
    target = _check_target(target)
    rs = _as_axis(r_samples, "r")
    ms = _as_axis(m_samples, "m")
    return np.stack([_reaches(int(r), phi, n, target, ms, conv) for r in rs])


def threshold_boundary(region, m_samples):
    """Minimal ``m`` per row of a threshold region, NaN where never reached."""
    ms = np.asarray(m_samples, dtype=float)
    out = np.full(region.shape[0], np.nan)
    any_hit = region.any(axis=1)
    out[any_hit] = ms[region[any_hit].argmax(axis=1)]
    return out
