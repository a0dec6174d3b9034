"""Probability algebra for swapping and distilling pure two-qubit pairs.

A pair sqrt(phi)|00> + sqrt(1 - phi)|11> is described by its smaller
Schmidt coefficient ``phi`` in [0, 0.5]; 0.5 is a Bell pair.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from ._prob import check_phi, check_positive_int, clamp_probability

__all__ = [
    "ChainConvention",
    "SchmidtCoefficient",
    "SwapOutcome",
    "distill_prob",
    "scp_bound",
    "scp_chain",
    "scp_chain_table",
    "swap_identical",
]

# relative cutoff for the central-binomial series
_SERIES_RTOL = 1e-18


@dataclass(frozen=True)
class SchmidtCoefficient:
    """Smaller Schmidt coefficient of a pure pair, validated on construction."""

    value: float

    def __post_init__(self):
        object.__setattr__(self, "value", check_phi(self.value))

    def __float__(self):
        return self.value

    @property
    def is_maximal(self):
        return self.value == 0.5

    @property
    def is_product(self):
        return self.value == 0.0


class ChainConvention(enum.Enum):
    """How the chain length maps onto the upper limit of the SCP series.

    ``PAPER_VERBATIM`` sums up to ``links // 2``.  ``REPEATER_CALIBRATED``
    sums up to ``(links - 1) // 2``, which makes a two-link chain give
    exactly ``2 * phi`` and coincides with the exact sequential
    swap-then-distill protocol.
    """

    PAPER_VERBATIM = "verbatim"
    REPEATER_CALIBRATED = "calibrated"

    @classmethod
    def coerce(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(value)
        except ValueError:
            return cls[str(value).upper()]

    def series_limit(self, links):
        if self is ChainConvention.PAPER_VERBATIM:
            return links // 2
        return (links - 1) // 2


@dataclass(frozen=True)
class SwapOutcome:
    """Result of a Bell measurement on the middle of two identical pairs.

    Attributes
    ----------
    success_prob : float
        Probability that the outer pair is left maximally entangled.
    residual_coeff : float
        Smaller Schmidt coefficient of the outer pair on failure.
    residual_prob : float
        Probability of the failure branch.
    """

    success_prob: float
    residual_coeff: float
    residual_prob: float


def swap_identical(phi):
    """Entanglement swap of two pairs that share the coefficient ``phi``.

    The Bell outcomes split into a branch of probability ``2 phi (1 - phi)``
    that leaves a Bell pair, and its complement leaving a pair with
    coefficient ``phi^2 / (phi^2 + (1 - phi)^2)``.
    """
    phi = check_phi(phi)
    residual_prob = phi * phi + (1.0 - phi) ** 2
    success = 2.0 * phi * (1.0 - phi)
    return SwapOutcome(
        success_prob=success,
        residual_coeff=phi * phi / residual_prob,
        residual_prob=residual_prob,
    )


def distill_prob(phi):
    """Probability of converting one pair into a Bell pair by local filtering."""
    phi = check_phi(phi)
    return min(1.0, 2.0 * phi)


def _central_binomial_partial_sums(x, kmax):
    """Partial sums of ``sum_k C(2k, k) x^k`` for k = 0..kmax.

    Uses the term ratio ``x (2k+1)(2k+2) / (k+1)^2`` so no factorial is
    ever formed.
    """
    terms = np.empty(kmax + 1)
    terms[0] = 1.0
    t = 1.0
    for k in range(kmax):
        t *= x * (2 * k + 1) * (2 * k + 2) / ((k + 1) * (k + 1))
        terms[k + 1] = t
    return np.cumsum(terms)


def scp_chain(links, phi, conv=ChainConvention.PAPER_VERBATIM):
    """Singlet conversion probability of a linear chain.

    Evaluates ``1 - (1 - 2 phi) * sum_{k=0}^{K} C(2k, k) (phi (1 - phi))^k``
    with ``K`` fixed by ``conv``.

    Parameters
    ----------
    links : int
        Number of elementary links (metric path length), at least 1.
    phi : float
        Schmidt coefficient of every link.
    conv : ChainConvention or str, optional
        Series-limit convention, ``PAPER_VERBATIM`` by default.

    Returns
    -------
    float
        Probability clamped to [0, 1].
    """
    links = check_positive_int(links, "links")
    phi = check_phi(phi)
    conv = ChainConvention.coerce(conv)
    gap = 1.0 - 2.0 * phi
    if gap == 0.0:
        return 1.0
    x = phi * (1.0 - phi)
    total = 1.0
    t = 1.0
    for k in range(conv.series_limit(links)):
        t *= x * (2 * k + 1) * (2 * k + 2) / ((k + 1) * (k + 1))
        total += t
        if t < _SERIES_RTOL * total:
            break
    return clamp_probability(1.0 - gap * total)


def scp_chain_table(max_links, phi, conv=ChainConvention.PAPER_VERBATIM):
    """``scp_chain`` for every chain length 1..max_links as one array.

    Element ``i`` holds the value for ``links = i + 1``.
    """
    max_links = check_positive_int(max_links, "max_links")
    phi = check_phi(phi)
    conv = ChainConvention.coerce(conv)
    links = np.arange(1, max_links + 1)
    gap = 1.0 - 2.0 * phi
    if gap == 0.0:
        return np.ones(max_links)
    limits = links // 2 if conv is ChainConvention.PAPER_VERBATIM else (links - 1) // 2
    sums = _central_binomial_partial_sums(phi * (1.0 - phi), int(limits[-1]))
    return clamp_probability(1.0 - gap * sums[limits])


def scp_bound(links, phi):
    """Exponential envelope ``(4 phi (1 - phi))^(links / 2)`` of the chain SCP.

    Evaluated in log space so long chains underflow gracefully to 0.
    """
    links = check_positive_int(links, "links")
    phi = check_phi(phi)
    base = 4.0 * phi * (1.0 - phi)
    if base == 0.0:
        return 0.0
    if base >= 1.0:
        return 1.0
    return math.exp(0.5 * links * math.log(base))

