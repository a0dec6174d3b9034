"""Shared validation and probability clamping helpers."""

import math
import warnings

import numpy as np

#: Clamping further than this from [0, 1] is reported as a warning.
CLAMP_WARN_TOL = 1e-9


class DomainError(ValueError):
    """An input lies outside the domain of a formula."""


class ProbabilityClampWarning(RuntimeWarning):
    """A computed probability left [0, 1] by more than floating-point noise."""


def check_phi(phi):
    phi = float(phi)
    if not (0.0 <= phi <= 0.5) or math.isnan(phi):
        raise DomainError(f"Schmidt coefficient must lie in [0, 0.5], got {phi!r}")
    return phi


def check_prob(p, name="p"):
    p = float(p)
    if not (0.0 <= p <= 1.0) or math.isnan(p):
        raise DomainError(f"{name} must lie in [0, 1], got {p!r}")
    return p


def check_positive_int(value, name, minimum=1):
    if isinstance(value, bool) or int(value) != value:
        raise DomainError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if value < minimum:
        raise DomainError(f"{name} must be >= {minimum}, got {value}")
    return value


def clamp_probability(x):
    """Clamp a scalar or array into [0, 1], warning on non-trivial excursions."""
    arr = np.asarray(x, dtype=float)
    excess = np.maximum(arr - 1.0, 0.0) + np.maximum(-arr, 0.0)
    if np.any(excess > CLAMP_WARN_TOL):
        warnings.warn(
            f"probability clamped by {float(np.max(excess)):.3g}",
            ProbabilityClampWarning,
            stacklevel=2,
        )
    out = np.clip(arr, 0.0, 1.0)
    if out.ndim == 0:
        return float(out)
    return out
