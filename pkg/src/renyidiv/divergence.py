"""Renyi divergence of order alpha > 1 against a known reference.

All logarithms are base 2, so divergences and entropies are in bits.
For distributions p and q on the same alphabet the central quantity is
the power sum

    M_alpha(p, q) = sum_i p_i**alpha * q_i**(1 - alpha),

from which the divergence is D_alpha(p || q) = log2(M) / (alpha - 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .dist import Distribution, ValidationError, uniform

__all__ = [
    "DivergenceOrder",
    "PowerSum",
    "as_order",
    "power_sum",
    "log_power_sum",
    "renyi_divergence",
    "renyi_entropy",
    "divergence_from_power_sum",
    "power_sum_from_divergence",
    "error_conversion",
    "error_conversion_inverse",
]

# The power-sum value M is a plain positive float.
PowerSum = float

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class DivergenceOrder:
    """A divergence order alpha, strictly greater than 1."""

    alpha: float

    def __post_init__(self) -> None:
        alpha = float(self.alpha)
        if not alpha > 1.0:
            raise ValidationError("divergence order must exceed 1")
        object.__setattr__(self, "alpha", alpha)

    @property
    def is_integer(self) -> bool:
        return self.alpha.is_integer()

    @property
    def integer(self) -> int:
        """The order as an int; only valid when ``is_integer`` holds."""
        if not self.is_integer:
            raise ValidationError(f"order {self.alpha} is not an integer")
        return int(self.alpha)


def as_order(order: DivergenceOrder | float | int) -> DivergenceOrder:
    """Coerce a float or int into a validated :class:`DivergenceOrder`."""
    if isinstance(order, DivergenceOrder):
        return order
    return DivergenceOrder(float(order))


def _check_pair(p: Distribution, q: Distribution) -> None:
    if p.k != q.k:
        raise ValidationError("alphabet size mismatch")
    if np.any(q.probs <= 0.0):
        raise ValidationError("reference distribution has a zero entry")


def log_power_sum(p: Distribution, q: Distribution, order: DivergenceOrder | float) -> float:
    """Natural log of the power sum, computed with max-shifted log-sum-exp.

    Stable even when reference masses underflow a direct power
    computation (q_i below 1e-100 or exponent products beyond the
    double-precision range).  Symbols with p_i = 0 contribute nothing.
    """
    a = as_order(order).alpha
    _check_pair(p, q)
    mask = p.probs > 0.0
    lp = np.log(p.probs[mask])
    lq = np.log(q.probs[mask])
    return float(logsumexp(a * lp + (1.0 - a) * lq))


def power_sum(p: Distribution, q: Distribution, order: DivergenceOrder | float) -> PowerSum:
    """The power sum M_alpha(p, q) = sum_i p_i**alpha * q_i**(1-alpha).

    Terms are accumulated in ascending magnitude; if a direct power
    computation leaves the double range the log-space path is used.
    """
    a = as_order(order).alpha
    _check_pair(p, q)
    with np.errstate(over="ignore", invalid="ignore"):
        terms = p.probs**a * q.probs ** (1.0 - a)
    if np.all(np.isfinite(terms)):
        terms = np.sort(terms)
        return float(terms.sum())
    return float(np.exp(log_power_sum(p, q, order)))


def renyi_divergence(p: Distribution, q: Distribution, order: DivergenceOrder | float) -> float:
    """D_alpha(p || q) = log2(M_alpha(p, q)) / (alpha - 1), in bits."""
    a = as_order(order).alpha
    return log_power_sum(p, q, order) / ((a - 1.0) * _LN2)


def renyi_entropy(p: Distribution, order: DivergenceOrder | float) -> float:
    """Renyi entropy in bits, via H_alpha(p) = log2(k) - D_alpha(p || uniform)."""
    return math.log2(p.k) - renyi_divergence(p, uniform(p.k), order)


def divergence_from_power_sum(m: float, order: DivergenceOrder | float) -> float:
    """Map a power-sum value to a divergence: d = log2(m) / (alpha - 1)."""
    a = as_order(order).alpha
    m = float(m)
    if not m > 0.0 or not math.isfinite(m):
        raise ValidationError("power sum must be positive and finite")
    return math.log2(m) / (a - 1.0)


def power_sum_from_divergence(d: float, order: DivergenceOrder | float) -> float:
    """Inverse map: m = 2**((alpha - 1) * d)."""
    a = as_order(order).alpha
    return float(np.exp2((a - 1.0) * float(d)))


def error_conversion(delta_mult: float, order: DivergenceOrder | float) -> float:
    """First-order additive divergence error from a multiplicative power-sum error.

    A power-sum factor (1 + delta) shifts the divergence by
    log2(1 + delta) / (alpha - 1), which is at most
    delta / ((alpha - 1) * ln 2) for delta >= 0.
    """
    a = as_order(order).alpha
    return float(delta_mult) / ((a - 1.0) * _LN2)


def error_conversion_inverse(delta_add: float, order: DivergenceOrder | float) -> float:
    """Multiplicative power-sum error matching an additive divergence error."""
    a = as_order(order).alpha
    return float(delta_add) * (a - 1.0) * _LN2
