"""Power-sum and divergence estimators from sampled histograms.

Two estimators of M_alpha(p, q) from a histogram of samples of p:

* plug-in: sum_i (n_i / n)**alpha * q_i**(1 - alpha), biased;
* corrected: replace (n_i / n)**alpha by the falling power
  n_i * (n_i - 1) * ... * (n_i - alpha + 1) over a normalizer, which
  removes the bias because E[n_i falling alpha] is proportional to
  p_i**alpha under both sampling models.

The corrected normalizer is n**alpha for Poissonized sampling and the
falling power of n for fixed-n multinomial sampling (exactly unbiased).
A divergence estimate is undefined when every count is below alpha, in
which case the corrected power-sum estimate is zero; that outcome is
reported as ``None`` rather than negative infinity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import logsumexp

from .dist import Distribution, Histogram, ValidationError
from .divergence import DivergenceOrder, as_order

__all__ = [
    "EstimatorConfig",
    "Histogram",
    "falling_power",
    "falling_power_array",
    "estimate_power_sum",
    "estimate_power_sum_batch",
    "estimate_divergence",
    "median_amplify",
]

METHODS = ("plugin", "corrected")
NORMALIZATIONS = ("poissonized", "exact")


@dataclass(frozen=True)
class EstimatorConfig:
    """Estimator selection: method, order, and corrected normalization.

    The corrected method requires an integer order alpha >= 2; the
    normalization field only affects the corrected method.
    """

    method: str
    order: DivergenceOrder
    normalization: str = "exact"

    def __post_init__(self) -> None:
        if self.method not in METHODS:
            raise ValidationError(f"unknown method {self.method!r}")
        if self.normalization not in NORMALIZATIONS:
            raise ValidationError(f"unknown normalization {self.normalization!r}")
        order = as_order(self.order)
        if self.method == "corrected":
            if not order.is_integer or order.integer < 2:
                raise ValidationError("corrected estimator needs an integer order >= 2")
        object.__setattr__(self, "order", order)


def falling_power(m: int, a: int) -> int:
    """The falling power m * (m-1) * ... * (m-a+1); zero when m < a."""
    m = int(m)
    a = int(a)
    if m < 0 or a < 1:
        raise ValidationError("falling power needs m >= 0 and a >= 1")
    result = 1
    for j in range(a):
        result *= m - j
        if result == 0:
            return 0
    return result


def falling_power_array(counts: np.ndarray, a: int) -> np.ndarray:
    """Vectorized falling powers of nonnegative integer counts, as float64.

    Counts below ``a`` hit a zero factor, so their product is exactly 0.
    """
    a = int(a)
    if a < 1:
        raise ValidationError("falling power needs a >= 1")
    result = np.ones(np.shape(counts), dtype=np.float64)
    c = np.asarray(counts, dtype=np.float64)
    for j in range(a):
        result = result * (c - j)
    return result


def _corrected_denominator(cfg: EstimatorConfig, total: int, nominal_total: int | None) -> float:
    a = cfg.order.integer
    if cfg.normalization == "poissonized":
        base = int(nominal_total) if nominal_total is not None else int(total)
        if base < 1:
            raise ValidationError("histogram is empty")
        return float(base) ** a
    if total < 1:
        raise ValidationError("histogram is empty")
    return float(falling_power(total, a))


def estimate_power_sum(
    hist: Histogram,
    q: Distribution,
    cfg: EstimatorConfig,
    nominal_total: int | None = None,
) -> float:
    """Estimate the power sum M_alpha(p, q) from a histogram of p-samples.

    For the corrected method with Poissonized normalization the divisor
    is ``nominal_total**alpha`` when given (the mean of the Poissonized
    sample size), else the realized total.  With exact normalization and
    a total below alpha every falling power vanishes and the estimate is
    exactly zero.
    """
    if hist.k != q.k:
        raise ValidationError("alphabet size mismatch")
    if np.any(q.probs <= 0.0):
        raise ValidationError("reference distribution has a zero entry")
    a = cfg.order.alpha

    if cfg.method == "plugin":
        if hist.total < 1:
            raise ValidationError("histogram is empty")
        freqs = hist.counts / float(hist.total)
        with np.errstate(over="ignore", invalid="ignore"):
            terms = freqs**a * q.probs ** (1.0 - a)
        if np.all(np.isfinite(terms)):
            terms = np.sort(terms)
            return float(terms.sum())
        mask = freqs > 0.0
        logt = a * np.log(freqs[mask]) + (1.0 - a) * np.log(q.probs[mask])
        return float(np.exp(logsumexp(logt)))

    ai = cfg.order.integer
    fp = falling_power_array(hist.counts, ai)
    denom = _corrected_denominator(cfg, hist.total, nominal_total)
    if denom == 0.0:
        # exact normalization with total < alpha: every count is below
        # alpha as well, so the estimator is identically zero.
        return 0.0
    with np.errstate(over="ignore", invalid="ignore"):
        terms = q.probs ** (1.0 - ai) * fp / denom
    if np.all(np.isfinite(terms)):
        terms = np.sort(terms)
        return float(terms.sum())
    mask = fp > 0.0
    if not mask.any():
        return 0.0
    logt = np.log(fp[mask]) + (1.0 - ai) * np.log(q.probs[mask]) - math.log(denom)
    return float(np.exp(logsumexp(logt)))


def estimate_power_sum_batch(
    counts: np.ndarray,
    q: Distribution,
    cfg: EstimatorConfig,
    nominal_total: int | None = None,
) -> np.ndarray:
    """Row-wise power-sum estimates for a (trials, k) count matrix.

    Matches :func:`estimate_power_sum` row by row; intended for Monte
    Carlo experiments.  The Poissonized normalization requires an
    explicit ``nominal_total`` here because rows may have empty totals.
    """
    counts = np.asarray(counts)
    if counts.ndim != 2 or counts.shape[1] != q.k:
        raise ValidationError("counts must be a (trials, k) matrix")
    if np.any(q.probs <= 0.0):
        raise ValidationError("reference distribution has a zero entry")
    totals = counts.sum(axis=1).astype(np.float64)
    a = cfg.order.alpha
    if cfg.method == "plugin":
        if np.any(totals < 1):
            raise ValidationError("histogram is empty")
        freqs = counts / totals[:, None]
        return (freqs**a * q.probs ** (1.0 - a)).sum(axis=1)
    ai = cfg.order.integer
    fp = falling_power_array(counts, ai)
    numer = (q.probs ** (1.0 - ai) * fp).sum(axis=1)
    if cfg.normalization == "poissonized":
        if nominal_total is None:
            raise ValidationError("poissonized batch estimates need nominal_total")
        return numer / float(int(nominal_total)) ** ai
    denom = falling_power_array(totals, ai)
    return np.where(denom > 0.0, numer / np.where(denom > 0.0, denom, 1.0), 0.0)


def estimate_divergence(
    hist: Histogram,
    q: Distribution,
    cfg: EstimatorConfig,
    nominal_total: int | None = None,
) -> float | None:
    """Divergence estimate in bits, or ``None`` when undefined.

    The estimate is log2(M_hat) / (alpha - 1); it is undefined exactly
    when the corrected power-sum estimate is zero, which happens when
    every symbol count is below alpha.
    """
    m = estimate_power_sum(hist, q, cfg, nominal_total=nominal_total)
    if m <= 0.0:
        return None
    return math.log2(m) / (cfg.order.alpha - 1.0)


def median_amplify(
    sampler: Callable[[int, int], Histogram],
    q: Distribution,
    cfg: EstimatorConfig,
    n_per_group: int,
    groups: int,
    seed: int,
) -> float | None:
    """Median of independent group estimates, for confidence amplification.

    ``sampler(n, seed)`` must return a histogram of n fresh samples;
    group g uses seed ``seed XOR g``.  ``groups`` must be odd.  Undefined
    group estimates sort below all defined ones (they are the limit of a
    divergence of a vanishing power sum); the result is ``None`` only if
    the median lands on an undefined estimate.
    """
    groups = int(groups)
    if groups < 1 or groups % 2 == 0:
        raise ValidationError("group count must be odd and at least 1")
    n_per_group = int(n_per_group)
    if n_per_group < 1:
        raise ValidationError("group sample count must be at least 1")
    seed = int(seed)
    estimates: list[float | None] = []
    for g in range(groups):
        hist = sampler(n_per_group, seed ^ g)
        estimates.append(estimate_divergence(hist, q, cfg))
    estimates.sort(key=lambda e: -math.inf if e is None else e)
    return estimates[groups // 2]
