"""Brute-force oracle: exact estimator moments by outcome enumeration.

Fixed-n sampling enumerates every count vector of the multinomial
outcome space with its exact probability weight; Poissonized sampling
uses truncated per-coordinate Poisson supports, each cut where the
upper-tail mass drops below a per-coordinate share of the truncation
budget (a union bound then certifies the global uncovered mass).

Enumeration order is fixed (lexicographic), and sums use numpy's
pairwise reduction over that fixed order, so results are bit-stable.
Cost grows combinatorially; the default budget covers alphabets up to
about 4 symbols at a few dozen samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product as _iter_product
from typing import Iterator

import numpy as np
from scipy.stats import poisson

from .dist import Distribution, ValidationError
from .divergence import DivergenceOrder, as_order, renyi_divergence
from .estimators import EstimatorConfig, estimate_power_sum_batch

__all__ = [
    "EnumerationBudget",
    "DEFAULT_BUDGET",
    "multinomial_outcome_count",
    "multinomial_outcomes",
    "poisson_truncation_points",
    "exact_mean_and_variance",
    "exact_failure_probability",
    "variance_bound",
]


@dataclass(frozen=True)
class EnumerationBudget:
    """Caps for exact enumeration.

    ``max_outcomes`` bounds the number of enumerated count vectors;
    ``truncation_mass`` bounds the total Poisson tail mass left
    uncovered across all coordinates.
    """

    max_outcomes: int = 10**6
    truncation_mass: float = 1e-10

    def __post_init__(self) -> None:
        if int(self.max_outcomes) < 1:
            raise ValidationError("max_outcomes must be at least 1")
        if not 0.0 < float(self.truncation_mass) <= 1e-9:
            raise ValidationError("truncation_mass must lie in (0, 1e-9]")
        object.__setattr__(self, "max_outcomes", int(self.max_outcomes))
        object.__setattr__(self, "truncation_mass", float(self.truncation_mass))


DEFAULT_BUDGET = EnumerationBudget()


def multinomial_outcome_count(k: int, n: int) -> int:
    """Number of count vectors: C(n + k - 1, k - 1)."""
    return math.comb(int(n) + int(k) - 1, int(k) - 1)


def _compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    if k == 1:
        yield (n,)
        return
    for c in range(n + 1):
        for rest in _compositions(n - c, k - 1):
            yield (c,) + rest


def multinomial_outcomes(
    p: Distribution, n: int, budget: EnumerationBudget = DEFAULT_BUDGET
) -> Iterator[tuple[tuple[int, ...], float]]:
    """Yield every count vector of n samples from p with its exact weight.

    Outcomes that are impossible because some p_i is zero are skipped
    (their weight is exactly zero).
    """
    n = int(n)
    if n < 1:
        raise ValidationError("sample count must be at least 1")
    if multinomial_outcome_count(p.k, n) > budget.max_outcomes:
        raise ValidationError("enumeration budget exceeded")
    with np.errstate(divide="ignore"):
        logp = np.log(p.probs)
    lg = [math.lgamma(i + 1) for i in range(n + 1)]
    for counts in _compositions(n, p.k):
        logw = lg[n]
        ok = True
        for c, lp in zip(counts, logp):
            if c == 0:
                continue
            if lp == -math.inf:
                ok = False
                break
            logw += c * lp - lg[c]
        if ok:
            yield counts, math.exp(logw)


def poisson_truncation_points(lams: np.ndarray, mass_per_coordinate: float) -> np.ndarray:
    """Smallest per-coordinate cutoffs leaving upper-tail mass below target.

    Returns, for each rate, an m such that P(Poisson(rate) > m) is below
    ``mass_per_coordinate``; a little margin is added so that truncated
    moment sums of polynomially growing integrands stay accurate.
    """
    lams = np.asarray(lams, dtype=np.float64)
    cuts = np.zeros(lams.shape, dtype=np.int64)
    positive = lams > 0.0
    if positive.any():
        cuts[positive] = poisson.isf(mass_per_coordinate, lams[positive]).astype(np.int64)
    return cuts + 8


def _truncated_supports(
    p: Distribution, n_mean: int, budget: EnumerationBudget
) -> tuple[list[np.ndarray], list[np.ndarray]]:
    lams = float(n_mean) * p.probs
    cuts = poisson_truncation_points(lams, budget.truncation_mass / (4.0 * p.k))
    supports = []
    pmfs = []
    for lam, cut in zip(lams, cuts):
        support = np.arange(int(cut) + 1)
        if lam == 0.0:
            pmf = np.zeros(support.size)
            pmf[0] = 1.0
        else:
            pmf = poisson.pmf(support, lam)
        supports.append(support)
        pmfs.append(pmf)
    return supports, pmfs


def _multinomial_matrix(
    p: Distribution, n: int, budget: EnumerationBudget
) -> tuple[np.ndarray, np.ndarray]:
    pairs = list(multinomial_outcomes(p, n, budget))
    counts = np.array([c for c, _ in pairs], dtype=np.int64)
    weights = np.array([w for _, w in pairs], dtype=np.float64)
    return counts, weights


def _resolve_sampling(cfg: EstimatorConfig, sampling: str | None) -> str:
    if sampling is None:
        if cfg.method == "corrected" and cfg.normalization == "poissonized":
            return "poissonized"
        return "multinomial"
    if sampling not in ("multinomial", "poissonized"):
        raise ValidationError(f"unknown sampling model {sampling!r}")
    return sampling


def exact_mean_and_variance(
    p: Distribution,
    q: Distribution,
    order: DivergenceOrder | float,
    n: int,
    cfg: EstimatorConfig,
    budget: EnumerationBudget = DEFAULT_BUDGET,
    sampling: str | None = None,
) -> tuple[float, float]:
    """Exact mean and variance of the power-sum estimator at sample size n.

    The sampling model defaults to the one matching ``cfg``: Poissonized
    for corrected/poissonized, fixed-n multinomial otherwise.  Under
    Poissonized sampling the estimator is a sum of independent
    per-coordinate terms, so moments are computed coordinate-wise from
    truncated Poisson supports; only the corrected/poissonized estimator
    is supported there.
    """
    order = as_order(order)
    if order.alpha != cfg.order.alpha:
        raise ValidationError("order disagrees with the estimator config")
    n = int(n)
    if n < 1:
        raise ValidationError("sample count must be at least 1")
    mode = _resolve_sampling(cfg, sampling)

    if mode == "multinomial":
        counts, weights = _multinomial_matrix(p, n, budget)
        nominal = n if cfg.normalization == "poissonized" else None
        values = estimate_power_sum_batch(counts, q, cfg, nominal_total=nominal)
        wsum = float(weights.sum())
        mean = float(np.dot(weights, values)) / wsum
        var = float(np.dot(weights, (values - mean) ** 2)) / wsum
        return mean, var

    if cfg.method != "corrected" or cfg.normalization != "poissonized":
        raise ValidationError(
            "poissonized moments are only available for the corrected/poissonized estimator"
        )
    a = cfg.order.integer
    supports, pmfs = _truncated_supports(p, n, budget)
    denom = float(n) ** a
    mean = 0.0
    var = 0.0
    for q_i, support, pmf in zip(q.probs, supports, pmfs):
        fp = np.ones(support.size)
        for j in range(a):
            fp = fp * (support - j)
        g = float(q_i) ** (1 - a) * np.maximum(fp, 0.0) / denom
        wsum = float(pmf.sum())
        m_i = float(np.dot(pmf, g)) / wsum
        v_i = float(np.dot(pmf, (g - m_i) ** 2)) / wsum
        mean += m_i
        var += v_i
    return mean, var


def exact_failure_probability(
    p: Distribution,
    q: Distribution,
    order: DivergenceOrder | float,
    n: int,
    cfg: EstimatorConfig,
    delta: float,
    budget: EnumerationBudget = DEFAULT_BUDGET,
    sampling: str | None = None,
) -> float:
    """Exact probability that the divergence estimate misses by more than delta.

    The failure event is |estimate - D_alpha(p || q)| > delta, with an
    undefined estimate (zero power sum) counting as a failure.  Under
    Poissonized sampling the joint truncated support is enumerated; the
    result is then exact up to the truncation mass.
    """
    order = as_order(order)
    if order.alpha != cfg.order.alpha:
        raise ValidationError("order disagrees with the estimator config")
    delta = float(delta)
    if delta < 0.0:
        raise ValidationError("accuracy delta must be nonnegative")
    n = int(n)
    if n < 1:
        raise ValidationError("sample count must be at least 1")
    mode = _resolve_sampling(cfg, sampling)
    d_true = renyi_divergence(p, q, order)

    if mode == "multinomial":
        counts, weights = _multinomial_matrix(p, n, budget)
        nominal = n if cfg.normalization == "poissonized" else None
    else:
        supports, pmfs = _truncated_supports(p, n, budget)
        sizes = [s.size for s in supports]
        total = 1
        for s in sizes:
            total *= s
            if total > budget.max_outcomes:
                raise ValidationError("enumeration budget exceeded")
        counts = np.array(list(_iter_product(*supports)), dtype=np.int64)
        weights = np.ones(counts.shape[0])
        for axis, pmf in enumerate(pmfs):
            weights = weights * pmf[counts[:, axis]]
        nominal = n
    # An empty histogram leaves the plug-in estimate undefined, which
    # counts as a failure; it only arises under Poissonized sampling.
    rows = np.ones(counts.shape[0], dtype=bool)
    if cfg.method == "plugin":
        rows = counts.sum(axis=1) >= 1
    values = np.zeros(counts.shape[0])
    values[rows] = estimate_power_sum_batch(counts[rows], q, cfg, nominal_total=nominal)
    failed = values <= 0.0
    defined = ~failed
    if defined.any():
        est = np.log2(values[defined]) / (cfg.order.alpha - 1.0)
        failed[defined] = np.abs(est - d_true) > delta
    return float(weights[failed].sum()) / float(weights.sum())


def variance_bound(
    p: Distribution, q: Distribution, order: DivergenceOrder | float, n: int
) -> float:
    """Closed-form upper bound on the corrected/poissonized estimator variance.

    With rates lam_i = n * p_i, the per-coordinate falling-power variance
    is at most lam**alpha * ((lam + alpha)**alpha - lam**alpha), giving

        Var <= sum_i q_i**(2 - 2 alpha) * lam_i**alpha
               * ((lam_i + alpha)**alpha - lam_i**alpha) / n**(2 alpha).

    Equivalently sum over r < alpha of C(alpha, r) * alpha**(alpha - r)
    * n**(r - alpha) * sum_i p_i**(alpha + r) / q_i**(2 alpha - 2); the
    alpha**(alpha-r) factors are required for a true bound.
    """
    order = as_order(order)
    a = order.integer
    if a < 2:
        raise ValidationError("variance bound needs an integer order >= 2")
    n = int(n)
    if n < 1:
        raise ValidationError("sample count must be at least 1")
    if p.k != q.k:
        raise ValidationError("alphabet size mismatch")
    if np.any(q.probs <= 0.0):
        raise ValidationError("reference distribution has a zero entry")
    lam = float(n) * p.probs
    with np.errstate(over="ignore"):
        per = lam**a * ((lam + a) ** a - lam**a)
        terms = per * q.probs ** (2.0 - 2.0 * a) / float(n) ** (2 * a)
    terms = np.sort(terms)
    return float(terms.sum())
