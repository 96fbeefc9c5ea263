"""Tests for the exact enumeration oracles and the variance bound."""

import math

import numpy as np
import pytest
from scipy import stats

from renyidiv.dist import (
    Distribution,
    ValidationError,
    make_distribution,
    sample_histogram_poissonized,
    uniform,
)
from renyidiv.divergence import power_sum, renyi_divergence
from renyidiv.estimators import EstimatorConfig, estimate_power_sum_batch
from renyidiv.oracle import (
    EnumerationBudget,
    exact_failure_probability,
    exact_mean_and_variance,
    multinomial_outcome_count,
    multinomial_outcomes,
    poisson_truncation_points,
    variance_bound,
)

CORRECTED_EXACT = EstimatorConfig("corrected", 2, "exact")
CORRECTED_POISSON = EstimatorConfig("corrected", 2, "poissonized")


def test_multinomial_outcome_count():
    assert multinomial_outcome_count(2, 4) == 5
    assert multinomial_outcome_count(3, 3) == 10
    assert multinomial_outcome_count(4, 6) == math.comb(9, 3)


def test_multinomial_outcomes_weights_sum_to_one():
    p = make_distribution([0.2, 0.3, 0.5])
    outcomes = list(multinomial_outcomes(p, 6))
    assert len(outcomes) == multinomial_outcome_count(3, 6)
    total = sum(w for _, w in outcomes)
    assert total == pytest.approx(1.0, abs=1e-12)


def test_multinomial_outcomes_match_scipy():
    rng = np.random.default_rng(21)
    p = make_distribution(rng.uniform(0.1, 1.0, 3))
    n = 5
    for counts, weight in multinomial_outcomes(p, n):
        expected = stats.multinomial.pmf(counts, n, p.probs)
        assert weight == pytest.approx(float(expected), rel=1e-12, abs=1e-300)


def test_multinomial_outcomes_skip_impossible():
    p = Distribution(np.array([0.5, 0.0, 0.5]))
    outcomes = list(multinomial_outcomes(p, 4))
    assert all(c[1] == 0 for c, _ in outcomes)
    total = sum(w for _, w in outcomes)
    assert total == pytest.approx(1.0, abs=1e-12)


def test_budget_validation():
    with pytest.raises(ValidationError):
        EnumerationBudget(max_outcomes=0)
    with pytest.raises(ValidationError):
        EnumerationBudget(truncation_mass=0.0)
    with pytest.raises(ValidationError):
        EnumerationBudget(truncation_mass=1e-3)


def test_budget_exceeded():
    small = EnumerationBudget(max_outcomes=3)
    p = uniform(3)
    with pytest.raises(ValidationError, match="budget"):
        exact_mean_and_variance(p, p, 2.0, 6, CORRECTED_EXACT, budget=small)


def test_exact_mean_matches_power_sum():
    p = make_distribution([0.5, 0.5])
    q = uniform(2)
    mean, var = exact_mean_and_variance(p, q, 2.0, 3, CORRECTED_EXACT)
    assert mean == pytest.approx(power_sum(p, q, 2.0), abs=1e-14)
    assert var > 0.0


def test_exact_mean_deterministic_histogram():
    p = Distribution(np.array([1.0, 0.0]))
    q = make_distribution([0.25, 0.75])
    mean, var = exact_mean_and_variance(p, q, 2.0, 5, CORRECTED_EXACT)
    # All mass lands on symbol 0, so the estimate is q_0**(1-2) exactly.
    assert mean == pytest.approx(4.0, rel=1e-14)
    assert var == pytest.approx(0.0, abs=1e-20)


def test_plugin_mean_is_strictly_biased():
    p = make_distribution([0.5, 0.5])
    q = uniform(2)
    mean, _ = exact_mean_and_variance(p, q, 2.0, 3, EstimatorConfig("plugin", 2))
    assert abs(mean - power_sum(p, q, 2.0)) > 0.05


def test_poissonized_mean_and_variance_frozen():
    p = uniform(2)
    mean, var = exact_mean_and_variance(p, p, 2.0, 6, CORRECTED_POISSON)
    assert mean == pytest.approx(1.0, rel=1e-10)
    # Each coordinate contributes q**(2-2a) * Var[N(N-1)] / n**4 with
    # Var[N(N-1)] = 2 lam**2 + 4 lam**3 at lam = 3.
    assert var == pytest.approx(7.0 / 9.0, rel=1e-8)
    assert variance_bound(p, p, 2.0, 6) == pytest.approx(8.0 / 9.0, rel=1e-14)


def test_poissonized_variance_matches_product_enumeration():
    # Cross-validate the coordinate-wise moment computation against a
    # direct enumeration of the truncated joint support.
    rng = np.random.default_rng(22)
    for _ in range(3):
        p = make_distribution(rng.uniform(0.2, 1.0, 2))
        q = make_distribution(rng.uniform(0.2, 1.0, 2))
        n = 5
        mean, var = exact_mean_and_variance(p, q, 2.0, n, CORRECTED_POISSON)
        lams = n * p.probs
        hi = [int(stats.poisson.isf(1e-14, lam)) + 10 for lam in lams]
        grid = np.array(
            [(a, b) for a in range(hi[0] + 1) for b in range(hi[1] + 1)], dtype=np.int64
        )
        w = stats.poisson.pmf(grid[:, 0], lams[0]) * stats.poisson.pmf(grid[:, 1], lams[1])
        w = w / w.sum()
        vals = estimate_power_sum_batch(grid, q, CORRECTED_POISSON, nominal_total=n)
        ref_mean = float(np.dot(w, vals))
        ref_var = float(np.dot(w, (vals - ref_mean) ** 2))
        assert mean == pytest.approx(ref_mean, rel=1e-9)
        assert var == pytest.approx(ref_var, rel=1e-7)


def test_poissonized_moments_reject_other_estimators():
    p = uniform(2)
    with pytest.raises(ValidationError):
        exact_mean_and_variance(
            p, p, 2.0, 4, EstimatorConfig("plugin", 2), sampling="poissonized"
        )
    with pytest.raises(ValidationError):
        exact_mean_and_variance(p, p, 2.0, 4, CORRECTED_EXACT, sampling="poissonized")


def test_order_must_match_config():
    p = uniform(2)
    with pytest.raises(ValidationError, match="order"):
        exact_mean_and_variance(p, p, 3.0, 4, CORRECTED_EXACT)


def test_oracle_agrees_with_monte_carlo():
    p = make_distribution([0.3, 0.7])
    q = make_distribution([0.6, 0.4])
    n = 30
    mean, var = exact_mean_and_variance(p, q, 2.0, n, CORRECTED_POISSON)
    trials = 3000
    counts = np.empty((trials, 2), dtype=np.int64)
    for t in range(trials):
        counts[t] = sample_histogram_poissonized(p, n, 7000 + t).counts
    vals = estimate_power_sum_batch(counts, q, CORRECTED_POISSON, nominal_total=n)
    mc_mean = float(vals.mean())
    se = float(vals.std(ddof=1)) / math.sqrt(trials)
    assert abs(mc_mean - mean) < 4.0 * se


def test_failure_probability_frozen_value():
    p = make_distribution([0.5, 0.5])
    q = uniform(2)
    value = exact_failure_probability(p, q, 2.0, 4, CORRECTED_EXACT, 0.5)
    assert value == pytest.approx(0.5, rel=1e-12)


def test_failure_probability_extreme_deltas():
    p = make_distribution([0.5, 0.5])
    q = uniform(2)
    # Max deviation over the 5 outcomes at n = 4 is 1 bit, so delta = 1.5
    # never fails; delta = 0 fails except on the two exact outcomes.
    assert exact_failure_probability(p, q, 2.0, 4, CORRECTED_EXACT, 1.5) == 0.0
    at_zero = exact_failure_probability(p, q, 2.0, 4, CORRECTED_EXACT, 0.0)
    assert at_zero == pytest.approx(0.5, rel=1e-12)


def test_failure_probability_decreasing_in_n():
    p = make_distribution([0.4, 0.6])
    q = uniform(2)
    values = [
        exact_failure_probability(p, q, 2.0, n, CORRECTED_EXACT, 0.4)
        for n in (4, 8, 16, 32)
    ]
    assert values[-1] < values[0]
    assert all(0.0 <= v <= 1.0 for v in values)


def test_failure_probability_poissonized_counts_undefined_as_failure():
    p = make_distribution([0.5, 0.5])
    q = uniform(2)
    # With a tiny mean sample size, most Poissonized draws have fewer
    # than alpha counts everywhere and the estimator is undefined.
    value = exact_failure_probability(
        p, q, 2.0, 1, CORRECTED_POISSON, 10.0, sampling="poissonized"
    )
    # P(undefined): all coordinates below 2 and the power sum zero.
    lam = 0.5
    p_lt2 = math.exp(-lam) * (1.0 + lam)
    assert value == pytest.approx(p_lt2**2, rel=1e-8)


def test_failure_probability_plugin_poissonized_runs():
    p = make_distribution([0.5, 0.5])
    q = uniform(2)
    value = exact_failure_probability(
        p, q, 2.0, 6, EstimatorConfig("plugin", 2), 1e9, sampling="poissonized"
    )
    # Only the empty histogram fails at an astronomically large delta.
    assert value == pytest.approx(math.exp(-6.0) ** 1, rel=1e-6)


def test_poisson_truncation_points_cover_mass():
    lams = np.array([0.5, 3.0, 20.0])
    points = poisson_truncation_points(lams, 1e-11)
    assert np.all(points >= 8)
    for lam, point in zip(lams, points):
        assert float(stats.poisson.sf(point, lam)) < 1e-11


def test_variance_bound_dominates_exact_variance():
    rng = np.random.default_rng(23)
    for _ in range(10):
        k = int(rng.integers(2, 4))
        p = make_distribution(rng.uniform(0.1, 1.0, k))
        q = make_distribution(rng.uniform(0.1, 1.0, k))
        n = int(rng.integers(3, 8))
        for alpha in (2, 3):
            cfg = EstimatorConfig("corrected", alpha, "poissonized")
            _, var = exact_mean_and_variance(p, q, float(alpha), n, cfg)
            assert var <= variance_bound(p, q, alpha, n)


def test_variance_bound_monotonicity():
    p = uniform(4)
    q = uniform(4)
    values = [variance_bound(p, q, 2, n) for n in (4, 8, 16, 32)]
    assert all(hi < lo for lo, hi in zip(values, values[1:]))
    # Shrinking reference masses inflate the bound.
    from renyidiv.dist import spike

    spiky = [variance_bound(uniform(8), spike(8, c, 0), 2, 16) for c in (1.5, 2.5, 3.5)]
    assert spiky[0] < spiky[1] < spiky[2]


def test_variance_bound_rejects_fractional_order():
    with pytest.raises(ValidationError):
        variance_bound(uniform(2), uniform(2), 2.5, 4)
