"""Tests for power sums, divergences, and error conversions."""

import math

import numpy as np
import pytest

from renyidiv.dist import Distribution, ValidationError, make_distribution, spike, uniform
from renyidiv.divergence import (
    DivergenceOrder,
    as_order,
    divergence_from_power_sum,
    error_conversion,
    error_conversion_inverse,
    log_power_sum,
    power_sum,
    power_sum_from_divergence,
    renyi_divergence,
    renyi_entropy,
)


def random_pair(rng, k):
    p = make_distribution(rng.uniform(0.01, 1.0, k))
    q = make_distribution(rng.uniform(0.05, 1.0, k))
    return p, q


def test_order_validation():
    assert as_order(2).alpha == 2.0
    assert as_order(2.5).alpha == 2.5
    assert as_order(as_order(3)).alpha == 3.0
    with pytest.raises(ValidationError):
        as_order(1.0)
    with pytest.raises(ValidationError):
        as_order(0.5)


def test_order_integer_property():
    assert DivergenceOrder(2.0).is_integer
    assert DivergenceOrder(2.0).integer == 2
    assert not DivergenceOrder(2.5).is_integer
    with pytest.raises(ValidationError):
        DivergenceOrder(2.5).integer


def test_power_sum_frozen_value():
    p = make_distribution([0.75, 0.25])
    q = uniform(2)
    assert power_sum(p, q, 2.0) == pytest.approx(1.25, rel=1e-14)
    assert renyi_divergence(p, q, 2.0) == pytest.approx(math.log2(1.25), rel=1e-12)


def test_power_sum_is_one_when_equal():
    rng = np.random.default_rng(11)
    for _ in range(20):
        k = int(rng.integers(2, 10))
        p = make_distribution(rng.uniform(0.01, 1.0, k))
        for alpha in (2.0, 2.5, 3.0, 5.0):
            assert power_sum(p, p, alpha) == pytest.approx(1.0, rel=1e-12)
            assert renyi_divergence(p, p, alpha) == pytest.approx(0.0, abs=1e-12)


def test_divergence_is_nonnegative():
    rng = np.random.default_rng(12)
    for _ in range(50):
        k = int(rng.integers(2, 12))
        p, q = random_pair(rng, k)
        for alpha in (1.5, 2.0, 3.0, 4.5):
            assert renyi_divergence(p, q, alpha) >= -1e-12


def test_divergence_monotone_in_order():
    rng = np.random.default_rng(13)
    orders = [1.2, 1.5, 2.0, 3.0, 5.0, 8.0]
    for _ in range(20):
        k = int(rng.integers(2, 10))
        p, q = random_pair(rng, k)
        values = [renyi_divergence(p, q, a) for a in orders]
        for lo, hi in zip(values, values[1:]):
            assert hi >= lo - 1e-10


def test_log_power_sum_handles_tiny_reference_masses():
    # The per-symbol factor q_0**(1 - alpha) overflows float64 while the
    # power sum itself stays representable; only the log-space path
    # survives the intermediate.
    k = 64
    q = spike(k, 90.0, 0)
    p = spike(k, 10.0, 0)
    with np.errstate(over="ignore"):
        direct = float(np.sum(p.probs**3.0 * q.probs**-2.0))
    assert not math.isfinite(direct)
    lps = log_power_sum(p, q, 3.0)
    assert math.isfinite(lps)
    value = power_sum(p, q, 3.0)
    assert math.isfinite(value)
    assert value == pytest.approx(math.exp(lps), rel=1e-12)


def test_power_sum_zero_p_entries_are_skipped():
    p = Distribution(np.array([0.5, 0.5, 0.0]))
    q = uniform(3)
    expected = (0.25 + 0.25) * 3.0
    assert power_sum(p, q, 2.0) == pytest.approx(expected, rel=1e-14)


def test_pair_validation():
    with pytest.raises(ValidationError, match="mismatch"):
        renyi_divergence(uniform(2), uniform(3), 2.0)
    q = Distribution(np.array([1.0, 0.0]))
    with pytest.raises(ValidationError, match="zero"):
        renyi_divergence(uniform(2), q, 2.0)


def test_entropy_of_uniform_is_log_k():
    for k in (2, 8, 32):
        for alpha in (1.5, 2.0, 3.0):
            assert renyi_entropy(uniform(k), alpha) == pytest.approx(math.log2(k), rel=1e-12)


def test_entropy_below_log_k_for_nonuniform():
    p = make_distribution([0.7, 0.1, 0.1, 0.1])
    assert renyi_entropy(p, 2.0) < 2.0


def test_conversion_round_trip_frozen():
    assert power_sum_from_divergence(1.0, 2.0) == pytest.approx(2.0, rel=1e-15)
    assert divergence_from_power_sum(2.0, 2.0) == pytest.approx(1.0, rel=1e-15)
    assert power_sum_from_divergence(2.0, 3.0) == pytest.approx(16.0, rel=1e-15)


def test_conversion_round_trip_grid():
    rng = np.random.default_rng(14)
    for _ in range(200):
        d = float(rng.uniform(-10.0, 60.0))
        alpha = float(rng.uniform(1.001, 10.0))
        m = power_sum_from_divergence(d, alpha)
        assert divergence_from_power_sum(m, alpha) == pytest.approx(d, abs=1e-12)


def test_conversion_validation():
    with pytest.raises(ValidationError):
        divergence_from_power_sum(0.0, 2.0)
    with pytest.raises(ValidationError):
        divergence_from_power_sum(float("inf"), 2.0)


def test_error_conversion_first_order():
    assert error_conversion(0.5, 2.0) == pytest.approx(0.5 / math.log(2.0), rel=1e-14)
    assert error_conversion_inverse(error_conversion(0.3, 3.0), 3.0) == pytest.approx(
        0.3, rel=1e-14
    )
    # A multiplicative (1 + delta) power-sum error moves the divergence
    # by at most the first-order amount.
    for delta in (0.01, 0.1, 0.5):
        exact_shift = math.log2(1.0 + delta) / (2.0 - 1.0)
        assert exact_shift <= error_conversion(delta, 2.0) + 1e-15


def test_divergence_matches_power_sum_identity():
    rng = np.random.default_rng(15)
    for _ in range(30):
        k = int(rng.integers(2, 8))
        p, q = random_pair(rng, k)
        alpha = float(rng.uniform(1.1, 6.0))
        d = renyi_divergence(p, q, alpha)
        m = power_sum(p, q, alpha)
        assert divergence_from_power_sum(m, alpha) == pytest.approx(d, abs=1e-10)
