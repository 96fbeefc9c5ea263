"""Sample-complexity bounds: sufficient sample sizes and witness lower bounds.

Upper bound side: the corrected estimator meets a (delta, epsilon)
additive accuracy target once the variance-ratio condition

    sum_{r=0}^{alpha-1} C(alpha, r) * n**(r - alpha) * S_r / M**2
        <= slack * epsilon * delta**2,
    S_r = sum_i p_i**(alpha+r) / q_i**(2 alpha - 2),

holds; ``sufficient_n`` inverts it for the minimal such n.

Lower bound side: a multiplicative perturbation p'_i = p_i (1 + d_i)
with d_i >= -1/2, sum_i d_i p_i = 0 and magnitude delta = sum p_i |d_i|
forces any estimator to use at least max(sqrt(C2), C1) samples, with

    C1 = alpha * (sum_i d_i w_i) / (sum_i w_i) / delta,
    C2 = alpha (alpha - 1) / 4 * (sum_i d_i^2 w_i) / (sum_i w_i) / delta**2,

where w_i = p_i**alpha * q_i**(1 - alpha).  Two concrete constructions
are provided: a bump on uniform p at the least likely reference symbol
(implied n grows like sqrt(k)) and a matched spike pair (implied n grows
like k**d with d = c (alpha - 1) / alpha for a reference spike k**-c).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.special import logsumexp

from .dist import (
    Distribution,
    PerturbationVector,
    ValidationError,
    make_perturbation,
    perturb,
    spike,
    total_variation,
    uniform,
    validate_perturbation,
)
from .divergence import DivergenceOrder, as_order, log_power_sum, renyi_divergence

__all__ = [
    "BoundReport",
    "WitnessPair",
    "LowerBoundConstants",
    "SpikeInstance",
    "theorem1_condition",
    "sufficient_n",
    "lower_bound_constants",
    "witness_pair_uniform",
    "witness_instance_spike",
    "make_bound_report",
]


@dataclass(frozen=True)
class LowerBoundConstants:
    """Constants certifying a sample-size lower bound for one witness perturbation.

    ``c1`` is clamped at zero (the raw signed value is kept in
    ``c1_raw``); ``c2`` is always positive for a nonzero perturbation.
    """

    c1: float
    c2: float
    c1_raw: float


@dataclass(frozen=True, eq=False)
class WitnessPair:
    """An indistinguishable pair (p, p') against q with its implied sample bound."""

    p: Distribution
    p_prime: Distribution
    q: Distribution
    tv: float
    divergence_gap: float
    implied_n: float

    def to_json_dict(self) -> dict:
        return {
            "p": [float(x) for x in self.p.probs],
            "p_prime": [float(x) for x in self.p_prime.probs],
            "q": [float(x) for x in self.q.probs],
            "tv": self.tv,
            "divergence_gap": self.divergence_gap,
            "implied_n": self.implied_n,
        }


class SpikeInstance(NamedTuple):
    """Matched spike construction: distributions, spike decay d, implied n."""

    p: Distribution
    q: Distribution
    d: float
    implied_n: float


@dataclass(frozen=True)
class BoundReport:
    """Upper and lower bound quantities for one instance, JSON-serializable."""

    theorem1_lhs: float
    sufficient_n: int
    c1: float
    c2: float
    lower_n: float

    def to_json_dict(self) -> dict:
        return {
            "theorem1_lhs": self.theorem1_lhs,
            "sufficient_n": self.sufficient_n,
            "c1": self.c1,
            "c2": self.c2,
            "lower_n": self.lower_n,
        }


def _variance_ratio_logs(
    p: Distribution, q: Distribution, order: DivergenceOrder
) -> list[float]:
    """log of C(alpha, r) * S_r / M**2 for r = 0 .. alpha-1."""
    a = order.integer
    if a < 2:
        raise ValidationError("the condition needs an integer order >= 2")
    if p.k != q.k:
        raise ValidationError("alphabet size mismatch")
    if np.any(q.probs <= 0.0):
        raise ValidationError("reference distribution has a zero entry")
    mask = p.probs > 0.0
    lp = np.log(p.probs[mask])
    lq = np.log(q.probs[mask])
    log_m = log_power_sum(p, q, order)
    logs = []
    for r in range(a):
        log_s = float(logsumexp((a + r) * lp + (2.0 - 2.0 * a) * lq))
        logs.append(math.log(math.comb(a, r)) + log_s - 2.0 * log_m)
    return logs


def _condition_value(logs: list[float], a: int, n: int) -> float:
    ln_n = math.log(n)
    terms = np.sort(np.array([logs[r] - (a - r) * ln_n for r in range(a)]))
    with np.errstate(over="ignore"):
        return float(np.exp(terms).sum())


def theorem1_condition(
    p: Distribution, q: Distribution, order: DivergenceOrder | float, n: int
) -> float:
    """Left-hand side of the variance-ratio sufficient condition at sample size n.

    Strictly decreasing in n; each term is computed in log space so
    references with very small masses do not overflow intermediates.
    """
    order = as_order(order)
    n = int(n)
    if n < 1:
        raise ValidationError("sample count must be at least 1")
    logs = _variance_ratio_logs(p, q, order)
    return _condition_value(logs, order.integer, n)


def sufficient_n(
    p: Distribution,
    q: Distribution,
    order: DivergenceOrder | float,
    delta: float,
    epsilon: float,
    slack: float = 0.25,
) -> int:
    """Minimal n at which the condition drops to slack * epsilon * delta**2.

    Doubling finds an upper bracket, then binary search isolates the
    smallest sample size; comparisons run on logs so even spike
    references with polynomially small masses resolve exactly.
    """
    order = as_order(order)
    delta = float(delta)
    epsilon = float(epsilon)
    slack = float(slack)
    if delta <= 0.0:
        raise ValidationError("accuracy delta must be positive")
    if not 0.0 < epsilon < 1.0:
        raise ValidationError("failure probability must lie in (0, 1)")
    if slack <= 0.0:
        raise ValidationError("slack must be positive")
    a = order.integer
    logs = _variance_ratio_logs(p, q, order)
    log_target = math.log(slack * epsilon * delta * delta)

    def log_lhs(n: int) -> float:
        ln_n = math.log(n)
        return float(logsumexp([logs[r] - (a - r) * ln_n for r in range(a)]))

    hi = 1
    while log_lhs(hi) > log_target:
        hi *= 2
        if hi > 1 << 20000:
            raise ValidationError("sufficient sample size search diverged")
    if hi == 1:
        return 1
    lo = hi // 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if log_lhs(mid) > log_target:
            lo = mid
        else:
            hi = mid
    return hi


def lower_bound_constants(
    p: Distribution,
    q: Distribution,
    order: DivergenceOrder | float,
    v: PerturbationVector,
) -> LowerBoundConstants:
    """Lower bound constants C1 and C2 for a perturbation of p against q."""
    order = as_order(order)
    a = order.alpha
    if p.k != q.k:
        raise ValidationError("alphabet size mismatch")
    if np.any(q.probs <= 0.0):
        raise ValidationError("reference distribution has a zero entry")
    validate_perturbation(p, v)
    if v.magnitude <= 0.0:
        raise ValidationError("perturbation magnitude must be positive")
    mask = p.probs > 0.0
    lw = a * np.log(p.probs[mask]) + (1.0 - a) * np.log(q.probs[mask])
    deltas = v.deltas[mask]
    log_w = float(logsumexp(lw))
    num1, sign1 = logsumexp(lw, b=deltas, return_sign=True)
    c1_raw = a * float(sign1) * math.exp(float(num1) - log_w) / v.magnitude
    num2 = logsumexp(lw, b=deltas * deltas)
    c2 = (a * (a - 1.0) / 4.0) * math.exp(float(num2) - log_w) / v.magnitude**2
    return LowerBoundConstants(c1=max(c1_raw, 0.0), c2=c2, c1_raw=c1_raw)


def _scaled_perturbation(p: Distribution, raw: np.ndarray) -> PerturbationVector:
    # Scale by min(1, 1/(2 max |d_i|)) so every entry lands in [-1/2, 1/2]:
    # the perturbed distribution stays valid and both constants are
    # unchanged because C1 and C2 are scale-free in the direction.
    peak = float(np.abs(raw).max())
    if peak == 0.0:
        raise ValidationError("perturbation direction is zero")
    scale = min(1.0, 0.5 / peak)
    return make_perturbation(p, raw * scale)


def witness_perturbation(p: Distribution, q: Distribution) -> PerturbationVector:
    """Bump at the least likely reference symbol, balanced over the rest.

    Defined for uniform p: the raw direction puts k/4 at argmin q and
    -k/(4(k-1)) elsewhere, then is scaled into [-1/2, 1/2].
    """
    k = p.k
    if q.k != k:
        raise ValidationError("alphabet size mismatch")
    i0 = int(np.argmin(q.probs))
    raw = np.full(k, -k / (4.0 * (k - 1)))
    raw[i0] = k / 4.0
    return _scaled_perturbation(p, raw)


def witness_pair_uniform(q: Distribution, order: DivergenceOrder | float) -> WitnessPair:
    """Witness pair with uniform p: implied sample bound on the order of sqrt(k).

    Bumps the symbol where q is smallest; the divergence gap is strictly
    positive because the perturbed power sum strictly exceeds the
    original one.
    """
    order = as_order(order)
    if np.any(q.probs <= 0.0):
        raise ValidationError("reference distribution has a zero entry")
    p = uniform(q.k)
    v = witness_perturbation(p, q)
    p_prime = perturb(p, v)
    consts = lower_bound_constants(p, q, order, v)
    implied_n = max(math.sqrt(consts.c2), consts.c1)
    gap = abs(renyi_divergence(p_prime, q, order) - renyi_divergence(p, q, order))
    if not gap > 0.0:
        raise RuntimeError("witness construction produced a zero divergence gap")
    return WitnessPair(
        p=p,
        p_prime=p_prime,
        q=q,
        tv=total_variation(p, p_prime),
        divergence_gap=gap,
        implied_n=implied_n,
    )


def witness_instance_spike(
    k: int, c: float, order: DivergenceOrder | float
) -> SpikeInstance:
    """Matched spike pair: q decays as k**-c, p as k**-d with d = c(alpha-1)/alpha.

    The implied sample bound grows like k**d, which exceeds sqrt(k) once
    c is large; a defensive check asserts implied_n >= k**d / 8.
    """
    order = as_order(order)
    k = int(k)
    c = float(c)
    if k < 2:
        raise ValidationError("alphabet size must be at least 2")
    if c <= 0.0 or float(k) ** (-c) >= 0.5:
        raise ValidationError("spike decay must satisfy k**(-c) < 1/2")
    a = order.alpha
    d = c * (a - 1.0) / a
    q = spike(k, c, 0)
    p = spike(k, d, 0)
    p0 = float(p.probs[0])
    raw = np.full(k, -0.5 * p0 / (1.0 - p0))
    raw[0] = 0.5
    v = _scaled_perturbation(p, raw)
    consts = lower_bound_constants(p, q, order, v)
    implied_n = max(math.sqrt(consts.c2), consts.c1)
    if implied_n < float(k) ** d / 8.0:
        raise RuntimeError("spike witness fell below the expected k**d growth")
    return SpikeInstance(p=p, q=q, d=d, implied_n=implied_n)


def make_bound_report(
    p: Distribution,
    q: Distribution,
    order: DivergenceOrder | float,
    n: int,
    v: PerturbationVector,
    delta: float,
    epsilon: float,
    slack: float = 0.25,
) -> BoundReport:
    """Assemble the upper and lower bound quantities for one instance."""
    order = as_order(order)
    consts = lower_bound_constants(p, q, order, v)
    return BoundReport(
        theorem1_lhs=theorem1_condition(p, q, order, n),
        sufficient_n=sufficient_n(p, q, order, delta, epsilon, slack),
        c1=consts.c1,
        c2=consts.c2,
        lower_n=max(math.sqrt(consts.c2), consts.c1),
    )
