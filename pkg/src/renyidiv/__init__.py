"""Renyi divergence estimation for sampled distributions against a known reference.

The package provides the bias-corrected falling-power estimator and the
plug-in baseline for the order-alpha power sum, exact enumeration
oracles for testing them, sample-complexity upper and lower bound
machinery with explicit witness constructions, and a command-line
harness for experiments and stream monitoring.
"""

from .bounds import (
    BoundReport,
    LowerBoundConstants,
    SpikeInstance,
    WitnessPair,
    lower_bound_constants,
    make_bound_report,
    sufficient_n,
    theorem1_condition,
    witness_instance_spike,
    witness_pair_uniform,
    witness_perturbation,
)
from .dist import (
    Distribution,
    Histogram,
    PerturbationVector,
    ValidationError,
    almost_uniform,
    gen_family,
    make_distribution,
    make_perturbation,
    parse_family_spec,
    perturb,
    read_distribution,
    sample_histogram,
    sample_histogram_poissonized,
    spike,
    total_variation,
    uniform,
    validate_perturbation,
    write_distribution,
)
from .divergence import (
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
from .estimators import (
    EstimatorConfig,
    estimate_divergence,
    estimate_power_sum,
    estimate_power_sum_batch,
    falling_power,
    falling_power_array,
    median_amplify,
)
from .oracle import (
    DEFAULT_BUDGET,
    EnumerationBudget,
    exact_failure_probability,
    exact_mean_and_variance,
    multinomial_outcome_count,
    multinomial_outcomes,
    poisson_truncation_points,
    variance_bound,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "DEFAULT_BUDGET",
    "Distribution",
    "DivergenceOrder",
    "EnumerationBudget",
    "EstimatorConfig",
    "Histogram",
    "LowerBoundConstants",
    "PerturbationVector",
    "SpikeInstance",
    "ValidationError",
    "WitnessPair",
    "__version__",
    "almost_uniform",
    "as_order",
    "divergence_from_power_sum",
    "error_conversion",
    "error_conversion_inverse",
    "estimate_divergence",
    "estimate_power_sum",
    "estimate_power_sum_batch",
    "exact_failure_probability",
    "exact_mean_and_variance",
    "falling_power",
    "falling_power_array",
    "gen_family",
    "log_power_sum",
    "lower_bound_constants",
    "make_bound_report",
    "make_distribution",
    "make_perturbation",
    "median_amplify",
    "multinomial_outcome_count",
    "multinomial_outcomes",
    "parse_family_spec",
    "perturb",
    "poisson_truncation_points",
    "power_sum",
    "power_sum_from_divergence",
    "read_distribution",
    "renyi_divergence",
    "renyi_entropy",
    "sample_histogram",
    "sample_histogram_poissonized",
    "spike",
    "sufficient_n",
    "theorem1_condition",
    "total_variation",
    "uniform",
    "validate_perturbation",
    "variance_bound",
    "witness_instance_spike",
    "witness_pair_uniform",
    "witness_perturbation",
    "write_distribution",
]
