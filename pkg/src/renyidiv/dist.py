"""Discrete distributions over an indexed alphabet.

Construction and validation, seeded sampling (fixed sample count and
Poissonized), total variation distance, multiplicative perturbations,
structured families (uniform, spike, almost-uniform), and a plain text
file format with one probability per line.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = [
    "ValidationError",
    "Distribution",
    "Histogram",
    "PerturbationVector",
    "make_distribution",
    "uniform",
    "spike",
    "almost_uniform",
    "gen_family",
    "parse_family_spec",
    "sample_histogram",
    "sample_histogram_poissonized",
    "total_variation",
    "make_perturbation",
    "validate_perturbation",
    "perturb",
    "read_distribution",
    "write_distribution",
]

# Absolute tolerance on the total mass of a distribution.
PROB_SUM_TOL = 1e-9
# Tolerance on perturbation balance and magnitude consistency.
PERTURBATION_TOL = 1e-12


class ValidationError(ValueError):
    """Raised when an input violates a documented precondition."""


@dataclass(frozen=True, eq=False)
class Distribution:
    """A probability mass function over an alphabet of size k >= 2.

    Entries are nonnegative and sum to one within ``PROB_SUM_TOL``.
    The probability array is frozen after validation.
    """

    probs: np.ndarray

    def __post_init__(self) -> None:
        probs = np.array(self.probs, dtype=np.float64, copy=True)
        if probs.ndim != 1 or probs.size == 0:
            raise ValidationError("probabilities must form a nonempty vector")
        if probs.size < 2:
            raise ValidationError("a distribution needs at least two symbols")
        if np.any(probs < 0.0):
            raise ValidationError("negative probability entry")
        total = float(probs.sum())
        if abs(total - 1.0) > PROB_SUM_TOL:
            raise ValidationError(f"probabilities sum to {total!r}, not 1")
        probs.flags.writeable = False
        object.__setattr__(self, "probs", probs)

    @property
    def k(self) -> int:
        """Alphabet size."""
        return int(self.probs.size)

    def __len__(self) -> int:
        return int(self.probs.size)


@dataclass(frozen=True, eq=False)
class Histogram:
    """Per-symbol sample counts together with their exact total."""

    counts: np.ndarray
    total: int

    def __post_init__(self) -> None:
        counts = np.array(self.counts, copy=True)
        if counts.ndim != 1 or counts.size == 0:
            raise ValidationError("counts must form a nonempty vector")
        if not np.issubdtype(counts.dtype, np.integer):
            rounded = np.rint(counts)
            if np.any(np.abs(counts - rounded) > 0):
                raise ValidationError("counts must be integers")
            counts = rounded.astype(np.int64)
        else:
            counts = counts.astype(np.int64)
        if np.any(counts < 0):
            raise ValidationError("negative count")
        if int(counts.sum()) != int(self.total):
            raise ValidationError("total does not equal the sum of counts")
        counts.flags.writeable = False
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "total", int(self.total))

    @classmethod
    def from_counts(cls, counts: Sequence[int] | np.ndarray) -> "Histogram":
        arr = np.asarray(counts)
        return cls(arr, int(arr.sum()))

    @property
    def k(self) -> int:
        return int(self.counts.size)


@dataclass(frozen=True, eq=False)
class PerturbationVector:
    """Multiplicative perturbation deltas, one per symbol.

    Each entry is at least -1/2, the deltas balance against the base
    distribution (sum_i delta_i * p_i = 0), and ``magnitude`` records
    sum_i p_i * |delta_i|.  Built with :func:`make_perturbation`.
    """

    deltas: np.ndarray
    magnitude: float

    def __post_init__(self) -> None:
        deltas = np.array(self.deltas, dtype=np.float64, copy=True)
        if deltas.ndim != 1 or deltas.size < 2:
            raise ValidationError("perturbation needs at least two entries")
        if np.any(deltas < -0.5 - PERTURBATION_TOL):
            raise ValidationError("perturbation entry below -1/2")
        deltas.flags.writeable = False
        object.__setattr__(self, "deltas", deltas)
        object.__setattr__(self, "magnitude", float(self.magnitude))


def make_distribution(weights: Sequence[float] | np.ndarray) -> Distribution:
    """Normalize nonnegative weights into a :class:`Distribution`.

    Raises :class:`ValidationError` for vectors with fewer than two
    entries, any negative entry, or an all-zero total.
    """
    w = np.asarray(weights, dtype=np.float64)
    if w.ndim != 1 or w.size < 2:
        raise ValidationError("need at least two weights")
    if np.any(w < 0.0):
        raise ValidationError("negative weight")
    total = float(w.sum())
    if total <= 0.0:
        raise ValidationError("weights sum to zero")
    return Distribution(w / total)


def uniform(k: int) -> Distribution:
    """The uniform distribution on k symbols."""
    k = int(k)
    if k < 2:
        raise ValidationError("alphabet size must be at least 2")
    return Distribution(np.full(k, 1.0 / k))


def spike(k: int, exponent: float, position: int = 0) -> Distribution:
    """Mass k**(-exponent) at ``position``, the rest spread uniformly.

    ``exponent`` must be positive so the spike mass stays below one.
    """
    k = int(k)
    if k < 2:
        raise ValidationError("alphabet size must be at least 2")
    exponent = float(exponent)
    if exponent <= 0.0:
        raise ValidationError("spike exponent must be positive")
    if not 0 <= int(position) < k:
        raise ValidationError("spike position out of range")
    mass = float(k) ** (-exponent)
    if mass >= 1.0:
        raise ValidationError("spike mass k**(-exponent) must be below 1")
    probs = np.full(k, (1.0 - mass) / (k - 1))
    probs[int(position)] = mass
    return Distribution(probs)


def almost_uniform(k: int, ratio: float, seed: int) -> Distribution:
    """Random masses in [1/(ratio*k), ratio/k], renormalized.

    ``ratio`` in [1, 4]; ratio 1 reproduces the uniform distribution.
    """
    k = int(k)
    if k < 2:
        raise ValidationError("alphabet size must be at least 2")
    ratio = float(ratio)
    if not 1.0 <= ratio <= 4.0:
        raise ValidationError("ratio must lie in [1, 4]")
    rng = np.random.default_rng(int(seed))
    w = rng.uniform(1.0 / (ratio * k), ratio / k, size=k)
    return make_distribution(w)


def parse_family_spec(spec: str) -> tuple[str, list[float]]:
    """Split a family spec ``name[:a,b,...]`` into name and numeric args."""
    name, _, argtext = str(spec).partition(":")
    name = name.strip().lower()
    if not name:
        raise ValidationError("empty family name")
    args: list[float] = []
    if argtext.strip():
        for piece in argtext.split(","):
            piece = piece.strip()
            if not piece:
                continue
            try:
                args.append(float(piece))
            except ValueError as exc:
                raise ValidationError(f"bad family argument {piece!r}") from exc
    return name, args


def gen_family(spec: str, k: int | None = None) -> Distribution:
    """Build a distribution from a compact family spec string.

    When ``k`` is supplied the spec is alphabet-free: ``uniform``,
    ``spike:EXPONENT[,POSITION]``, ``almost_uniform:RATIO[,SEED]``.
    Without ``k`` the first argument is the alphabet size, for example
    ``uniform:8`` or ``spike:64,2,0``.
    """
    name, args = parse_family_spec(spec)
    if k is None:
        if not args:
            raise ValidationError("family spec needs an alphabet size")
        k = int(args[0])
        args = args[1:]
    k = int(k)
    if name == "uniform":
        return uniform(k)
    if name == "spike":
        if not args:
            raise ValidationError("spike needs an exponent")
        position = int(args[1]) if len(args) > 1 else 0
        return spike(k, args[0], position)
    if name == "almost_uniform":
        if not args:
            raise ValidationError("almost_uniform needs a ratio")
        seed = int(args[1]) if len(args) > 1 else 0
        return almost_uniform(k, args[0], seed)
    raise ValidationError(f"unknown family {name!r}")


def sample_histogram(p: Distribution, n: int, seed: int) -> Histogram:
    """Draw n i.i.d. samples from p and return their histogram.

    Sampling is inverse-CDF over a precomputed cumulative array, so a
    given seed always yields the same histogram.
    """
    n = int(n)
    if n < 1:
        raise ValidationError("sample count must be at least 1")
    rng = np.random.default_rng(int(seed))
    cum = np.cumsum(p.probs)
    cum[-1] = 1.0
    idx = np.searchsorted(cum, rng.random(n), side="right")
    return Histogram.from_counts(np.bincount(idx, minlength=p.k))


def sample_histogram_poissonized(p: Distribution, n_mean: int, seed: int) -> Histogram:
    """Draw counts with each coordinate independently Poisson(n_mean * p_i)."""
    n_mean = int(n_mean)
    if n_mean < 1:
        raise ValidationError("mean sample count must be at least 1")
    rng = np.random.default_rng(int(seed))
    counts = rng.poisson(float(n_mean) * p.probs)
    return Histogram.from_counts(counts)


def total_variation(p: Distribution, p2: Distribution) -> float:
    """Total variation distance (1/2) * sum_i |p_i - p2_i|."""
    if p.k != p2.k:
        raise ValidationError("alphabet size mismatch")
    return float(0.5 * np.abs(p.probs - p2.probs).sum())


def make_perturbation(p: Distribution, deltas: Sequence[float] | np.ndarray) -> PerturbationVector:
    """Validate multiplicative deltas against p and record their magnitude."""
    d = np.asarray(deltas, dtype=np.float64)
    if d.shape != (p.k,):
        raise ValidationError("perturbation length must match the alphabet")
    balance = float(np.dot(d, p.probs))
    if abs(balance) > PERTURBATION_TOL:
        raise ValidationError(f"perturbation does not balance: sum delta*p = {balance!r}")
    magnitude = float(np.dot(np.abs(d), p.probs))
    return PerturbationVector(d, magnitude)


def validate_perturbation(p: Distribution, v: PerturbationVector) -> None:
    """Check that v is a valid perturbation of p; raise otherwise."""
    if v.deltas.shape != (p.k,):
        raise ValidationError("perturbation length must match the alphabet")
    balance = float(np.dot(v.deltas, p.probs))
    if abs(balance) > PERTURBATION_TOL:
        raise ValidationError(f"perturbation does not balance: sum delta*p = {balance!r}")
    magnitude = float(np.dot(np.abs(v.deltas), p.probs))
    if abs(magnitude - v.magnitude) > PERTURBATION_TOL:
        raise ValidationError("stored magnitude is inconsistent with the deltas")


def perturb(p: Distribution, v: PerturbationVector) -> Distribution:
    """Apply p_i -> p_i * (1 + delta_i) and return the perturbed distribution."""
    validate_perturbation(p, v)
    return Distribution(p.probs * (1.0 + v.deltas))


def read_distribution(path: str) -> Distribution:
    """Read a distribution file: one probability per line, '#' comments."""
    values: list[float] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            try:
                values.append(float(text))
            except ValueError as exc:
                raise ValidationError(f"{path}:{lineno}: bad probability {text!r}") from exc
    if not values:
        raise ValidationError(f"{path}: no probabilities found")
    return Distribution(np.asarray(values))


def write_distribution(path: str, p: Distribution) -> None:
    """Write a distribution in the one-probability-per-line format."""
    with open(path, "w", encoding="utf-8") as fh:
        for value in p.probs:
            fh.write(f"{float(value)!r}\n")
