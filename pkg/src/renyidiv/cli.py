"""Command-line harness.

Subcommands: ``estimate`` (one-shot divergence estimate), ``sweep``
(scaling-law experiments over alphabet and sample sizes, CSV output),
``lowerbound`` (witness-pair construction with an optional empirical
distinguishing check), ``verify`` (oracle-vs-estimator exactness grid),
and ``monitor`` (sliding-window divergence monitor over a symbol
stream).

Every command is deterministic given its configuration, including the
master seed.  Options may come from a config file (key = value lines in
a section named after the subcommand); explicit flags win.  Exit codes:
0 success, 1 input or configuration error, 2 undefined estimate.
"""

from __future__ import annotations

import argparse
import configparser
import json
import math
import sys
from dataclasses import dataclass, field
from decimal import Decimal
from typing import Iterable, Iterator, TextIO

import numpy as np

from .bounds import sufficient_n, theorem1_condition, witness_pair_uniform
from .dist import (
    Distribution,
    Histogram,
    ValidationError,
    gen_family,
    make_distribution,
    read_distribution,
    sample_histogram,
)
from .divergence import as_order, error_conversion_inverse, power_sum, renyi_divergence
from .estimators import EstimatorConfig, estimate_divergence
from .oracle import exact_mean_and_variance, variance_bound

__all__ = [
    "ExperimentConfig",
    "MonitorConfig",
    "derive_seed",
    "empirical_failure",
    "run_sweep",
    "write_sweep_csv",
    "empirical_complexities",
    "run_lowerbound",
    "run_verify",
    "monitor_stream",
    "main",
]

CSV_COLUMNS = (
    "k",
    "n",
    "trials",
    "empirical_error_prob",
    "mean_abs_error_bits",
    "theorem1_lhs",
    "sufficient_n",
    "implied_lower_n",
)

VERIFY_K = (2, 3)
VERIFY_N = (3, 4, 6)
VERIFY_ALPHA = (2, 3)
VERIFY_EXACT_TOL = 1e-12
VERIFY_POISSON_TOL = 1e-9
VERIFY_DEFAULT_SEED = 20240814


def derive_seed(master: int, *key: int) -> int:
    """Deterministic 64-bit stream seed from a master seed and key parts.

    Per-trial seeds are then ``derive_seed(...) XOR trial_index``.
    """
    ss = np.random.SeedSequence(
        entropy=int(master) & ((1 << 128) - 1),
        spawn_key=tuple(abs(int(x)) for x in key),
    )
    return int(ss.generate_state(1, np.uint64)[0])


def _fmt(value) -> str:
    """Serialize a number with 12 significant digits."""
    if isinstance(value, int):
        try:
            return "%.12g" % float(value)
        except OverflowError:
            return f"{Decimal(value):.11E}"
    return "%.12g" % float(value)


@dataclass
class ExperimentConfig:
    """Sweep configuration: estimator, families, ranges, and seeds."""

    k_values: list[int] = field(default_factory=list)
    n_values: list[int] = field(default_factory=list)
    alpha: float = 2.0
    method: str = "corrected"
    normalization: str = "exact"
    p_family: str = "uniform"
    q_family: str = "uniform"
    delta: float = 0.5
    epsilon: float = 1.0 / 3.0
    trials: int = 200
    master_seed: int = 0
    slack: float = 0.25


@dataclass
class MonitorConfig:
    """Sliding-window monitor: window and stride in symbols, threshold in bits."""

    window_size: int
    stride: int
    threshold: float
    alpha: float = 2.0

    def __post_init__(self) -> None:
        self.window_size = int(self.window_size)
        self.stride = int(self.stride)
        self.threshold = float(self.threshold)
        if self.window_size < 1:
            raise ValidationError("window size must be at least 1")
        if not 1 <= self.stride <= self.window_size:
            raise ValidationError("stride must lie in [1, window_size]")
        if self.threshold < 0.0:
            raise ValidationError("threshold must be nonnegative")


def empirical_failure(
    p: Distribution,
    q: Distribution,
    est_cfg: EstimatorConfig,
    n: int,
    delta: float,
    trials: int,
    seed: int,
    d_true: float | None = None,
) -> tuple[float, float]:
    """Monte Carlo failure fraction and mean absolute error in bits.

    A trial fails when the estimate is undefined or misses the true
    divergence by more than delta; the mean error averages over the
    defined estimates (NaN if none were defined).  Trial t samples with
    seed ``seed XOR t``.
    """
    if int(trials) < 1:
        raise ValidationError("trials must be at least 1")
    if d_true is None:
        d_true = renyi_divergence(p, q, est_cfg.order)
    fails = 0
    defined = 0
    err_sum = 0.0
    for t in range(int(trials)):
        hist = sample_histogram(p, n, int(seed) ^ t)
        est = estimate_divergence(hist, q, est_cfg)
        if est is None:
            fails += 1
            continue
        err = abs(est - d_true)
        defined += 1
        err_sum += err
        if err > delta:
            fails += 1
    mean_abs = err_sum / defined if defined else math.nan
    return fails / int(trials), mean_abs


def run_sweep(cfg: ExperimentConfig) -> list[dict]:
    """Run the sweep grid and return one row dict per (k, n) pair.

    Rows are produced in (k, n) order with per-trial seeds derived from
    the master seed, so the output does not depend on scheduling.
    """
    if not cfg.k_values or not cfg.n_values:
        raise ValidationError("sweep needs at least one k and one n")
    if int(cfg.trials) < 1:
        raise ValidationError("trials must be at least 1")
    order = as_order(cfg.alpha)
    est_cfg = EstimatorConfig(cfg.method, order, cfg.normalization)
    rows: list[dict] = []
    for k in cfg.k_values:
        q = gen_family(cfg.q_family, k=k)
        if cfg.p_family.strip().lower() == "witness":
            p = witness_pair_uniform(q, order).p_prime
        else:
            p = gen_family(cfg.p_family, k=k)
        d_true = renyi_divergence(p, q, order)
        # The sweep delta is additive (bits); the sufficient-n condition is
        # stated for a multiplicative power-sum accuracy, so convert first.
        delta_mult = error_conversion_inverse(cfg.delta, order)
        suff = sufficient_n(p, q, order, delta_mult, cfg.epsilon, cfg.slack)
        implied = witness_pair_uniform(q, order).implied_n
        for n in cfg.n_values:
            base = derive_seed(cfg.master_seed, k, n)
            fail, mean_abs = empirical_failure(
                p, q, est_cfg, n, cfg.delta, cfg.trials, base, d_true
            )
            rows.append(
                {
                    "k": int(k),
                    "n": int(n),
                    "trials": int(cfg.trials),
                    "empirical_error_prob": fail,
                    "mean_abs_error_bits": mean_abs,
                    "theorem1_lhs": theorem1_condition(p, q, order, n),
                    "sufficient_n": suff,
                    "implied_lower_n": implied,
                }
            )
    return rows


def write_sweep_csv(rows: Iterable[dict], stream: TextIO) -> None:
    """Write sweep rows in the fixed column order, 12 significant digits."""
    stream.write(",".join(CSV_COLUMNS) + "\n")
    for row in rows:
        stream.write(",".join(_fmt(row[col]) for col in CSV_COLUMNS) + "\n")


def empirical_complexities(rows: Iterable[dict], target: float = 1.0 / 3.0) -> dict[int, int | None]:
    """Per-k minimal swept n whose empirical error probability is <= target."""
    best: dict[int, int | None] = {}
    for row in rows:
        k = int(row["k"])
        best.setdefault(k, None)
        if row["empirical_error_prob"] <= target:
            n = int(row["n"])
            if best[k] is None or n < best[k]:
                best[k] = n
    return best


def run_lowerbound(
    q_family: str,
    k: int,
    alpha: float,
    trials: int = 400,
    seed: int = 0,
    check: bool = False,
) -> dict:
    """Build the uniform-p witness pair for q and optionally check it empirically.

    The check runs the corrected estimator with a tenth of the implied
    sample budget at accuracy half the divergence gap; distinguishing p
    from p' at that accuracy must fail often on at least one of them.
    """
    order = as_order(alpha)
    q = gen_family(q_family, k=int(k))
    wp = witness_pair_uniform(q, order)
    record = wp.to_json_dict()
    if check:
        n = max(1, round(wp.implied_n / 10.0))
        delta = wp.divergence_gap / 2.0
        est_cfg = EstimatorConfig("corrected", order, "exact")
        fail_p, _ = empirical_failure(
            wp.p, q, est_cfg, n, delta, trials, derive_seed(seed, 0)
        )
        fail_pp, _ = empirical_failure(
            wp.p_prime, q, est_cfg, n, delta, trials, derive_seed(seed, 1)
        )
        record["empirical_check"] = {
            "n": n,
            "trials": int(trials),
            "failure_p": fail_p,
            "failure_p_prime": fail_pp,
            "passed": max(fail_p, fail_pp) > 1.0 / 3.0,
        }
    return record


def _verify_instances(seed: int, k: int, n: int, alpha: int, pairs: int):
    for pair in range(pairs):
        rng = np.random.default_rng(derive_seed(seed, k, n, alpha, pair))
        p = make_distribution(rng.uniform(0.05, 1.0, k))
        q = make_distribution(rng.uniform(0.1, 1.0, k))
        yield p, q

def run_verify(
    pairs: int = 5,
    seed: int = VERIFY_DEFAULT_SEED,
    corrupt_normalization: bool = False,
    stream: TextIO | None = None,
) -> bool:
    """Oracle-vs-estimator exactness grid; returns True when all checks pass.

    For every (k, n, alpha) instance: the corrected/exact estimator mean
    under full multinomial enumeration must equal the power sum to
    1e-12, the corrected/poissonized mean under truncated enumeration to
    1e-9, and the exact poissonized variance must not exceed the
    closed-form bound.  ``corrupt_normalization`` deliberately runs the
    wrong normalization in the first check, as a self-test hook.
    """
    out = stream if stream is not None else sys.stdout
    all_ok = True
    header = f"{'instance':<18} {'exact_bias':>12} {'poiss_bias':>12} {'var_margin':>12} status"
    out.write(header + "\n")
    for k in VERIFY_K:
        for n in VERIFY_N:
            for alpha in VERIFY_ALPHA:
                order = as_order(float(alpha))
                worst_exact = 0.0
                worst_poiss = 0.0
                worst_margin = math.inf
                for p, q in _verify_instances(seed, k, n, alpha, pairs):
                    m = power_sum(p, q, order)
                    scale = max(1.0, m)
                    normalization = "poissonized" if corrupt_normalization else "exact"
                    cfg = EstimatorConfig("corrected", order, normalization)
                    mean, _ = exact_mean_and_variance(
                        p, q, order, n, cfg, sampling="multinomial"
                    )
                    worst_exact = max(worst_exact, abs(mean - m) / scale)
                    pcfg = EstimatorConfig("corrected", order, "poissonized")
                    pmean, pvar = exact_mean_and_variance(p, q, order, n, pcfg)
                    worst_poiss = max(worst_poiss, abs(pmean - m) / scale)
                    worst_margin = min(worst_margin, variance_bound(p, q, order, n) - pvar)
                ok = (
                    worst_exact <= VERIFY_EXACT_TOL
                    and worst_poiss <= VERIFY_POISSON_TOL
                    and worst_margin >= 0.0
                )
                all_ok = all_ok and ok
                label = f"k={k} n={n} alpha={alpha}"
                out.write(
                    f"{label:<18} {worst_exact:>12.3e} {worst_poiss:>12.3e} "
                    f"{worst_margin:>12.3e} {'PASS' if ok else 'FAIL'}\n"
                )
    out.write(("all checks passed" if all_ok else "FAILURES detected") + "\n")
    return all_ok


def monitor_stream(
    symbols: Iterable[int], ref: Distribution, cfg: MonitorConfig
) -> Iterator[dict]:
    """Sliding-window divergence monitor over a symbol stream.

    Emits a record at the first full window and then every stride
    symbols: window position, corrected/exact divergence estimate of the
    window histogram against the reference (None when undefined), an
    alarm flag (undefined estimates alarm too), and the count of
    window symbols outside the reference alphabet (such symbols occupy
    window slots but never enter the histogram).
    """
    est_cfg = EstimatorConfig("corrected", as_order(cfg.alpha), "exact")
    k = ref.k
    counts = np.zeros(k, dtype=np.int64)
    window: list[int] = [0] * cfg.window_size
    invalid = 0
    position = 0
    for raw in symbols:
        symbol = int(raw)
        if symbol < 0:
            raise ValidationError("negative symbol index in stream")
        slot = position % cfg.window_size
        if position >= cfg.window_size:
            old = window[slot]
            if old >= 0:
                counts[old] -= 1
            else:
                invalid -= 1
        if symbol < k:
            counts[symbol] += 1
            window[slot] = symbol
        else:
            invalid += 1
            window[slot] = -1
        position += 1
        if position >= cfg.window_size and (position - cfg.window_size) % cfg.stride == 0:
            total = cfg.window_size - invalid
            if total >= 1:
                hist = Histogram.from_counts(counts)
                est = estimate_divergence(hist, ref, est_cfg)
            else:
                est = None
            yield {
                "position": position,
                "estimate_bits": est,
                "alarm": est is None or est > cfg.threshold,
                "invalid_symbols": invalid,
            }


# ---------------------------------------------------------------------------
# argument handling


def _load_section(path: str | None, section: str) -> dict[str, str]:
    if not path:
        return {}
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
    try:
        with open(path, "r", encoding="utf-8") as fh:
            parser.read_file(fh)
    except (OSError, configparser.Error) as exc:
        raise ValidationError(f"cannot read config file {path}: {exc}") from exc
    if not parser.has_section(section):
        return {}
    return dict(parser.items(section))


def _resolve(flag_value, section: dict[str, str], key: str, cast, default):
    if flag_value is not None:
        return flag_value
    if key in section:
        raw = section[key]
        try:
            return cast(raw)
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"bad config value for {key}: {raw!r}") from exc
    return default


def _cast_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _parse_geometric(text: str, factor_allowed: bool, what: str) -> list[int]:
    """Parse MIN:MAX[:FACTOR] into a geometric integer grid (k grids double)."""
    parts = str(text).split(":")
    if len(parts) not in (2, 3) or (len(parts) == 3 and not factor_allowed):
        raise ValidationError(f"bad {what} range {text!r}")
    try:
        lo = int(parts[0])
        hi = int(parts[1])
        factor = float(parts[2]) if len(parts) == 3 else 2.0
    except ValueError as exc:
        raise ValidationError(f"bad {what} range {text!r}") from exc
    if lo < 1 or hi < lo or factor <= 1.0:
        raise ValidationError(f"bad {what} range {text!r}")
    values: list[int] = []
    x = float(lo)
    while True:
        v = int(round(x))
        if v > hi:
            break
        if not values or v != values[-1]:
            values.append(v)
        x *= factor
    if not values:
        raise ValidationError(f"empty {what} range {text!r}")
    return values


def _read_sample_histogram(path: str, k: int) -> Histogram:
    counts = np.zeros(k, dtype=np.int64)
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            try:
                symbol = int(text)
            except ValueError as exc:
                raise ValidationError(f"{path}:{lineno}: bad symbol {text!r}") from exc
            if not 0 <= symbol < k:
                raise ValidationError(
                    f"{path}:{lineno}: symbol {symbol} outside the reference alphabet"
                )
            counts[symbol] += 1
    if counts.sum() < 1:
        raise ValidationError(f"{path}: no samples found")
    return Histogram.from_counts(counts)


def _iter_symbol_lines(stream: TextIO) -> Iterator[int]:
    for lineno, line in enumerate(stream, start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        try:
            value = int(text)
        except ValueError as exc:
            raise ValidationError(f"stream line {lineno}: bad symbol {text!r}") from exc
        if value < 0:
            raise ValidationError(f"stream line {lineno}: negative symbol index")
        yield value


def _cmd_estimate(args: argparse.Namespace) -> int:
    section = _load_section(args.config, "estimate")
    ref = _resolve(args.ref, section, "ref", str, None)
    if ref is None:
        raise ValidationError("estimate needs a reference distribution file (--ref)")
    q = read_distribution(ref)
    samples = _resolve(args.samples, section, "samples", str, None)
    gen = _resolve(args.gen, section, "gen", str, None)
    alpha = _resolve(args.alpha, section, "alpha", float, 2.0)
    method = _resolve(args.method, section, "method", str, "corrected")
    normalization = _resolve(args.normalization, section, "normalization", str, "exact")
    n_opt = _resolve(args.n, section, "n", int, None)
    seed = _resolve(args.seed, section, "seed", int, 0)
    if (samples is None) == (gen is None):
        raise ValidationError("provide exactly one of --samples and --gen")
    if samples is not None:
        hist = _read_sample_histogram(samples, q.k)
    else:
        if n_opt is None:
            raise ValidationError("--gen needs a sample count (--n)")
        try:
            p = gen_family(gen)
        except ValidationError:
            p = gen_family(gen, k=q.k)
        if p.k != q.k:
            raise ValidationError("generator alphabet size differs from the reference")
        hist = sample_histogram(p, n_opt, seed)
    cfg = EstimatorConfig(method, as_order(alpha), normalization)
    est = estimate_divergence(hist, q, cfg)
    if est is None:
        sys.stderr.write(
            f"undefined estimate: every symbol count is below alpha = {cfg.order.alpha:g}, "
            "so all falling powers vanish\n"
        )
        return 2
    record = {
        "estimate_bits": est,
        "method": method,
        "n": hist.total,
        "alpha": cfg.order.alpha,
    }
    sys.stdout.write(json.dumps(record) + "\n")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    section = _load_section(args.config, "sweep")
    k_single = _resolve(args.k, section, "k", int, None)
    k_range = _resolve(args.k_range, section, "k_range", str, None)
    n_single = _resolve(args.n, section, "n", int, None)
    n_range = _resolve(args.n_range, section, "n_range", str, None)
    if (k_single is None) == (k_range is None):
        raise ValidationError("provide exactly one of --k and --k-range")
    if (n_single is None) == (n_range is None):
        raise ValidationError("provide exactly one of --n and --n-range")
    cfg = ExperimentConfig(
        k_values=[k_single] if k_single is not None else _parse_geometric(k_range, False, "k"),
        n_values=[n_single] if n_single is not None else _parse_geometric(n_range, True, "n"),
        alpha=_resolve(args.alpha, section, "alpha", float, 2.0),
        method=_resolve(args.method, section, "method", str, "corrected"),
        normalization=_resolve(args.normalization, section, "normalization", str, "exact"),
        p_family=_resolve(args.p_family, section, "p_family", str, "uniform"),
        q_family=_resolve(args.q_family, section, "q_family", str, "uniform"),
        delta=_resolve(args.delta, section, "delta", float, 0.5),
        epsilon=_resolve(args.epsilon, section, "epsilon", float, 1.0 / 3.0),
        trials=_resolve(args.trials, section, "trials", int, 200),
        master_seed=_resolve(args.seed, section, "seed", int, 0),
        slack=_resolve(args.slack, section, "slack", float, 0.25),
    )
    rows = run_sweep(cfg)
    output = _resolve(args.output, section, "output", str, "-")
    if output == "-":
        write_sweep_csv(rows, sys.stdout)
    else:
        with open(output, "w", encoding="utf-8") as fh:
            write_sweep_csv(rows, fh)
    return 0


def _cmd_lowerbound(args: argparse.Namespace) -> int:
    section = _load_section(args.config, "lowerbound")
    k = _resolve(args.k, section, "k", int, None)
    if k is None:
        raise ValidationError("lowerbound needs an alphabet size (--k)")
    check = args.check if args.check is not None else _resolve(
        None, section, "check", _cast_bool, False
    )
    record = run_lowerbound(
        q_family=_resolve(args.q_family, section, "q_family", str, "uniform"),
        k=k,
        alpha=_resolve(args.alpha, section, "alpha", float, 2.0),
        trials=_resolve(args.trials, section, "trials", int, 400),
        seed=_resolve(args.seed, section, "seed", int, 0),
        check=check,
    )
    sys.stdout.write(json.dumps(record) + "\n")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    section = _load_section(args.config, "verify")
    ok = run_verify(
        pairs=_resolve(args.pairs, section, "pairs", int, 5),
        seed=_resolve(args.seed, section, "seed", int, VERIFY_DEFAULT_SEED),
        corrupt_normalization=bool(args.corrupt_normalization),
    )
    return 0 if ok else 1


def _cmd_monitor(args: argparse.Namespace) -> int:
    section = _load_section(args.config, "monitor")
    ref_path = _resolve(args.ref, section, "ref", str, None)
    if ref_path is None:
        raise ValidationError("monitor needs a reference distribution file (--ref)")
    window = _resolve(args.window, section, "window", int, None)
    if window is None:
        raise ValidationError("monitor needs a window size (--window)")
    threshold = _resolve(args.threshold, section, "threshold", float, None)
    if threshold is None:
        raise ValidationError("monitor needs an alarm threshold (--threshold)")
    cfg = MonitorConfig(
        window_size=window,
        stride=_resolve(args.stride, section, "stride", int, window),
        threshold=threshold,
        alpha=_resolve(args.alpha, section, "alpha", float, 2.0),
    )
    ref = read_distribution(ref_path)
    input_path = _resolve(args.input, section, "input", str, "-")
    stream = sys.stdin if input_path == "-" else open(input_path, "r", encoding="utf-8")
    try:
        for record in monitor_stream(_iter_symbol_lines(stream), ref, cfg):
            sys.stdout.write(json.dumps(record) + "\n")
    finally:
        if stream is not sys.stdin:
            stream.close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="renyidiv",
        description="Renyi divergence estimation against a known reference",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    est = sub.add_parser("estimate", help="estimate a divergence from samples")
    est.add_argument("--ref", help="reference distribution file")
    est.add_argument("--samples", help="file of symbol indices, one per line")
    est.add_argument("--gen", help="family spec to sample from, e.g. spike:64,2,0")
    est.add_argument("--n", type=int, help="sample count for --gen")
    est.add_argument("--seed", type=int, help="sampling seed for --gen")
    est.add_argument("--alpha", type=float, help="divergence order (default 2)")
    est.add_argument("--method", choices=("plugin", "corrected"))
    est.add_argument("--normalization", choices=("poissonized", "exact"))
    est.add_argument("--config", help="config file (section [estimate])")
    est.set_defaults(func=_cmd_estimate)

    sw = sub.add_parser("sweep", help="scaling-law sweep, CSV output")
    sw.add_argument("--k", type=int, help="single alphabet size")
    sw.add_argument("--k-range", dest="k_range", help="MIN:MAX, doubling")
    sw.add_argument("--n", type=int, help="single sample size")
    sw.add_argument("--n-range", dest="n_range", help="MIN:MAX[:FACTOR], geometric")
    sw.add_argument("--alpha", type=float)
    sw.add_argument("--method", choices=("plugin", "corrected"))
    sw.add_argument("--normalization", choices=("poissonized", "exact"))
    sw.add_argument("--p-family", dest="p_family", help="family spec or 'witness'")
    sw.add_argument("--q-family", dest="q_family")
    sw.add_argument("--delta", type=float, help="accuracy in bits (default 0.5)")
    sw.add_argument("--epsilon", type=float, help="failure probability (default 1/3)")
    sw.add_argument("--trials", type=int)
    sw.add_argument("--seed", type=int, help="master seed")
    sw.add_argument("--slack", type=float)
    sw.add_argument("--output", help="CSV path, or - for stdout")
    sw.add_argument("--config", help="config file (section [sweep])")
    sw.set_defaults(func=_cmd_sweep)

    lb = sub.add_parser("lowerbound", help="witness pair and implied lower bound")
    lb.add_argument("--k", type=int, help="alphabet size")
    lb.add_argument("--q-family", dest="q_family", help="reference family spec")
    lb.add_argument("--alpha", type=float)
    lb.add_argument("--trials", type=int)
    lb.add_argument("--seed", type=int)
    lb.add_argument("--check", action="store_const", const=True, default=None,
                    help="run the empirical distinguishing check")
    lb.add_argument("--config", help="config file (section [lowerbound])")
    lb.set_defaults(func=_cmd_lowerbound)

    ver = sub.add_parser("verify", help="oracle-vs-estimator exactness grid")
    ver.add_argument("--pairs", type=int, help="seeded (p, q) pairs per instance")
    ver.add_argument("--seed", type=int)
    ver.add_argument("--corrupt-normalization", action="store_true",
                     help=argparse.SUPPRESS)
    ver.add_argument("--config", help="config file (section [verify])")
    ver.set_defaults(func=_cmd_verify)

    mon = sub.add_parser("monitor", help="sliding-window stream monitor")
    mon.add_argument("--ref", help="reference distribution file")
    mon.add_argument("--window", type=int, help="window size in symbols")
    mon.add_argument("--stride", type=int, help="symbols between records")
    mon.add_argument("--threshold", type=float, help="alarm threshold in bits")
    mon.add_argument("--alpha", type=float)
    mon.add_argument("--input", help="symbol stream file, or - for stdin")
    mon.add_argument("--config", help="config file (section [monitor])")
    mon.set_defaults(func=_cmd_monitor)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
