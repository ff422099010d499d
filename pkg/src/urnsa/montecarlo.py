"""Reproducible parallel Monte Carlo for urn and synthetic ensembles.

Every path's randomness is a pure function of (master_seed, path_index),
so an ensemble is simulated in path chunks that can be assigned to any
number of worker threads in any order: results are reassembled by path
index and reduced in a fixed order.  Running the same EnsembleConfig twice,
with any thread count, produces bit-identical results.

The per-step urn update is vectorized across the paths of a chunk; the
scalar urn_step in the urn module defines the semantics and the kernel here
reproduces it decision for decision (white iff u < W/T, counts advanced by
matrix rows).
"""
from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import rng
from .drift import DriftPoly
from .errors import ConfigError, DegenerateVarianceError
from .limits import LimitPrediction, Regime, classify, reference_prediction
from .sa import StepFamily, SyntheticProcess, weight
from .special import normal_cdf
from .urn import (
    COUNT_LIMIT,
    ReplacementMatrix,
    drift_from_matrix,
    error_poly_from_matrix,
)

# asymptotic Kolmogorov-Smirnov critical constants, valid for n >= 1000
KS_CONSTANTS = {0.05: 1.358, 0.01: 1.628}

_CHUNK_PATHS = 262144
_BLOCK_ELEMENTS = 1 << 21

_SCALED_REGIMES = (
    Regime.CLT_SQRT_N,
    Regime.CLT_SQRT_N_OVER_LOG,
    Regime.AS_POWER_LAW,
)


def checkpoint_schedule(horizon: int, factor: int = 2) -> list[int]:
    """Geometric checkpoints 1, factor, factor^2, ... capped by the horizon.

    Strictly increasing, always ending exactly at the horizon.  A zero
    horizon has the single checkpoint 0.
    """
    if horizon < 0:
        raise ConfigError("horizon must be nonnegative")
    if factor < 2:
        raise ConfigError("checkpoint factor must be at least 2")
    if horizon == 0:
        return [0]
    cps = []
    c = 1
    while c < horizon:
        cps.append(c)
        c *= factor
    cps.append(horizon)
    return cps


@dataclass(frozen=True)
class EnsembleConfig:
    """Full identity of one Monte Carlo run.

    Exactly one of matrix or synthetic must be set.  threads is an
    execution knob and never affects the produced numbers.
    """

    matrix: ReplacementMatrix | None = None
    synthetic: SyntheticProcess | None = None
    w0: float = 1.0
    b0: float = 1.0
    horizon: int = 100_000
    paths: int = 10_000
    master_seed: int = 0
    checkpoint_factor: int = 2
    forced_scaling: tuple[float, float] | None = None
    forced_center: float | None = None
    threads: int = 1

    def __post_init__(self) -> None:
        if (self.matrix is None) == (self.synthetic is None):
            raise ConfigError("exactly one of matrix or synthetic must be set")
        if self.paths < 1:
            raise ConfigError("need at least one path")
        if self.horizon < 0:
            raise ConfigError("horizon must be nonnegative")
        if self.checkpoint_factor < 2:
            raise ConfigError("checkpoint factor must be at least 2")
        if self.threads < 1:
            raise ConfigError("threads must be at least 1")
        if self.matrix is not None:
            if self.w0 <= 0.0 or self.b0 <= 0.0:
                raise ConfigError("initial counts must be positive")
            max_row = max(self.matrix.row_white, self.matrix.row_black)
            if self.w0 + self.b0 + self.horizon * max_row >= COUNT_LIMIT:
                raise ConfigError(
                    "horizon would push counts beyond exact double range"
                )


@dataclass(frozen=True)
class Moments:
    mean: float
    variance: float
    skewness: float | None
    count: int


@dataclass(frozen=True)
class KSReport:
    """Kolmogorov-Smirnov distance with asymptotic pass/fail verdicts."""

    d: float
    count: int
    threshold_5: float
    threshold_1: float
    pass_at_5: bool
    pass_at_1: bool
    reference: str


@dataclass(frozen=True)
class CheckpointSummary:
    n: int
    mean: float
    variance: float


@dataclass(frozen=True)
class PathCheckpointData:
    """Checkpoint trace of a single path: X_n, T_n and X_{n-1}."""

    ns: np.ndarray
    x: np.ndarray
    t: np.ndarray
    x_prev: np.ndarray


@dataclass(eq=False)
class EnsembleResult:
    """Everything a run produces; arrays are ordered by path index."""

    config: EnsembleConfig
    prediction: LimitPrediction | None
    scaling: tuple[float, float]
    center: float
    values: np.ndarray
    final_x: np.ndarray
    moments: Moments
    ks: KSReport | None
    checkpoints: list[int]
    checkpoint_summaries: list[CheckpointSummary]
    cp_x: np.ndarray
    cp_t: np.ndarray | None
    cp_x_prev: np.ndarray | None
    reference_scaled_mean: float | None = None

    def path_checkpoints(self, path_index: int) -> PathCheckpointData:
        if self.cp_t is None or self.cp_x_prev is None:
            raise ConfigError("checkpoint totals only recorded for urn runs")
        return PathCheckpointData(
            ns=np.asarray(self.checkpoints, dtype=np.int64),
            x=self.cp_x[:, path_index].copy(),
            t=self.cp_t[:, path_index].copy(),
            x_prev=self.cp_x_prev[:, path_index].copy(),
        )


def sample_moments(values: Sequence[float]) -> Moments:
    """Mean, unbiased variance and skewness m3/m2^(3/2) of a sample.

    Two values give no skewness; three or more values of zero spread make
    the skewness undefined and raise DegenerateVarianceError.
    """
    v = np.asarray(values, dtype=np.float64)
    n = v.size
    if n < 2:
        raise ConfigError("moments need at least two values")
    mean = float(np.mean(v))
    variance = float(np.var(v, ddof=1))
    if n == 2:
        return Moments(mean=mean, variance=variance, skewness=None, count=2)
    d = v - mean
    m2 = float(np.mean(d * d))
    if m2 == 0.0:
        raise DegenerateVarianceError("skewness undefined for constant sample")
    m3 = float(np.mean(d * d * d))
    return Moments(mean=mean, variance=variance, skewness=m3 / m2**1.5, count=n)


def _summary_moments(values: np.ndarray) -> Moments:
    try:
        return sample_moments(values)
    except DegenerateVarianceError:
        mean = float(np.mean(values))
        return Moments(mean=mean, variance=0.0, skewness=None, count=values.size)


def ks_statistic(values: Sequence[float], cdf: Callable[[float], float]) -> float:
    """Kolmogorov-Smirnov distance between a sample and a distribution.

    D = max_i max( i/N - F(x_(i)), F(x_(i)) - (i-1)/N ) over the sorted
    sample, the exact sup-distance between the empirical step function
    and F.
    """
    xs = np.sort(np.asarray(values, dtype=np.float64))
    n = xs.size
    if n < 1:
        raise ConfigError("KS distance needs at least one value")
    f = np.array([cdf(float(x)) for x in xs])
    i = np.arange(1, n + 1, dtype=np.float64)
    upper = float(np.max(i / n - f))
    lower = float(np.max(f - (i - 1.0) / n))
    return max(upper, lower)


def ks_report(
    values: np.ndarray, cdf: Callable[[float], float], reference: str
) -> KSReport:
    d = ks_statistic(values, cdf)
    n = values.size
    t5 = KS_CONSTANTS[0.05] / math.sqrt(n)
    t1 = KS_CONSTANTS[0.01] / math.sqrt(n)
    return KSReport(
        d=d,
        count=n,
        threshold_5=t5,
        threshold_1=t1,
        pass_at_5=d <= t5,
        pass_at_1=d <= t1,
        reference=reference,
    )


def as_convergence_check(
    checkpoints: Sequence[tuple[int, float]], p: float, exponent: float
) -> float:
    """Max successive deviation of s_k = n_k^exponent (x_k - p), tail half.

    Small values witness path-wise convergence of the scaled sequence.
    Needs at least four checkpoints.
    """
    _, tail = deviation_split(checkpoints, p, exponent)
    return tail


def deviation_split(
    checkpoints: Sequence[tuple[int, float]], p: float, exponent: float
) -> tuple[float, float]:
    """Max successive deviations over the first and last halves."""
    if len(checkpoints) < 4:
        raise ConfigError("need at least four checkpoints")
    s = []
    for n, x in checkpoints:
        if n < 1:
            raise ConfigError("checkpoints must have index >= 1")
        s.append(n**exponent * (x - p))
    devs = [abs(s[i + 1] - s[i]) for i in range(len(s) - 1)]
    half = len(devs) // 2
    return max(devs[:half]), max(devs[half:])


@dataclass(frozen=True)
class RateReport:
    """How fast the realized step rate approaches its limit."""

    sup_ratio: float
    max_critical_gap: float | None


def gamma_hat_rate_check(
    data: PathCheckpointData,
    m: ReplacementMatrix,
    prediction: LimitPrediction,
) -> RateReport:
    """Check gamma_hat_n = n gamma_n h(X_{n-1}) against its limit.

    sup_ratio bounds |gamma_hat_n - gamma_hat| relative to the envelope
    |X_n - p| + 1/n.  For critical matrices the report also carries
    max |gamma_hat_n - 1/2| * ln n, which must vanish for the log-scaled
    CLT to hold.
    """
    if prediction.p is None or prediction.gamma_hat is None:
        raise ConfigError("rate check needs a prediction with a target")
    drift = drift_from_matrix(m)
    p = prediction.p
    sup_ratio = 0.0
    max_gap = 0.0
    for i in range(data.ns.size):
        n = int(data.ns[i])
        if n < 1:
            continue
        gh_n = n / data.t[i] * drift.h(float(data.x_prev[i]), p)
        envelope = abs(float(data.x[i]) - p) + 1.0 / n
        sup_ratio = max(sup_ratio, abs(gh_n - prediction.gamma_hat) / envelope)
        max_gap = max(max_gap, abs(gh_n - 0.5) * math.log(n))
    critical = prediction.regime is Regime.CLT_SQRT_N_OVER_LOG
    return RateReport(
        sup_ratio=sup_ratio, max_critical_gap=max_gap if critical else None
    )


# ---------------------------------------------------------------------------
# vectorized kernels


def _run_urn_chunk(
    m: ReplacementMatrix,
    w0: float,
    b0: float,
    horizon: int,
    keys: np.ndarray,
    cps: list[int],
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    k = keys.size
    n_cp = len(cps)
    w = np.full(k, w0, dtype=np.float64)
    t = np.full(k, w0 + b0, dtype=np.float64)
    cp_x = np.empty((n_cp, k), dtype=np.float64)
    cp_t = np.empty((n_cp, k), dtype=np.float64)
    cp_x_prev = np.empty((n_cp, k), dtype=np.float64)
    ci = 0
    if cps[0] == 0:
        cp_x[0] = w / t
        cp_t[0] = t
        cp_x_prev[0] = np.nan
        ci = 1
    a, c = m.a, m.c
    row_w, row_b = m.row_white, m.row_black
    # reusable buffers keep the per-step loop allocation-free
    x = np.empty(k, dtype=np.float64)
    white = np.empty(k, dtype=bool)
    tmp = np.empty(k, dtype=np.float64)
    balanced = row_w == row_b
    # integer-valued counts make every addition exact, so the cheap split
    # update (add the delta, then add the base) is bit-identical to the
    # scalar stepper; fractional entries pay for a separate black tally so
    # the total keeps the scalar grouping (w + a) + (black + b)
    exact = all(float(v).is_integer() for v in (a, m.b, c, m.d, w0, b0))
    if not exact:
        bl = np.full(k, b0, dtype=np.float64)
    block = max(1, _BLOCK_ELEMENTS // max(k, 1))
    j = 1
    while j <= horizon:
        count = min(block, horizon - j + 1)
        u = rng.uniform_block(keys, j, count)
        for r in range(count):
            np.divide(w, t, out=x)
            np.less(u[r], x, out=white)
            if exact:
                np.multiply(white, a - c, out=tmp)
                w += tmp
                w += c
                if balanced:
                    t += row_w
                else:
                    np.multiply(white, row_w - row_b, out=tmp)
                    t += tmp
                    t += row_b
            else:
                w += np.where(white, a, c)
                bl += np.where(white, m.b, m.d)
                np.add(w, bl, out=t)
            if ci < n_cp and cps[ci] == j:
                np.divide(w, t, out=cp_x[ci])
                cp_t[ci] = t
                cp_x_prev[ci] = x
                ci += 1
            j += 1
    return w / t, cp_x, cp_t, cp_x_prev


def _run_synthetic_chunk(
    proc: SyntheticProcess,
    horizon: int,
    keys: np.ndarray,
    cps: list[int],
) -> tuple[np.ndarray, np.ndarray]:
    k = keys.size
    n_cp = len(cps)
    z = np.full(k, proc.z0, dtype=np.float64)
    cp_z = np.empty((n_cp, k), dtype=np.float64)
    start = proc.family.first_positive_index()
    ci = 0
    while ci < n_cp and cps[ci] <= start:
        cp_z[ci] = z  # the process only starts moving at index `start`
        ci += 1
    size = proc.noise_size
    white = np.empty(k, dtype=bool)
    tmp = np.empty(k, dtype=np.float64)
    block = max(1, _BLOCK_ELEMENTS // max(k, 1))
    n = start
    while n < horizon:
        count = min(block, horizon - n)
        u = rng.uniform_block(keys, n + 1, count)
        for r in range(count):
            g = proc.family.value_at(n)
            step = size / math.sqrt(g)
            z *= 1.0 - proc.big_gamma / g
            # white*(2*step) - step is exactly +-step (Sterbenz), so this
            # matches the branch form while reusing the buffers
            np.less(u[r], 0.5, out=white)
            np.multiply(white, 2.0 * step, out=tmp)
            tmp -= step
            z += tmp
            n += 1
            if ci < n_cp and cps[ci] == n:
                cp_z[ci] = z
                ci += 1
    return z.copy(), cp_z


# ---------------------------------------------------------------------------
# ensemble runner


def _resolve_scaling(config: EnsembleConfig, pred: LimitPrediction | None):
    if config.synthetic is not None:
        return (0.0, 0.0), 0.0
    if config.forced_scaling is not None:
        center = config.forced_center
        if center is None:
            center = pred.p if pred is not None and pred.p is not None else None
        if center is None:
            raise ConfigError("forced scaling needs a center for this regime")
        return config.forced_scaling, center
    if pred is None or pred.regime not in _SCALED_REGIMES:
        regime = pred.regime.value if pred is not None else "unknown"
        raise ConfigError(
            f"regime {regime} has no distributional scaling; "
            "pass forced_scaling (and forced_center) to simulate it anyway"
        )
    return pred.scaling, pred.p


def run_ensemble(config: EnsembleConfig) -> EnsembleResult:
    """Simulate an ensemble and summarize it against the predicted limit.

    Results are a pure function of the config minus the threads field.
    """
    pred = classify(config.matrix) if config.matrix is not None else None
    scaling, center = _resolve_scaling(config, pred)
    cps = checkpoint_schedule(config.horizon, config.checkpoint_factor)
    n_paths = config.paths

    # one chunk per worker keeps numpy dispatch overhead off the hot loop;
    # path streams are keyed by absolute path index, so the split never
    # affects the numbers
    if config.threads > 1:
        per = -(-n_paths // config.threads)
    else:
        per = n_paths
    per = max(1, min(per, _CHUNK_PATHS))
    chunks = []
    for start in range(0, n_paths, per):
        count = min(per, n_paths - start)
        chunks.append((start, count))

    def work(chunk: tuple[int, int]):
        start, count = chunk
        keys = rng.path_keys(config.master_seed, start, count)
        if config.matrix is not None:
            return _run_urn_chunk(
                config.matrix, config.w0, config.b0, config.horizon, keys, cps
            )
        return _run_synthetic_chunk(config.synthetic, config.horizon, keys, cps)

    if config.threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            pieces = list(pool.map(work, chunks))
    else:
        pieces = [work(ch) for ch in chunks]

    n_cp = len(cps)
    if len(pieces) == 1:
        final = pieces[0][0]
        cp_x = pieces[0][1]
        cp_t = pieces[0][2] if config.matrix is not None else None
        cp_x_prev = pieces[0][3] if config.matrix is not None else None
    else:
        final = np.empty(n_paths, dtype=np.float64)
        cp_x = np.empty((n_cp, n_paths), dtype=np.float64)
        if config.matrix is not None:
            cp_t = np.empty((n_cp, n_paths), dtype=np.float64)
            cp_x_prev = np.empty((n_cp, n_paths), dtype=np.float64)
        else:
            cp_t = None
            cp_x_prev = None
        for (start, count), piece in zip(chunks, pieces):
            final[start : start + count] = piece[0]
            cp_x[:, start : start + count] = piece[1]
            if config.matrix is not None:
                cp_t[:, start : start + count] = piece[2]
                cp_x_prev[:, start : start + count] = piece[3]

    sx, sy = scaling
    if config.matrix is not None:
        values = weight(config.horizon, sx, sy) * (final - center)
    else:
        values = final.copy()

    if n_paths >= 2:
        moments = _summary_moments(values)
    else:
        moments = Moments(
            mean=float(values[0]), variance=0.0, skewness=None, count=1
        )

    ks = _reference_ks(config, pred, values, moments)

    summaries = []
    for i, n in enumerate(cps):
        if config.matrix is not None:
            scaled = weight(n, sx, sy) * (cp_x[i] - center)
        else:
            scaled = cp_x[i]
        if n_paths >= 2:
            cm = _summary_moments(scaled)
            summaries.append(
                CheckpointSummary(n=n, mean=cm.mean, variance=cm.variance)
            )
        else:
            summaries.append(
                CheckpointSummary(n=n, mean=float(scaled[0]), variance=0.0)
            )

    ref_mean = None
    if config.matrix is not None:
        ref_mean = reference_prediction(config.matrix, config.w0, config.b0)

    return EnsembleResult(
        config=config,
        prediction=pred,
        scaling=scaling,
        center=center,
        values=values,
        final_x=final,
        moments=moments,
        ks=ks,
        checkpoints=cps,
        checkpoint_summaries=summaries,
        cp_x=cp_x,
        cp_t=cp_t,
        cp_x_prev=cp_x_prev,
        reference_scaled_mean=ref_mean,
    )


def _reference_ks(
    config: EnsembleConfig,
    pred: LimitPrediction | None,
    values: np.ndarray,
    moments: Moments,
) -> KSReport | None:
    if values.size < 2:
        return None
    if config.synthetic is not None:
        target = config.synthetic.limit_variance
        return ks_report(
            values, lambda z: normal_cdf(z, 0.0, target), "predicted-normal"
        )
    if pred is not None and pred.predicted_variance is not None:
        target = pred.predicted_variance
        return ks_report(
            values, lambda z: normal_cdf(z, 0.0, target), "predicted-normal"
        )
    if moments.variance <= 0.0:
        return None
    mean, var = moments.mean, moments.variance
    return ks_report(
        values, lambda z: normal_cdf(z, mean, var), "fitted-normal"
    )


# ---------------------------------------------------------------------------
# single-path inspection


@dataclass(frozen=True)
class PathRow:
    n: int
    x: float
    scaled: float
    gamma_hat_n: float | None
    envelope_ratio: float | None


def inspect_path(
    m: ReplacementMatrix,
    w0: float,
    b0: float,
    horizon: int,
    master_seed: int,
    checkpoint_factor: int = 2,
    forced_scaling: tuple[float, float] | None = None,
    forced_center: float | None = None,
) -> tuple[LimitPrediction, list[PathRow]]:
    """Checkpoint table for path 0 of the ensemble with the same seed.

    Regimes without a distributional scaling fall back to unit weights
    around the target (or around 0 when no target exists), so the command
    remains usable for singular and degenerate matrices.
    """
    pred = classify(m)
    if forced_scaling is not None:
        sx, sy = forced_scaling
        center = forced_center
        if center is None:
            center = pred.p if pred.p is not None else 0.0
    elif pred.regime in _SCALED_REGIMES:
        sx, sy = pred.scaling
        center = pred.p
    else:
        sx, sy = 0.0, 0.0
        center = pred.p if pred.p is not None else 0.0
    cps = checkpoint_schedule(horizon, checkpoint_factor)
    keys = rng.path_keys(master_seed, 0, 1)
    final, cp_x, cp_t, cp_x_prev = _run_urn_chunk(m, w0, b0, horizon, keys, cps)
    drift = drift_from_matrix(m)
    rows = []
    for i, n in enumerate(cps):
        x = float(cp_x[i, 0])
        scaled = weight(n, sx, sy) * (x - center)
        if n >= 1 and pred.p is not None and pred.gamma_hat is not None:
            gh_n = n / float(cp_t[i, 0]) * drift.h(float(cp_x_prev[i, 0]), pred.p)
            ratio = abs(gh_n - pred.gamma_hat) / (abs(x - pred.p) + 1.0 / n)
        else:
            gh_n = None
            ratio = None
        rows.append(
            PathRow(n=n, x=x, scaled=scaled, gamma_hat_n=gh_n, envelope_ratio=ratio)
        )
    return pred, rows


# ---------------------------------------------------------------------------
# serialization


SCHEMA_VERSION = 1


def summary_dict(result: EnsembleResult) -> dict:
    """JSON-ready summary; excludes per-path arrays and execution knobs."""
    cfg = result.config
    doc: dict = {
        "schema_version": SCHEMA_VERSION,
        "kind": "urn" if cfg.matrix is not None else "synthetic",
        "config": {
            "matrix": _matrix_dict(cfg.matrix),
            "w0": cfg.w0 if cfg.matrix is not None else None,
            "b0": cfg.b0 if cfg.matrix is not None else None,
            "synthetic": _synthetic_dict(cfg.synthetic),
            "horizon": cfg.horizon,
            "paths": cfg.paths,
            "master_seed": cfg.master_seed,
            "checkpoint_factor": cfg.checkpoint_factor,
            "forced_scaling": list(cfg.forced_scaling)
            if cfg.forced_scaling is not None
            else None,
            "forced_center": cfg.forced_center,
        },
        "prediction": _prediction_dict(result),
        "estimates": {
            "mean": result.moments.mean,
            "variance": result.moments.variance,
            "skewness": result.moments.skewness,
            "paths": result.moments.count,
        },
        "ks": _ks_dict(result.ks),
        "checkpoints": [
            {"n": s.n, "mean": s.mean, "variance": s.variance}
            for s in result.checkpoint_summaries
        ],
    }
    return doc


def _matrix_dict(m: ReplacementMatrix | None) -> dict | None:
    if m is None:
        return None
    return {"a": m.a, "b": m.b, "c": m.c, "d": m.d}


def _synthetic_dict(proc: SyntheticProcess | None) -> dict | None:
    if proc is None:
        return None
    return {
        "big_gamma": proc.big_gamma,
        "sigma2": proc.sigma2,
        "family": proc.family.value,
        "z0": proc.z0,
        "limit_variance": proc.limit_variance,
    }


def _prediction_dict(result: EnsembleResult) -> dict:
    pred = result.prediction
    if pred is None:
        proc = result.config.synthetic
        return {
            "regime": "SYNTHETIC",
            "scaling": list(result.scaling),
            "predicted_variance": proc.limit_variance,
        }
    return _urn_prediction_dict(
        pred, result.scaling, result.reference_scaled_mean
    )


def _urn_prediction_dict(
    pred: LimitPrediction,
    scaling: tuple[float, float],
    reference_scaled_mean: float | None,
) -> dict:
    return {
        "regime": pred.regime.value,
        "scaling": list(scaling),
        "p": pred.p,
        "gamma": pred.gamma,
        "h_p": pred.h_p,
        "gamma_hat": pred.gamma_hat,
        "sigma2": pred.sigma2,
        "predicted_variance": pred.predicted_variance,
        "as_exponent": pred.as_exponent,
        "reference_scaled_mean": reference_scaled_mean,
        "roots": [
            {"value": r.value, "stability": r.stability} for r in pred.roots
        ],
    }


def analyze_dict(
    m: ReplacementMatrix, w0: float | None = None, b0: float | None = None
) -> dict:
    """JSON-ready analytic report: drift, error polynomial, prediction.

    Initial counts are optional; when given they feed the reference
    scaled-mean formula where one applies.
    """
    pred = classify(m)
    drift = drift_from_matrix(m)
    err = error_poly_from_matrix(m)
    ref = None
    if w0 is not None and b0 is not None:
        ref = reference_prediction(m, w0, b0)
    return {
        "schema_version": SCHEMA_VERSION,
        "matrix": _matrix_dict(m),
        "drift": {"quad": drift.quad, "lin": drift.lin, "const": drift.const},
        "error_poly": {"a_minus_c": err.a_minus_c, "alpha": err.alpha},
        "prediction": _urn_prediction_dict(pred, pred.scaling, ref),
    }


def analyze_json(
    m: ReplacementMatrix, w0: float | None = None, b0: float | None = None
) -> str:
    return json.dumps(analyze_dict(m, w0, b0), indent=2, sort_keys=True) + "\n"


def _ks_dict(ks: KSReport | None) -> dict | None:
    if ks is None:
        return None
    return {
        "d": ks.d,
        "count": ks.count,
        "threshold_5": ks.threshold_5,
        "threshold_1": ks.threshold_1,
        "pass_at_5": ks.pass_at_5,
        "pass_at_1": ks.pass_at_1,
        "reference": ks.reference,
    }


def summary_json(result: EnsembleResult) -> str:
    return json.dumps(summary_dict(result), indent=2, sort_keys=True) + "\n"


def values_csv(result: EnsembleResult) -> str:
    """Per-path scaled values, shortest round-trip decimal, LF endings."""
    lines = ["path_id,z_value"]
    for i, v in enumerate(result.values):
        lines.append(f"{i},{float(v)!r}")
    return "\n".join(lines) + "\n"
