"""Acceptance suite: quantitative checks tying simulations to predictions.

Each criterion is a self-contained function returning a CriterionResult;
run_suite executes a named subset and prints one verdict line per
criterion.  Tolerances are part of the contract and are deliberately
hard-coded here rather than configurable.

The full suite is several minutes of single-core compute; the quick
suite covers the exact invariants and determinism checks in seconds.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from typing import Callable, TextIO

from . import rng
from .errors import UrnsaError
from .limits import damped_recursion, decay_product, variance_alpha0
from .montecarlo import (
    EnsembleConfig,
    deviation_split,
    gamma_hat_rate_check,
    run_ensemble,
    summary_json,
    values_csv,
)
from .sa import StepFamily, SyntheticProcess
from .special import gamma_function
from .urn import (
    ReplacementMatrix,
    UrnState,
    drift_from_matrix,
    error_poly_from_matrix,
    gamma_hat,
    run_path_scalar,
    urn_noise,
    urn_step,
)

ACCEPTANCE_SEED = 123456789


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"{verdict} [{self.number}] {self.name}: {self.detail}"


def _rel_err(value: float, target: float) -> float:
    return abs(value - target) / abs(target)


def _clt_criterion(
    number: int,
    name: str,
    matrix: ReplacementMatrix,
    predicted_variance: float,
) -> CriterionResult:
    cfg = EnsembleConfig(
        matrix=matrix,
        w0=1,
        b0=1,
        horizon=100_000,
        paths=20_000,
        master_seed=ACCEPTANCE_SEED,
    )
    res = run_ensemble(cfg)
    rel = _rel_err(res.moments.variance, predicted_variance)
    passed = rel <= 0.10 and res.ks.pass_at_1
    detail = (
        f"variance {res.moments.variance:.6g} vs {predicted_variance:.6g} "
        f"(rel err {rel:.3f}, tol 0.10); "
        f"KS d={res.ks.d:.4f} vs 1% threshold {res.ks.threshold_1:.4f} "
        f"({'pass' if res.ks.pass_at_1 else 'fail'})"
    )
    return CriterionResult(number, name, passed, detail)


def toy_urn_clt() -> CriterionResult:
    """Root-n CLT for the (4,5;3,2) urn against its closed-form variance."""
    return _clt_criterion(
        1, "toy_urn_clt", ReplacementMatrix(4, 5, 3, 2), 1.0 / 252.0
    )


def balanced_urn_clt() -> CriterionResult:
    """Root-n CLT for the balanced (2,1;1,2) urn, variance 1/12."""
    return _clt_criterion(
        2, "balanced_urn_clt", ReplacementMatrix(2, 1, 1, 2), 1.0 / 12.0
    )


def critical_log_clt() -> CriterionResult:
    """Critical urn (3,1;1,3): sqrt(n/log n) scaling with variance 1/16."""
    cfg = EnsembleConfig(
        matrix=ReplacementMatrix(3, 1, 1, 3),
        w0=1,
        b0=1,
        horizon=1_000_000,
        paths=10_000,
        master_seed=ACCEPTANCE_SEED,
    )
    res = run_ensemble(cfg)
    target = 1.0 / 16.0
    rel = _rel_err(res.moments.variance, target)
    passed = rel <= 0.20
    detail = (
        f"variance {res.moments.variance:.6g} vs {target:.6g} "
        f"(rel err {rel:.3f}, tol 0.20)"
    )
    return CriterionResult(3, "critical_log_clt", passed, detail)


# Exact E[n^(2/5) (X_n - 1/2)] at n = 1e6 for the (3,0;2,5) urn started at
# w0 = b0 = 4, computed by an independent build-time oracle that evolves the
# full distribution of the white count through the draw recursion (probability
# mass defect 3e-15).  The limit value of the same expectation is
# reference_limit_mean(4,4)/(5*2^(8/5)) = 0.78047...; the limit is approached
# only at rate n^(-2/15) because the limit law has tail index 4/3, so at any
# feasible horizon the honest comparison target is the exact finite-horizon
# expectation, not the limit.
POWER_LAW_EXACT_SCALED_MEAN_1E6 = 0.616983676410895


def power_law_mean() -> CriterionResult:
    """Power-law urn (3,0;2,5): scaled mean matches the exact expectation of
    the run-horizon statistic and the distribution is visibly non-normal.

    The Monte Carlo mean of n^(2/5) (X_n - 1/2) at the run horizon is
    compared against the exact value of the same expectation, obtained from
    an independent distribution-level recursion and frozen above.  A
    Kolmogorov-Smirnov test against the best-fitting normal must fail,
    witnessing that the limit law of this regime is not Gaussian.
    """
    cfg = EnsembleConfig(
        matrix=ReplacementMatrix(3, 0, 2, 5),
        w0=4,
        b0=4,
        horizon=1_000_000,
        paths=20_000,
        master_seed=ACCEPTANCE_SEED,
    )
    res = run_ensemble(cfg)
    mean = res.moments.mean
    target = POWER_LAW_EXACT_SCALED_MEAN_1E6
    rel = _rel_err(mean, target)
    ks_fails = not res.ks.pass_at_5
    passed = rel <= 0.10 and ks_fails
    detail = (
        f"scaled mean {mean:.6g} vs exact horizon value {target:.6g} "
        f"(rel err {rel:.3f}, tol 0.10); KS vs fitted normal "
        f"d={res.ks.d:.4f} {'fails' if ks_fails else 'passes'} at 5% "
        f"(must fail)"
    )
    return CriterionResult(4, "power_law_mean", passed, detail)


def symmetric_skewness() -> CriterionResult:
    """Friedman urn (1,2;2,1) from a balanced start: the scaled statistic
    is symmetric, so its empirical skewness must be near zero."""
    cfg = EnsembleConfig(
        matrix=ReplacementMatrix(1, 2, 2, 1),
        w0=1,
        b0=1,
        horizon=100_000,
        paths=20_000,
        master_seed=ACCEPTANCE_SEED,
    )
    res = run_ensemble(cfg)
    skew = res.moments.skewness
    if skew is None:
        return CriterionResult(
            5, "symmetric_skewness", False, "skewness undefined"
        )
    passed = abs(skew) <= 0.05
    detail = f"|skewness| {abs(skew):.4f} (tol 0.05)"
    return CriterionResult(5, "symmetric_skewness", passed, detail)


def synthetic_clt() -> CriterionResult:
    """Synthetic damped recursion with Rademacher noise: variance sigma^2/2
    and a normal shape at the 1% KS level."""
    proc = SyntheticProcess(
        big_gamma=1.0, sigma2=1.0, family=StepFamily.N, z0=0.0
    )
    cfg = EnsembleConfig(
        synthetic=proc,
        horizon=100_000,
        paths=20_000,
        master_seed=ACCEPTANCE_SEED,
    )
    res = run_ensemble(cfg)
    target = proc.limit_variance
    rel = _rel_err(res.moments.variance, target)
    passed = rel <= 0.05 and res.ks.pass_at_1
    detail = (
        f"variance {res.moments.variance:.6g} vs {target:.6g} "
        f"(rel err {rel:.3f}, tol 0.05); "
        f"KS d={res.ks.d:.4f} vs 1% threshold {res.ks.threshold_1:.4f} "
        f"({'pass' if res.ks.pass_at_1 else 'fail'})"
    )
    return CriterionResult(6, "synthetic_clt", passed, detail)


def exact_invariants() -> CriterionResult:
    """Closed-form identities that must hold to near machine precision."""
    failures: list[str] = []
    key = rng.path_key(ACCEPTANCE_SEED, 0)
    counter = 0

    def u() -> float:
        nonlocal counter
        counter += 1
        return rng.uniform_draw(key, counter)

    def random_matrix() -> ReplacementMatrix:
        return ReplacementMatrix(
            *(float(int(u() * 9) + 1) for _ in range(4))
        )

    # martingale identities: the draw-probability-weighted noise mean is 0
    # and its weighted square is the error polynomial, at any state
    for _ in range(1000):
        m = random_matrix()
        w = float(int(u() * 50) + 1)
        b = float(int(u() * 50) + 1)
        state = UrnState(white=w, black=b, total=w + b, n=0, white_draws=0)
        drift = drift_from_matrix(m)
        x = state.fraction
        after_white = urn_step(state, m, 0.0)
        after_black = urn_step(state, m, 1.0 - 1e-16)
        uw = urn_noise(state, after_white, drift)
        ub = urn_noise(state, after_black, drift)
        mean = x * uw + (1.0 - x) * ub
        second = x * uw * uw + (1.0 - x) * ub * ub
        err = error_poly_from_matrix(m)(x)
        if abs(mean) > 1e-12:
            failures.append(f"noise mean {mean:.2e} for {m.entries()}")
            break
        if abs(second - err) > 1e-12 * max(1.0, abs(err)):
            failures.append(f"noise second moment off for {m.entries()}")
            break

    # bookkeeping: white and total counts follow the draw tally exactly
    for trial in range(50):
        m = random_matrix()
        _, states = run_path_scalar(m, 2, 3, 200, rng.path_key(7, trial))
        alpha = m.c + m.d - m.a - m.b
        broke = False
        for s in states:
            w_expect = 2 + m.c * s.n + (m.a - m.c) * s.white_draws
            t_expect = 5 + m.row_black * s.n - alpha * s.white_draws
            if s.white != w_expect or s.total != t_expect:
                failures.append(f"bookkeeping broke for {m.entries()}")
                broke = True
                break
        if broke:
            break

    # balanced-row variance: the specialized formula agrees with the
    # general one built from gamma, the error polynomial and gamma_hat
    checked = 0
    while checked < 1000:
        a = float(int(u() * 9) + 1)
        bb = float(int(u() * 9) + 1)
        c = float(int(u() * 9) + 1)
        d = a + bb - c
        if d <= 0 or a == c:
            continue
        m = ReplacementMatrix(a, bb, c, d)
        try:
            ghr = gamma_hat(m)
        except UrnsaError:
            continue
        if ghr.gamma_hat <= 0.5 + 1e-9:
            continue
        special = variance_alpha0(m)
        err = error_poly_from_matrix(m)(ghr.p)
        general = ghr.gamma**2 * err / (2.0 * (ghr.gamma_hat - 0.5))
        if abs(special - general) > 1e-12 * max(1.0, abs(general)):
            failures.append(
                f"variance formulas disagree for {m.entries()}: "
                f"{special!r} vs {general!r}"
            )
            break
        checked += 1

    # decay product: relative error against the power law stays below
    # 1/start across the grid, and n^a times the product increases
    for start in (2, 10, 100):
        for alpha in (0.1, 0.4, 0.9):
            prod = 1.0
            for n in range(start, 3001):
                prod *= 1.0 - alpha / n
                if abs(prod * (n / start) ** alpha - 1.0) > 1.0 / start:
                    failures.append(
                        f"decay bound broke at start={start} "
                        f"alpha={alpha} n={n}"
                    )
                    break
    prod = 1.0
    prev = 0.0
    for n in range(2, 1_000_001):
        prod *= 1.0 - 0.4 / n
        cur = n**0.4 * prod
        if cur <= prev:
            failures.append(f"n^0.4 * decay product fell at n={n}")
            break
        prev = cur
    else:
        if abs(prev - 1.1191748197691624) > 1e-9:
            failures.append(f"decay product limit drifted: {prev!r}")
    spot = decay_product(2, 3000, 0.4)
    local = 1.0
    for n in range(2, 3001):
        local *= 1.0 - 0.4 / n
    if spot != local:
        failures.append("decay_product disagrees with direct product")

    # damped recursion limits
    if damped_recursion(0.5, 2.0, 1.0, StepFamily.N, 1000) != 0.5:
        failures.append("damped recursion left its fixed point")
    got = damped_recursion(0.0, 2.0, 1.0, StepFamily.N, 1_000_000)
    if abs(got - 0.5) > 1e-9:
        failures.append(f"damped recursion limit {got!r} not 0.5")
    got = damped_recursion(5.0, 1.0, 0.0, StepFamily.N_LOG_N, 1_000_000)
    if abs(got - 0.08463992648439107) > 1e-12:
        failures.append(f"log-damped decay {got!r} off its frozen value")

    # gamma function spot values
    spots = (
        (0.5, math.sqrt(math.pi)),
        (1.0, 1.0),
        (1.5, math.sqrt(math.pi) / 2.0),
        (5.0, 24.0),
        (0.2, 4.59084371199880305),
        (7.5, 1871.254305797788),
    )
    for xval, want in spots:
        got = gamma_function(xval)
        if abs(got - want) > 1e-10 * abs(want):
            failures.append(f"gamma({xval}) = {got!r} not {want!r}")

    # singular urns converge monotonically on every path
    for trial in range(20):
        lam = float(int(u() * 3) + 1)
        a = float(int(u() * 4) + 1)
        bb = float(int(u() * 4) + 1)
        m = ReplacementMatrix(a, bb, lam * a, lam * bb)
        p = a / (a + bb)
        path, _ = run_path_scalar(m, 3, 2, 500, rng.path_key(11, trial))
        gaps = [abs(x - p) for x in path.values]
        if any(g1 > g0 for g0, g1 in zip(gaps, gaps[1:])):
            failures.append(f"singular path not monotone for {m.entries()}")
            break

    passed = not failures
    detail = "all identities hold" if passed else "; ".join(failures[:3])
    return CriterionResult(7, "exact_invariants", passed, detail)


class _CheckpointTail:
    """View of the tail half of a path's checkpoint data."""

    def __init__(self, data, lo: int):
        self.ns = data.ns[lo:]
        self.x = data.x[lo:]
        self.t = data.t[lo:]
        self.x_prev = data.x_prev[lo:]


def as_convergence_witness() -> CriterionResult:
    """Power-law urn paths settle: scaled deviations shrink checkpoint to
    checkpoint, and critical urns approach the 1/2 rate at log speed.

    The scaled sequence converges at roughly the n^(-1/10) rate here, so
    the per-path verdict allows the tail-half max deviation a factor 2.0
    over the head-half max (frozen from a calibration run: a strict
    decrease holds on only ~80% of paths, factor 2.0 on ~98%, while a
    wrong scaling exponent drops the rate below 60%)."""
    cfg = EnsembleConfig(
        matrix=ReplacementMatrix(3, 0, 2, 5),
        w0=4,
        b0=4,
        horizon=1 << 22,
        paths=500,
        master_seed=ACCEPTANCE_SEED,
    )
    res = run_ensemble(cfg)
    p = res.prediction.p
    exponent = res.prediction.as_exponent
    lo = res.checkpoints.index(1 << 10)
    settled = 0
    for i in range(cfg.paths):
        data = res.path_checkpoints(i)
        cps = [(int(n), x) for n, x in zip(data.ns[lo:], data.x[lo:])]
        head, tail = deviation_split(cps, p, exponent)
        if tail < 2.0 * head:
            settled += 1
    frac = settled / cfg.paths

    crit_cfg = EnsembleConfig(
        matrix=ReplacementMatrix(3, 1, 1, 3),
        w0=1,
        b0=1,
        horizon=1 << 16,
        paths=8,
        master_seed=ACCEPTANCE_SEED,
    )
    crit = run_ensemble(crit_cfg)
    worst_gap = 0.0
    worst_exact = 0.0
    tail_lo = len(crit.checkpoints) // 2
    for i in range(crit_cfg.paths):
        data = crit.path_checkpoints(i)
        report = gamma_hat_rate_check(
            _CheckpointTail(data, tail_lo), crit_cfg.matrix, crit.prediction
        )
        worst_gap = max(worst_gap, report.max_critical_gap)
        # the realized rate has the closed form 1/2 - 1/(2+4n) here
        for j in range(tail_lo, data.ns.size):
            n = int(data.ns[j])
            gh = n / data.t[j] * 2.0
            worst_exact = max(worst_exact, abs(gh - 0.5 + 1.0 / (2 + 4 * n)))

    passed = frac >= 0.95 and worst_gap <= 0.01 and worst_exact <= 1e-12
    detail = (
        f"settled fraction {frac:.3f} (need >= 0.95); "
        f"critical max |rate-1/2|*log n {worst_gap:.2e} (tol 0.01); "
        f"closed-form residual {worst_exact:.1e}"
    )
    return CriterionResult(8, "as_convergence_witness", passed, detail)


def determinism() -> CriterionResult:
    """Byte-identical outputs across repeats and thread counts."""
    urn_base = dict(
        matrix=ReplacementMatrix(4, 5, 3, 2),
        w0=1,
        b0=1,
        horizon=2000,
        paths=2000,
        master_seed=ACCEPTANCE_SEED,
    )
    urn_runs = [
        run_ensemble(EnsembleConfig(**urn_base, threads=th))
        for th in (1, 1, 4)
    ]
    proc = SyntheticProcess(
        big_gamma=1.0, sigma2=1.0, family=StepFamily.N, z0=0.0
    )
    syn_runs = [
        run_ensemble(
            EnsembleConfig(
                synthetic=proc,
                horizon=2000,
                paths=2000,
                master_seed=ACCEPTANCE_SEED,
                threads=th,
            )
        )
        for th in (1, 3)
    ]
    distinct = [
        len({summary_json(r) for r in urn_runs}),
        len({values_csv(r) for r in urn_runs}),
        len({summary_json(r) for r in syn_runs}),
        len({values_csv(r) for r in syn_runs}),
    ]
    passed = distinct == [1, 1, 1, 1]
    detail = (
        "repeat and threaded runs byte-identical"
        if passed
        else f"distinct outputs per group: {distinct}"
    )
    return CriterionResult(9, "determinism", passed, detail)


ALL_CRITERIA: tuple[Callable[[], CriterionResult], ...] = (
    toy_urn_clt,
    balanced_urn_clt,
    critical_log_clt,
    power_law_mean,
    symmetric_skewness,
    synthetic_clt,
    exact_invariants,
    as_convergence_witness,
    determinism,
)

QUICK_CRITERIA: tuple[Callable[[], CriterionResult], ...] = (
    exact_invariants,
    determinism,
)


def run_suite(
    suite: str = "full", stream: TextIO | None = None
) -> list[CriterionResult]:
    """Run the acceptance criteria, printing one verdict line each."""
    if stream is None:
        stream = sys.stdout
    if suite == "full":
        criteria = ALL_CRITERIA
    elif suite == "quick":
        criteria = QUICK_CRITERIA
    else:
        raise ValueError(f"unknown suite {suite!r}")
    results = []
    for fn in criteria:
        result = fn()
        print(result.line(), file=stream, flush=True)
        results.append(result)
    return results
