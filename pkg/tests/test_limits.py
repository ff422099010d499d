"""Regime classification, closed-form variances, and scalar recursions."""

from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from urnsa import (
    ConfigError,
    DegenerateVarianceError,
    LimitPrediction,
    Regime,
    RegimeError,
    ReplacementMatrix,
    StepFamily,
    UndefinedMeanError,
    classify,
    damped_recursion,
    decay_product,
    gamma_function,
    reference_limit_mean,
    reference_prediction,
    reference_scaled_mean,
    variance_alpha0,
)

entry = st.integers(0, 6).map(float)


class TestClassify:
    def test_sqrt_n_regime(self, toy_matrix):
        pred = classify(toy_matrix)
        assert pred.regime is Regime.CLT_SQRT_N
        assert pred.scaling == (0.5, 0.0)
        assert pred.p == pytest.approx(0.5, abs=1e-14)
        assert pred.gamma_hat == pytest.approx(8.0 / 7.0, rel=1e-14)
        assert pred.predicted_variance == pytest.approx(1.0 / 252.0, rel=1e-12)

    def test_critical_regime(self, critical_matrix):
        pred = classify(critical_matrix)
        assert pred.regime is Regime.CLT_SQRT_N_OVER_LOG
        assert pred.scaling == (0.5, -0.5)
        assert pred.predicted_variance == pytest.approx(1.0 / 16.0, rel=1e-14)
        assert pred.sigma2 == pytest.approx(1.0 / 16.0, rel=1e-14)

    def test_power_law_regime(self, power_law_matrix):
        pred = classify(power_law_matrix)
        assert pred.regime is Regime.AS_POWER_LAW
        assert pred.as_exponent == pytest.approx(0.4, rel=1e-14)
        assert pred.scaling == (pred.as_exponent, 0.0)
        assert pred.predicted_variance is None
        assert pred.sigma2 == pytest.approx(0.09, rel=1e-12)

    def test_singular_monotone(self):
        pred = classify(ReplacementMatrix(2, 2, 1, 1))
        assert pred.regime is Regime.SINGULAR_MONOTONE
        assert pred.sigma2 == 0.0
        assert pred.p == pytest.approx(0.5, abs=1e-14)
        assert pred.gamma_hat == pytest.approx(1.0, rel=1e-14)
        assert pred.scaling == (0.0, 0.0)

    def test_double_zero(self):
        pred = classify(ReplacementMatrix(2, 0, 1, 2))
        assert pred.regime is Regime.DOUBLE_ZERO
        assert pred.p == pytest.approx(1.0, abs=1e-12)
        assert pred.h_p == 0.0
        assert pred.gamma_hat == 0.0
        assert pred.sigma2 == 0.0

    def test_zero_drift(self):
        pred = classify(ReplacementMatrix(1, 0, 0, 1))
        assert pred.regime is Regime.ZERO_DRIFT_BETA
        assert pred.scaling == (0.0, 0.0)
        assert pred.p is None

    def test_not_applicable_keeps_roots(self):
        pred = classify(ReplacementMatrix(1, 1, 0, 3))
        assert pred.regime is Regime.NOT_APPLICABLE
        tags = {(r.value, r.stability) for r in pred.roots}
        assert tags == {(0.0, "stable"), (2.0, "unstable")}

    def test_regime_values_are_uppercase_strings(self):
        for regime in Regime:
            assert regime.value == regime.name

    @given(a=entry, b=entry, c=entry, d=entry)
    def test_internal_consistency(self, a, b, c, d):
        m = ReplacementMatrix(a, b, c, d)
        if not m.is_sa_eligible():
            return
        pred = classify(m)
        if pred.regime in (Regime.CLT_SQRT_N, Regime.CLT_SQRT_N_OVER_LOG):
            assert pred.predicted_variance > 0.0
            assert 0.0 < pred.p < 1.0
            assert pred.gamma_hat >= 0.5 - 1e-12
        if pred.regime is Regime.AS_POWER_LAW:
            assert pred.as_exponent == pred.gamma_hat
            assert 0.0 < pred.as_exponent < 0.5
        if pred.gamma_hat is not None and pred.p is not None:
            assert pred.gamma_hat == pytest.approx(
                pred.gamma * pred.h_p, rel=1e-12, abs=1e-12
            )

    @given(
        a=entry,
        b=entry,
        c=entry,
        d=entry,
        lam=st.sampled_from([0.5, 2.0, 3.0, 4.0]),
    )
    def test_positive_scaling_invariance(self, a, b, c, d, lam):
        """Multiplying the matrix by a positive constant changes nothing
        about the regime, target, gamma_hat, or limiting variances."""
        m = ReplacementMatrix(a, b, c, d)
        if not m.is_sa_eligible():
            return
        scaled = ReplacementMatrix(lam * a, lam * b, lam * c, lam * d)
        pred, pred_s = classify(m), classify(scaled)
        assert pred.regime is pred_s.regime
        if pred.p is not None:
            assert pred_s.p == pytest.approx(pred.p, abs=1e-12)
            assert pred_s.gamma == pytest.approx(pred.gamma / lam, rel=1e-12)
            assert pred_s.gamma_hat == pytest.approx(
                pred.gamma_hat, rel=1e-12, abs=1e-12
            )
        if pred.sigma2 is not None:
            assert pred_s.sigma2 == pytest.approx(
                pred.sigma2, rel=1e-12, abs=1e-12
            )
        if pred.predicted_variance is not None:
            assert pred_s.predicted_variance == pytest.approx(
                pred.predicted_variance, rel=1e-12
            )


class TestLimitPredictionValidation:
    def test_clt_needs_variance(self):
        with pytest.raises(ConfigError):
            LimitPrediction(regime=Regime.CLT_SQRT_N, scaling=(0.5, 0.0))

    def test_clt_scaling_enforced(self):
        with pytest.raises(ConfigError):
            LimitPrediction(
                regime=Regime.CLT_SQRT_N,
                scaling=(0.4, 0.0),
                predicted_variance=1.0,
            )
        with pytest.raises(ConfigError):
            LimitPrediction(
                regime=Regime.CLT_SQRT_N_OVER_LOG,
                scaling=(0.5, 0.0),
                predicted_variance=1.0,
            )

    def test_variance_outside_clt_rejected(self):
        with pytest.raises(ConfigError):
            LimitPrediction(
                regime=Regime.ZERO_DRIFT_BETA,
                scaling=(0.0, 0.0),
                predicted_variance=1.0,
            )

    def test_as_exponent_pairing(self):
        with pytest.raises(ConfigError):
            LimitPrediction(regime=Regime.AS_POWER_LAW, scaling=(0.4, 0.0))
        with pytest.raises(ConfigError):
            LimitPrediction(
                regime=Regime.NOT_APPLICABLE,
                scaling=(0.0, 0.0),
                as_exponent=0.4,
            )

    def test_singular_needs_zero_sigma2(self):
        with pytest.raises(ConfigError):
            LimitPrediction(
                regime=Regime.SINGULAR_MONOTONE,
                scaling=(0.0, 0.0),
                sigma2=0.25,
            )


class TestVarianceAlpha0:
    def test_supercritical_value(self):
        assert variance_alpha0(ReplacementMatrix(2, 1, 1, 2)) == pytest.approx(
            1.0 / 12.0, rel=1e-14
        )

    def test_critical_value(self, critical_matrix):
        assert variance_alpha0(critical_matrix) == pytest.approx(
            1.0 / 16.0, rel=1e-14
        )

    def test_agrees_with_classify(self, critical_matrix):
        for m in (ReplacementMatrix(2, 1, 1, 2), critical_matrix):
            assert variance_alpha0(m) == pytest.approx(
                classify(m).predicted_variance, rel=1e-12
            )

    def test_subcritical_rejected(self):
        with pytest.raises(RegimeError):
            variance_alpha0(ReplacementMatrix(4, 1, 1, 4))

    def test_degenerate_noise_rejected(self):
        with pytest.raises(DegenerateVarianceError):
            variance_alpha0(ReplacementMatrix(2, 1, 2, 1))

    def test_unbalanced_rejected(self, toy_matrix):
        with pytest.raises(RegimeError):
            variance_alpha0(toy_matrix)


class TestDecayProduct:
    def test_small_product_exact(self):
        # (1 - 1/4)(1 - 1/6)(1 - 1/8) = 35/64
        assert decay_product(2, 4, 0.5) == pytest.approx(35.0 / 64.0, rel=1e-15)

    def test_empty_range_is_one(self):
        assert decay_product(5, 4, 0.3) == 1.0

    def test_power_asymptotics(self):
        """n^alpha * prod_{k=2}^n (1 - alpha/k) -> 1/Gamma(2 - alpha)."""
        n, alpha = 10_000, 0.4
        value = decay_product(2, n, alpha) * n**alpha * gamma_function(1.6)
        assert value == pytest.approx(1.0, abs=1e-4)

    def test_monotone_in_stop(self):
        vals = [decay_product(2, stop, 0.4) for stop in (10, 20, 40, 80)]
        assert all(x > y for x, y in zip(vals, vals[1:]))

    def test_alpha_domain(self):
        for bad in (0.0, 1.0, -0.2, 1.5):
            with pytest.raises(ConfigError):
                decay_product(2, 10, bad)

    def test_start_domain(self):
        with pytest.raises(ConfigError):
            decay_product(0, 10, 0.4)


class TestDampedRecursion:
    def test_fixed_point_preserved(self):
        assert damped_recursion(0.5, 2.0, 1.0, StepFamily.N, 1000) == 0.5
        assert (
            damped_recursion(0.25, 2.0, 0.5, StepFamily.N_LOG_N, 500) == 0.25
        )

    def test_converges_to_ratio(self):
        value = damped_recursion(0.0, 2.0, 1.0, StepFamily.N, 1_000_000)
        assert value == pytest.approx(0.499999999994423, rel=1e-12)
        assert value < 0.5

    def test_pure_decay_frozen(self):
        value = damped_recursion(5.0, 1.0, 0.0, StepFamily.N_LOG_N, 1_000_000)
        assert value == pytest.approx(0.08463992648439107, rel=1e-12)

    def test_validation(self):
        with pytest.raises(ConfigError):
            damped_recursion(0.0, 0.0, 1.0, StepFamily.N, 10)
        with pytest.raises(ConfigError):
            damped_recursion(0.0, 1.0, -1.0, StepFamily.N, 10)
        with pytest.raises(ConfigError):
            damped_recursion(0.0, 1.0, 1.0, StepFamily.N, -1)


class TestReferenceMean:
    def test_frozen_values(self):
        assert reference_limit_mean(4, 4) == pytest.approx(
            11.829736841131693, rel=1e-12
        )
        assert reference_limit_mean(4, 9) == pytest.approx(
            -1.9716228068552923, rel=1e-12
        )

    def test_cancellation_at_balanced_point(self):
        # w0*Gamma(1) - 5*Gamma(2) vanishes for w0 = 5, b0 = 8
        assert abs(reference_limit_mean(5, 8)) <= 1e-9

    def test_infinite_mean_rejected(self):
        for b0 in (3.0, 2.0, 0.5):
            with pytest.raises(UndefinedMeanError):
                reference_limit_mean(4, b0)

    def test_positive_counts_required(self):
        with pytest.raises(ConfigError):
            reference_limit_mean(0, 5)
        with pytest.raises(ConfigError):
            reference_limit_mean(4, -1)

    def test_scaled_values(self):
        assert reference_scaled_mean(4, 4) == pytest.approx(
            1.3007859453529014, rel=1e-12
        )
        assert reference_scaled_mean(4, 9) == pytest.approx(
            -0.216797657558818, rel=1e-12
        )
        scale = 3.0 * 2.0**1.6
        assert reference_scaled_mean(4, 4) == pytest.approx(
            reference_limit_mean(4, 4) / scale, rel=1e-15
        )


class TestReferencePrediction:
    def test_reference_matrix_gets_value(self, power_law_matrix):
        value = reference_prediction(power_law_matrix, 4.0, 4.0)
        assert value == pytest.approx(1.3007859453529014, rel=1e-12)

    def test_other_matrix_gets_none(self, toy_matrix):
        assert reference_prediction(toy_matrix, 4.0, 4.0) is None

    def test_infinite_mean_gets_none(self, power_law_matrix):
        assert reference_prediction(power_law_matrix, 1.0, 1.0) is None
