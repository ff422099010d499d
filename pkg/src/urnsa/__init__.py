"""One-dimensional stochastic approximation and generalized Polya urns:
closed-form limit predictions plus reproducible Monte Carlo verification.
"""

from .drift import DriftPoly, RootInfo, stable_zeros
from .errors import (
    AnalysisError,
    ConfigError,
    DegenerateVarianceError,
    DomainViolationError,
    DoubleZeroError,
    InvalidStateError,
    NotStochasticApproximationError,
    RegimeError,
    UndefinedMeanError,
    UrnsaError,
    ZeroDriftError,
)
from .limits import (
    LimitPrediction,
    Regime,
    classify,
    damped_recursion,
    decay_product,
    reference_limit_mean,
    reference_prediction,
    reference_scaled_mean,
    variance_alpha0,
)
from .montecarlo import (
    EnsembleConfig,
    EnsembleResult,
    KSReport,
    Moments,
    analyze_dict,
    analyze_json,
    checkpoint_schedule,
    deviation_split,
    gamma_hat_rate_check,
    inspect_path,
    ks_report,
    ks_statistic,
    run_ensemble,
    sample_moments,
    summary_dict,
    summary_json,
    values_csv,
)
from .sa import (
    SAConstants,
    SAPath,
    StepFamily,
    SyntheticProcess,
    q_step,
    sa_step,
    synthetic_step,
    weight,
)
from .special import gamma_function, normal_cdf
from .urn import (
    ErrorPoly,
    GammaHatResult,
    ReplacementMatrix,
    UrnState,
    drift_from_matrix,
    error_poly_from_matrix,
    gamma_deviation,
    gamma_hat,
    gamma_limit,
    run_path_scalar,
    sa_constants,
    urn_noise,
    urn_step,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisError",
    "ConfigError",
    "DegenerateVarianceError",
    "DomainViolationError",
    "DoubleZeroError",
    "DriftPoly",
    "EnsembleConfig",
    "EnsembleResult",
    "ErrorPoly",
    "GammaHatResult",
    "InvalidStateError",
    "KSReport",
    "LimitPrediction",
    "Moments",
    "NotStochasticApproximationError",
    "Regime",
    "RegimeError",
    "ReplacementMatrix",
    "RootInfo",
    "SAConstants",
    "SAPath",
    "StepFamily",
    "SyntheticProcess",
    "UndefinedMeanError",
    "UrnsaError",
    "UrnState",
    "ZeroDriftError",
    "analyze_dict",
    "analyze_json",
    "checkpoint_schedule",
    "classify",
    "damped_recursion",
    "decay_product",
    "deviation_split",
    "drift_from_matrix",
    "error_poly_from_matrix",
    "gamma_deviation",
    "gamma_function",
    "gamma_hat",
    "gamma_hat_rate_check",
    "gamma_limit",
    "inspect_path",
    "ks_report",
    "ks_statistic",
    "normal_cdf",
    "q_step",
    "reference_limit_mean",
    "reference_prediction",
    "reference_scaled_mean",
    "run_ensemble",
    "run_path_scalar",
    "sa_constants",
    "sa_step",
    "sample_moments",
    "stable_zeros",
    "summary_dict",
    "summary_json",
    "synthetic_step",
    "urn_noise",
    "urn_step",
    "values_csv",
    "variance_alpha0",
    "weight",
]
