"""Exception taxonomy shared across the package.

Every error raised by library code derives from UrnsaError so callers
(including the CLI) can distinguish domain problems from genuine bugs.
"""


class UrnsaError(Exception):
    """Base class for all library errors."""


class DomainViolationError(UrnsaError):
    """A state update left the admissible domain beyond tolerance."""


class NotStochasticApproximationError(UrnsaError):
    """Replacement matrix has a zero row sum, so draws can stall."""


class InvalidStateError(UrnsaError):
    """Urn state violates its own bookkeeping invariants."""


class ZeroDriftError(UrnsaError):
    """Drift polynomial is identically zero; no restoring force exists."""


class AnalysisError(UrnsaError):
    """No interior stable zero, so the limit analysis does not apply."""


class DoubleZeroError(UrnsaError):
    """Drift has a double zero: the restoring rate vanishes at the target."""


class RegimeError(UrnsaError):
    """A closed-form formula was requested outside its regime."""


class DegenerateVarianceError(UrnsaError):
    """The limiting variance is exactly zero; no CLT scaling exists."""


class UndefinedMeanError(UrnsaError):
    """The limiting law has no finite mean for these initial counts."""


class ConfigError(UrnsaError):
    """Ensemble or CLI configuration is inconsistent."""
