"""Generalized two-color urns with a fixed replacement matrix.

Each draw picks a color with probability proportional to its current count
and adds a deterministic row of the replacement matrix

    white drawn: add a white and b black
    black drawn: add c white and d black

The white fraction X_n = W_n/T_n is then a stochastic approximation with
step gamma_{n+1} = 1/T_{n+1}, drift

    f(x) = alpha*x^2 + beta*x + c,   alpha = c+d-a-b,  beta = a-2c-d,

and martingale noise U_{n+1} = T_{n+1}(X_{n+1}-X_n) - f(X_n) whose
conditional second moment is the error polynomial
E(x) = x(1-x)(a-c+alpha*x)^2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from . import rng
from .drift import DOUBLE, STABLE, DriftPoly, stable_zeros
from .errors import (
    AnalysisError,
    ConfigError,
    DoubleZeroError,
    InvalidStateError,
    NotStochasticApproximationError,
)
from .sa import SAConstants, SAPath

# beyond this total, counts stored in doubles would stop being integer-exact
COUNT_LIMIT = 2.0 ** 53


@dataclass(frozen=True)
class ReplacementMatrix:
    """Replacement rule ((a,b),(c,d)) with nonnegative entries."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "d"):
            v = getattr(self, name)
            if not math.isfinite(v) or v < 0.0:
                raise ConfigError(f"matrix entry {name}={v} must be finite and >= 0")

    @property
    def row_white(self) -> float:
        return self.a + self.b

    @property
    def row_black(self) -> float:
        return self.c + self.d

    @property
    def alpha(self) -> float:
        """Leading drift coefficient c+d-a-b; zero for balanced matrices."""
        return self.row_black - self.row_white

    @property
    def beta(self) -> float:
        return self.a - 2.0 * self.c - self.d

    @property
    def determinant(self) -> float:
        return self.a * self.d - self.b * self.c

    def entry_scale(self) -> float:
        return max(1.0, self.a, self.b, self.c, self.d)

    def is_sa_eligible(self) -> bool:
        """Both rows add mass, so draw steps are bounded below."""
        return min(self.row_white, self.row_black) > 0.0

    def require_sa(self) -> None:
        if not self.is_sa_eligible():
            raise NotStochasticApproximationError(
                f"replacement matrix {self.entries()} has a zero row sum"
            )

    def is_singular(self) -> bool:
        """Proportional rows: the urn composition converges monotonically."""
        tol = 1e-12 * max(1.0, abs(self.a * self.d), abs(self.b * self.c))
        return abs(self.determinant) <= tol

    def entries(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class UrnState:
    """Counts after n draws plus the bookkeeping needed to replay them.

    total is always white + black; white_draws counts the draws that came
    up white, which together with n determines the counts exactly:

        white = white_0 + c*n + (a-c)*white_draws
        total = total_0 + (c+d)*n - alpha*white_draws

    Integer matrix entries keep all fields integer-exact below 2^53.
    """

    white: float
    black: float
    total: float
    n: int
    white_draws: int

    def __post_init__(self) -> None:
        if self.white <= 0.0 and self.black <= 0.0:
            raise InvalidStateError("urn must contain mass of some color")
        if self.white < 0.0 or self.black < 0.0:
            raise InvalidStateError("negative color count")
        if self.total != self.white + self.black:
            raise InvalidStateError("total must equal white + black exactly")
        if not 0 <= self.white_draws <= self.n:
            raise InvalidStateError("white_draws must lie in [0, n]")
        if self.total > COUNT_LIMIT:
            raise InvalidStateError("counts exceed exact double range")

    @property
    def fraction(self) -> float:
        return self.white / self.total

    @staticmethod
    def initial(w0: float, b0: float) -> "UrnState":
        if w0 <= 0.0 or b0 <= 0.0:
            raise InvalidStateError("initial counts must both be positive")
        return UrnState(w0, b0, w0 + b0, 0, 0)


def drift_from_matrix(m: ReplacementMatrix) -> DriftPoly:
    """Mean-motion polynomial of the white fraction."""
    m.require_sa()
    return DriftPoly(quad=m.alpha, lin=m.beta, const=m.c)


@dataclass(frozen=True)
class ErrorPoly:
    """Conditional noise second moment E(x) = x(1-x)(a-c+alpha*x)^2."""

    a_minus_c: float
    alpha: float

    def __call__(self, x: float) -> float:
        swing = self.a_minus_c + self.alpha * x
        return x * (1.0 - x) * swing * swing


def error_poly_from_matrix(m: ReplacementMatrix) -> ErrorPoly:
    m.require_sa()
    return ErrorPoly(a_minus_c=m.a - m.c, alpha=m.alpha)


def urn_step(state: UrnState, m: ReplacementMatrix, u: float) -> UrnState:
    """Apply one draw decided by the uniform u: white iff u < white/total."""
    if not 0.0 <= u < 1.0:
        raise ConfigError(f"uniform draw must lie in [0,1), got {u}")
    if u < state.white / state.total:
        white = state.white + m.a
        black = state.black + m.b
        hit = 1
    else:
        white = state.white + m.c
        black = state.black + m.d
        hit = 0
    return UrnState(
        white=white,
        black=black,
        total=white + black,
        n=state.n + 1,
        white_draws=state.white_draws + hit,
    )


def urn_noise(before: UrnState, after: UrnState, drift: DriftPoly) -> float:
    """Realized martingale increment U = T'(X'-X) - f(X)."""
    x = before.fraction
    return after.total * (after.fraction - x) - drift(x)


def gamma_limit(m: ReplacementMatrix, p: float) -> float:
    """Limit of n*gamma_n = n/T_n, equal to 1/((a+b)p + (c+d)(1-p))."""
    m.require_sa()
    denom = m.row_white * p + m.row_black * (1.0 - p)
    return 1.0 / denom


class GammaHatResult(NamedTuple):
    p: float
    gamma: float
    h_p: float
    gamma_hat: float


def gamma_hat(m: ReplacementMatrix) -> GammaHatResult:
    """Target p, step limit gamma, restoring strength h(p) and their product.

    gamma_hat = gamma * h(p) is the single number that decides the scaling
    regime of the centered process.
    """
    m.require_sa()
    drift = drift_from_matrix(m)
    roots = stable_zeros(drift)
    interior_double = [r for r in roots if r.stability == DOUBLE and r.interior]
    if interior_double:
        raise DoubleZeroError(
            f"drift has a double zero at {interior_double[0].value}"
        )
    interior_stable = [r for r in roots if r.stability == STABLE and r.interior]
    if not interior_stable:
        raise AnalysisError("drift has no stable zero inside (0,1)")
    p = interior_stable[0].value
    gamma = gamma_limit(m, p)
    h_p = drift.h(p, p)
    return GammaHatResult(p=p, gamma=gamma, h_p=h_p, gamma_hat=gamma * h_p)


def gamma_deviation(
    state: UrnState, m: ReplacementMatrix, p: float, gamma: float
) -> tuple[float, float]:
    """Deviation n/T_n - gamma, directly and through the bookkeeping identity.

    The identity rewrites the deviation in terms of the white-draw average:

        n/T_n - gamma = (alpha*(k/n - p) - T0/n)
                        / ((c+d - alpha*p) * (T0/n + c+d - alpha*k/n))

    with k the number of white draws and T0 recovered from the state's
    bookkeeping.  Both routes agree to 1e-12 and the identity makes
    visible that the deviation is O(|X_n - p| + 1/n).
    """
    if state.n < 1:
        raise ConfigError("deviation needs at least one completed draw")
    n = state.n
    alpha = m.alpha
    row_b = m.row_black
    t0 = state.total - row_b * n + alpha * state.white_draws
    direct = n / state.total - gamma
    k_over_n = state.white_draws / n
    numer = alpha * (k_over_n - p) - t0 / n
    denom = (row_b - alpha * p) * (t0 / n + row_b - alpha * k_over_n)
    return direct, numer / denom


def sa_constants(m: ReplacementMatrix, w0: float, b0: float) -> SAConstants:
    """Certifying constants for the urn as a stochastic approximation.

    The noise bound is the conservative max{|a-c|,|b-d|} + max row sum; the
    sharp bound is the first term alone.  The conditional-bias constant
    comes from the exact identity

        E_n(gamma_{n+1} U_{n+1}) = x(1-x) (a-c+alpha*x) * alpha / (T_w T_b)

    with T_w, T_b the totals after a white/black draw, each above
    n*min_row, giving K_e = |alpha| * max|a-c+alpha*x| / (4 min_row^2).
    When that expression vanishes the conditional bias is identically zero
    and any positive constant certifies it.
    """
    m.require_sa()
    t0 = w0 + b0
    max_row = max(m.row_white, m.row_black)
    min_row = min(m.row_white, m.row_black)
    swing = max(abs(m.a - m.c), abs(m.b - m.d))
    mean_decay = abs(m.alpha) * swing / (4.0 * min_row * min_row)
    drift = drift_from_matrix(m)
    return SAConstants(
        c_lower=1.0 / (t0 + max_row),
        c_upper=1.0 / min_row,
        noise_bound=swing + max_row,
        drift_bound=max(drift.bound_on_unit_interval(), 1e-9),
        mean_decay=mean_decay if mean_decay > 0.0 else 1.0,
    )


def run_path_scalar(
    m: ReplacementMatrix,
    w0: float,
    b0: float,
    horizon: int,
    key: int,
) -> tuple[SAPath, list[UrnState]]:
    """Simulate one path step by step, recording the SA decomposition.

    key is the path RNG key from rng.path_key.  Returns the path in raw
    coordinates together with every intermediate state.  Meant for tests
    and inspection; the ensemble runner uses the vectorized kernel.
    """
    if horizon < 0:
        raise ConfigError("horizon must be nonnegative")
    drift = drift_from_matrix(m)
    state = UrnState.initial(w0, b0)
    path = SAPath(values=[state.fraction], steps=[], noises=[])
    states = [state]
    for j in range(1, horizon + 1):
        u = rng.uniform_draw(key, j)
        nxt = urn_step(state, m, u)
        gamma = 1.0 / nxt.total
        noise = urn_noise(state, nxt, drift)
        path.append(gamma, drift(state.fraction), noise)
        states.append(nxt)
        state = nxt
    return path, states
