"""Quadratic drift polynomials, their zeros and stability.

A drift f(x) = quad*x^2 + lin*x + const drives the mean motion of the
process.  A zero p is stable when the drift pushes back toward it,
f(x)*(x-p) < 0 on both sides, which for a simple zero is f'(p) < 0.
A double zero has f'(p) = 0 and is flagged separately because the whole
limit analysis changes there.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ZeroDriftError

STABLE = "stable"
UNSTABLE = "unstable"
DOUBLE = "double"

_COEFF_TOL = 1e-12
_DERIV_TOL = 1e-12


@dataclass(frozen=True)
class DriftPoly:
    """Polynomial drift of degree at most two on [0,1]."""

    quad: float
    lin: float
    const: float

    def __call__(self, x: float) -> float:
        return (self.quad * x + self.lin) * x + self.const

    def derivative(self, x: float) -> float:
        return 2.0 * self.quad * x + self.lin

    def is_zero(self) -> bool:
        scale = self._scale()
        return all(
            abs(c) <= _COEFF_TOL * scale for c in (self.quad, self.lin, self.const)
        )

    def _scale(self) -> float:
        return max(1.0, abs(self.quad), abs(self.lin), abs(self.const))

    def h(self, x: float, p: float) -> float:
        """Restoring strength h(x) = -f(x)/(x-p) for a zero p of f.

        Evaluated through the factored form so the removable singularity
        at x = p causes no cancellation; h(p) equals -f'(p) exactly.
        """
        if self.is_zero():
            raise ZeroDriftError("restoring strength undefined for zero drift")
        if x == p:
            return -self.derivative(p)
        if self.quad == 0.0:
            # linear drift: f(x) = lin*(x-p), so h is constant
            return -self.lin
        other = -self.lin / self.quad - p
        return -self.quad * (x - other)

    def bound_on_unit_interval(self) -> float:
        """max of |f| over [0,1], attained at an endpoint or the vertex."""
        candidates = [abs(self(0.0)), abs(self(1.0))]
        if self.quad != 0.0:
            vertex = -self.lin / (2.0 * self.quad)
            if 0.0 < vertex < 1.0:
                candidates.append(abs(self(vertex)))
        return max(candidates)


@dataclass(frozen=True)
class RootInfo:
    """One zero of the drift with its stability tag."""

    value: float
    stability: str

    @property
    def interior(self) -> bool:
        return 0.0 < self.value < 1.0


def stable_zeros(drift: DriftPoly) -> list[RootInfo]:
    """All real zeros of the drift, each tagged stable/unstable/double.

    Roots are returned in increasing order.  A discriminant within the
    square of the derivative tolerance collapses to a single double root.
    Raises ZeroDriftError for an identically zero drift.
    """
    if drift.is_zero():
        raise ZeroDriftError("drift is identically zero")
    a, b, c = drift.quad, drift.lin, drift.const
    scale = drift._scale()
    if abs(a) <= _COEFF_TOL * scale:
        if abs(b) <= _COEFF_TOL * scale:
            return []  # nonzero constant drift never vanishes
        root = -c / b
        tag = STABLE if b < 0.0 else UNSTABLE
        return [RootInfo(root, tag)]
    disc = b * b - 4.0 * a * c
    disc_tol = (_DERIV_TOL * scale) ** 2
    if disc <= disc_tol:
        if disc < -disc_tol:
            return []
        return [RootInfo(-b / (2.0 * a), DOUBLE)]
    sq = math.sqrt(disc)
    # numerically stable split: the large-magnitude root first
    q = -0.5 * (b + math.copysign(sq, b))
    r1, r2 = q / a, c / q
    roots = sorted((r1, r2))
    out = []
    for r in roots:
        tag = STABLE if drift.derivative(r) < 0.0 else UNSTABLE
        out.append(RootInfo(r, tag))
    return out
