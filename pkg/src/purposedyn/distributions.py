"""Worker ability distributions, fractional moments and dominance checks.

The worker population is a unit-mass continuum, so the ability law is a
probability measure and population aggregates are plain expectations.
Two families are supported: a lognormal law (possibly specified for a
power transform of ability) and a finite-support empirical law.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import UnsupportedOperationError, ValidationError

WEIGHT_TOL = 1e-12
LOG_CONVEXITY_RTOL = 1e-10

# Exponents of the ability moments the equilibrium formulas consume.
MOMENT_EXPONENTS = (1.0 / 3.0, 2.0 / 3.0, 1.0, 4.0 / 3.0, 2.0)


@dataclass(frozen=True)
class Lognormal:
    """Ability law where ``b**power`` is lognormal(mu, sigma2).

    ``power=1`` means ability itself is lognormal; ``power=1/3`` or
    ``power=2`` put the lognormal assumption on the corresponding
    transform instead, which flips the curvature of the moment map.
    """

    mu: float
    sigma2: float
    power: float = 1.0

    def __post_init__(self) -> None:
        if not math.isfinite(self.mu):
            raise ValidationError("lognormal mu must be finite")
        if not (math.isfinite(self.sigma2) and self.sigma2 >= 0.0):
            raise ValidationError("lognormal sigma2 must be >= 0")
        if not (math.isfinite(self.power) and self.power > 0.0):
            raise ValidationError("lognormal power must be > 0")


@dataclass(frozen=True)
class Empirical:
    """Finite-support ability law with strictly positive atoms."""

    support: tuple[float, ...]
    weights: tuple[float, ...]

    def __post_init__(self) -> None:
        support = tuple(float(v) for v in self.support)
        weights = tuple(float(w) for w in self.weights)
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "weights", weights)
        if len(support) == 0:
            raise ValidationError("empirical support must be non-empty")
        if len(support) != len(weights):
            raise ValidationError("empirical support and weights must have equal length")
        if any(v <= 0.0 or not math.isfinite(v) for v in support):
            raise ValidationError("empirical support points must be finite and > 0")
        if any(v2 <= v1 for v1, v2 in zip(support, support[1:])):
            raise ValidationError("empirical support must be strictly increasing")
        if any(w <= 0.0 or not math.isfinite(w) for w in weights):
            raise ValidationError("empirical weights must be > 0")
        if abs(sum(weights) - 1.0) > WEIGHT_TOL:
            raise ValidationError(
                f"empirical weights must sum to 1 within {WEIGHT_TOL}; got {sum(weights)!r}"
            )


TalentDistribution = Union[Lognormal, Empirical]


def fractional_moment(dist: TalentDistribution, p: float) -> float:
    """E[b**p] for positive exponent p.

    For ``Lognormal(mu, sigma2, power=q)`` this is
    ``exp((p/q)*mu + sigma2*(p/q)**2/2)``; for an empirical law it is the
    weighted power sum.
    """
    if not (math.isfinite(p) and p > 0.0):
        raise ValidationError("moment exponent p must be > 0")
    if isinstance(dist, Lognormal):
        n = p / dist.power
        return math.exp(n * dist.mu + 0.5 * dist.sigma2 * n * n)
    return float(np.dot(np.asarray(dist.weights), np.asarray(dist.support) ** p))


@dataclass(frozen=True)
class MomentBundle:
    """The five ability moments used throughout the equilibrium formulas.

    ``a3_margin`` is ``m1 - m43/m13``, the margin of the monotonicity
    condition the dynamic problem's textbook treatment assumes. For a
    probability law this margin is <= 0 for every non-degenerate
    distribution (E[b^(4/3)] >= E[b] E[b^(1/3)] by positive correlation
    of increasing transforms), with equality only at a point mass, so it
    is recorded as a diagnostic rather than enforced: enforcing it would
    reject every distribution of interest. All quantities the package
    computes remain well-defined without it.
    """

    m13: float
    m23: float
    m1: float
    m43: float
    m2: float
    a3_margin: float = field(init=False)

    def __post_init__(self) -> None:
        for name in ("m13", "m23", "m1", "m43", "m2"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0.0):
                raise ValidationError(f"moment {name} must be finite and > 0")
        # Cauchy-Schwarz on the moment map: log E[b^p] is convex in p.
        if self.m23**2 > self.m13 * self.m1 * (1.0 + LOG_CONVEXITY_RTOL):
            raise ValidationError("moment log-convexity violated: m23^2 > m13*m1")
        if self.m1**2 > self.m23 * self.m43 * (1.0 + LOG_CONVEXITY_RTOL):
            raise ValidationError("moment log-convexity violated: m1^2 > m23*m43")
        object.__setattr__(self, "a3_margin", self.m1 - self.m43 / self.m13)


def moment_bundle(dist: TalentDistribution) -> MomentBundle:
    """Compute and cache the five moments of the ability law."""
    values = [fractional_moment(dist, p) for p in MOMENT_EXPONENTS]
    return MomentBundle(*values)


def mean_preserving_spread(dist: TalentDistribution, gamma: float) -> Lognormal:
    """Widen a lognormal law without moving the mean of its transform.

    The underlying normal variance grows by gamma while its location
    drops by gamma/2, so ``E[b**power]`` is unchanged and the variance of
    the transform weakly increases.
    """
    if not isinstance(dist, Lognormal):
        raise UnsupportedOperationError(
            "mean_preserving_spread is defined only for lognormal distributions"
        )
    if not (math.isfinite(gamma) and gamma >= 0.0):
        raise ValidationError("spread gamma must be >= 0")
    return Lognormal(dist.mu - 0.5 * gamma, dist.sigma2 + gamma, dist.power)


class Dominance(enum.Enum):
    """Outcome of a pairwise stochastic-dominance comparison."""

    Y_DOMINATES = "y_dominates"
    X_DOMINATES = "x_dominates"
    INCOMPARABLE = "incomparable"
    EQUAL = "equal"


_CDF_TOL = 1e-12


def _step_cdf(dist: Empirical, at: np.ndarray) -> np.ndarray:
    support = np.asarray(dist.support)
    cum = np.cumsum(dist.weights)
    idx = np.searchsorted(support, at, side="right")
    return np.concatenate(([0.0], cum))[idx]


def _verdict(y_minus_x: np.ndarray) -> Dominance:
    # y dominates where its CDF (or integrated CDF) sits weakly below x's.
    y_below = np.all(y_minus_x <= _CDF_TOL)
    x_below = np.all(y_minus_x >= -_CDF_TOL)
    if y_below and x_below:
        return Dominance.EQUAL
    if y_below:
        return Dominance.Y_DOMINATES
    if x_below:
        return Dominance.X_DOMINATES
    return Dominance.INCOMPARABLE


def fosd_check(x: Empirical, y: Empirical) -> Dominance:
    """First-order dominance verdict from pointwise CDF comparison.

    Step CDFs only change at support points, so comparing on the merged
    support is exact.
    """
    if not isinstance(x, Empirical) or not isinstance(y, Empirical):
        raise UnsupportedOperationError("dominance checks require empirical distributions")
    grid = np.union1d(np.asarray(x.support), np.asarray(y.support))
    return _verdict(_step_cdf(y, grid) - _step_cdf(x, grid))


def _integrated_cdf(dist: Empirical, grid: np.ndarray) -> np.ndarray:
    # For a step CDF the integral int_0^t F is piecewise linear with
    # knots on the support, so trapezoids between grid points are exact.
    cdf = _step_cdf(dist, grid)
    out = np.zeros_like(grid)
    out[1:] = np.cumsum(cdf[:-1] * np.diff(grid))
    return out


def sosd_check(x: Empirical, y: Empirical) -> Dominance:
    """Second-order dominance verdict from integrated-CDF comparison.

    y dominates when its integrated CDF lies weakly below x's at every
    threshold. Both integrals are piecewise linear with knots on the
    merged support and run parallel past the last knot (both CDFs are 1
    there), so comparing at the knots is exact.
    """
    if not isinstance(x, Empirical) or not isinstance(y, Empirical):
        raise UnsupportedOperationError("dominance checks require empirical distributions")
    grid = np.union1d(np.asarray(x.support), np.asarray(y.support))
    return _verdict(_integrated_cdf(y, grid) - _integrated_cdf(x, grid))
