"""Fractional moments, mean-preserving spreads, and dominance checks."""

from __future__ import annotations

import math

import numpy as np
import pytest

from purposedyn.distributions import (
    Dominance,
    Empirical,
    Lognormal,
    MOMENT_EXPONENTS,
    fosd_check,
    fractional_moment,
    mean_preserving_spread,
    moment_bundle,
    sosd_check,
)
from purposedyn.errors import UnsupportedOperationError, ValidationError

from conftest import random_distribution


def test_lognormal_moments_hand_values():
    # b itself lognormal(0, 1): E[b^p] = exp(p^2 / 2)
    d = Lognormal(mu=0.0, sigma2=1.0, power=1.0)
    assert fractional_moment(d, 1.0 / 3.0) == pytest.approx(math.exp(1.0 / 18.0), rel=1e-14)
    assert fractional_moment(d, 1.0) == pytest.approx(math.exp(0.5), rel=1e-14)
    assert fractional_moment(d, 2.0) == pytest.approx(math.exp(2.0), rel=1e-14)

    # b^2 lognormal(mu, s2): E[b^p] = exp(mu*p/2 + s2*p^2/8)
    d2 = Lognormal(mu=0.3, sigma2=0.4, power=2.0)
    assert fractional_moment(d2, 1.0) == pytest.approx(math.exp(0.15 + 0.05), rel=1e-14)


def test_empirical_moments_hand_values():
    d = Empirical(support=(1.0, 3.0), weights=(0.5, 0.5))
    assert fractional_moment(d, 1.0) == pytest.approx(2.0, abs=1e-15)
    assert fractional_moment(d, 2.0) == pytest.approx(5.0, abs=1e-15)
    assert fractional_moment(d, 1.0 / 3.0) == pytest.approx(
        0.5 * (1.0 + 3.0 ** (1.0 / 3.0)), rel=1e-14
    )


@pytest.mark.parametrize("power", [1.0 / 3.0, 1.0, 2.0])
def test_lognormal_moments_monte_carlo(power, rng):
    d = Lognormal(mu=0.1, sigma2=0.3, power=power)
    x = rng.normal(0.1, math.sqrt(0.3), size=2_000_000)
    for p in MOMENT_EXPONENTS:
        draws = np.exp(x * (p / power))
        se = draws.std() / math.sqrt(draws.size)
        assert abs(draws.mean() - fractional_moment(d, p)) < 4.0 * se


def test_empirical_moments_monte_carlo(rng):
    d = Empirical(support=(0.5, 1.0, 2.5), weights=(0.2, 0.5, 0.3))
    idx = rng.choice(3, size=2_000_000, p=d.weights)
    draws = np.asarray(d.support)[idx] ** (4.0 / 3.0)
    se = draws.std() / math.sqrt(draws.size)
    assert abs(draws.mean() - fractional_moment(d, 4.0 / 3.0)) < 4.0 * se


def test_distribution_validation():
    with pytest.raises(ValidationError):
        Lognormal(mu=0.0, sigma2=-0.1, power=1.0)
    with pytest.raises(ValidationError):
        Empirical(support=(1.0, 2.0), weights=(0.4, 0.4))
    with pytest.raises(ValidationError):
        Empirical(support=(2.0, 1.0), weights=(0.5, 0.5))
    with pytest.raises(ValidationError):
        Empirical(support=(-1.0, 2.0), weights=(0.5, 0.5))


def test_moment_bundle_log_convexity(rng):
    for _ in range(200):
        mb = moment_bundle(random_distribution(rng))
        assert mb.m23**2 <= mb.m13 * mb.m1 * (1.0 + 1e-10)
        assert mb.m1**2 <= mb.m23 * mb.m43 * (1.0 + 1e-10)
        # the monotonicity margin is <= 0 for every probability law
        assert mb.a3_margin <= 1e-12


def test_mean_preserving_spread_keeps_transform_mean():
    d = Lognormal(mu=0.2, sigma2=0.3, power=2.0)
    spread = mean_preserving_spread(d, 0.4)
    # mean of b^power is unchanged, higher moments of it rise
    assert fractional_moment(spread, 2.0) == pytest.approx(
        fractional_moment(d, 2.0), rel=1e-14
    )
    assert fractional_moment(spread, 4.0) > fractional_moment(d, 4.0)
    with pytest.raises(UnsupportedOperationError):
        mean_preserving_spread(Empirical((1.0,), (1.0,)), 0.1)
    with pytest.raises(ValidationError):
        mean_preserving_spread(d, -0.1)


def test_dominance_hand_cases():
    x = Empirical(support=(1.0, 4.0), weights=(0.5, 0.5))
    y = Empirical(support=(2.0, 3.0), weights=(0.5, 0.5))
    same = Empirical(support=(1.0, 4.0), weights=(0.5, 0.5))
    up = Empirical(support=(2.0, 5.0), weights=(0.5, 0.5))

    assert fosd_check(x, same) is Dominance.EQUAL
    assert fosd_check(x, up) is Dominance.Y_DOMINATES
    assert fosd_check(up, x) is Dominance.X_DOMINATES
    # same mean, crossing CDFs: no first-order ranking, but the
    # concentrated law second-order dominates the spread one
    assert fosd_check(x, y) is Dominance.INCOMPARABLE
    assert sosd_check(x, y) is Dominance.Y_DOMINATES
    assert sosd_check(y, x) is Dominance.X_DOMINATES


def _random_empirical(rng, n):
    support = np.sort(rng.uniform(0.5, 4.0, size=n)) + np.arange(n) * 1e-6
    weights = rng.dirichlet(np.ones(n))
    return Empirical(support=tuple(support), weights=tuple(weights))


def fosd_pair(rng):
    """(x, y) with y first-order dominating x by an upward support shift."""
    x = _random_empirical(rng, int(rng.integers(2, 6)))
    shifts = rng.uniform(0.05, 1.0, size=len(x.support))
    y_support = np.asarray(x.support) + np.sort(shifts)
    return x, Empirical(support=tuple(y_support), weights=x.weights)


def sosd_pair(rng):
    """(x, y) with y second-order dominating x: x spreads one atom of y."""
    y = _random_empirical(rng, int(rng.integers(2, 5)))
    i = int(rng.integers(0, len(y.support)))
    v, w = y.support[i], y.weights[i]
    d = float(rng.uniform(0.05, 0.9 * v))
    pts = {s: wt for s, wt in zip(y.support, y.weights)}
    pts[v] = pts[v] - w
    pts[v - d] = pts.get(v - d, 0.0) + 0.5 * w
    pts[v + d] = pts.get(v + d, 0.0) + 0.5 * w
    pts = {s: wt for s, wt in pts.items() if wt > 0.0}
    support = tuple(sorted(pts))
    x = Empirical(support=support, weights=tuple(pts[s] for s in support))
    return x, y


def test_fosd_pairs_raise_every_moment(rng):
    for _ in range(200):
        x, y = fosd_pair(rng)
        assert fosd_check(x, y) is Dominance.Y_DOMINATES
        assert sosd_check(x, y) is Dominance.Y_DOMINATES
        for p in MOMENT_EXPONENTS:
            assert fractional_moment(y, p) >= fractional_moment(x, p) - 1e-12


def test_sosd_pairs_order_concave_moments(rng):
    for _ in range(200):
        x, y = sosd_pair(rng)
        assert sosd_check(x, y) is Dominance.Y_DOMINATES
        # equal means; concave transforms favor y, convex transforms favor x
        assert fractional_moment(y, 1.0) == pytest.approx(
            fractional_moment(x, 1.0), rel=1e-12
        )
        for p in (1.0 / 3.0, 2.0 / 3.0):
            assert fractional_moment(y, p) >= fractional_moment(x, p) - 1e-12
        for p in (4.0 / 3.0, 2.0):
            assert fractional_moment(y, p) <= fractional_moment(x, p) + 1e-12
