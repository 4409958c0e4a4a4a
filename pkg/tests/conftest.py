"""Shared fixtures: the anchor scenario and random parameter draws."""

from __future__ import annotations

import numpy as np
import pytest

from purposedyn.distributions import Empirical, Lognormal
from purposedyn.dynamics import FirmParams
from purposedyn.workers import WorkerParams


def anchor_firm() -> FirmParams:
    """Symmetric unit-cost firm with a point mass of ability at 1.

    Every closed form has a hand-checkable rational value here:
    m* = r* = 1/3, k* = sqrt(1/3)/2, u*(1) = 5/12, firm value 13/18.
    """
    worker = WorkerParams(alpha=0.5, beta=0.5, a_e=1.0, a_k=1.0)
    dist = Empirical(support=(1.0,), weights=(1.0,))
    return FirmParams(worker=worker, delta=0.5, lambda_=0.5, c=1.0, dist=dist)


def random_distribution(rng: np.random.Generator):
    if rng.random() < 0.5:
        power = float(rng.choice([1.0 / 3.0, 1.0, 2.0]))
        return Lognormal(
            mu=float(rng.uniform(-0.4, 0.4)),
            sigma2=float(rng.uniform(0.01, 0.5)),
            power=power,
        )
    n = int(rng.integers(2, 6))
    support = np.sort(rng.uniform(0.2, 3.0, size=n))
    support += np.arange(n) * 1e-6  # guard against ties
    weights = rng.dirichlet(np.ones(n))
    return Empirical(support=tuple(support), weights=tuple(weights))


def random_firm(rng: np.random.Generator, threshold_margin: float = 0.0) -> FirmParams:
    """Draw a valid firm, optionally keeping alpha clear of sign thresholds.

    The comparative-statics sign predictions flip at 3*alpha + beta = 2,
    2*alpha + beta = 1, 4*alpha + beta = 3, 2*alpha + beta = 2 and
    2*alpha = 1; finite differences cannot resolve a sign reliably right
    on a threshold, so draws for sign tests stay `threshold_margin` away.
    """
    while True:
        alpha = float(rng.uniform(0.05, 0.9))
        beta = float(rng.uniform(0.05, 1.2))
        if threshold_margin > 0.0:
            margins = (
                2.0 - 3.0 * alpha - beta,
                1.0 - 2.0 * alpha - beta,
                3.0 - 4.0 * alpha - beta,
                2.0 - 2.0 * alpha - beta,
                1.0 - 2.0 * alpha,
            )
            if any(abs(m) < threshold_margin for m in margins):
                continue
        break
    worker = WorkerParams(
        alpha=alpha,
        beta=beta,
        a_e=float(rng.uniform(0.3, 3.0)),
        a_k=float(rng.uniform(0.3, 3.0)),
    )
    return FirmParams(
        worker=worker,
        delta=float(rng.uniform(0.1, 0.9)),
        lambda_=float(rng.uniform(0.0, 0.85)),
        c=float(rng.uniform(0.3, 3.0)),
        dist=random_distribution(rng),
    )


@pytest.fixture
def anchor() -> FirmParams:
    return anchor_firm()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260826)
