"""Distribution experiments: dispersion spreads and upward ability shifts.

The spread experiments perturb a lognormal baseline with a
mean-preserving spread of size gamma and record how the five steady-state
outcomes move. Which way they move depends on which transform of ability
(b^(1/3), b, or b^2) carries the lognormal assumption: a spread raises
every outcome for the b^(1/3) baseline, lowers meaning, purpose,
socialization and utility for the b and b^2 baselines, and leaves the
profit sign ambiguous for the b baseline (it hinges on the relative size
of the two effort-cost coefficients).

Note the direction convention: gamma parameterizes a dispersion
*increase*. A second-order stochastic-dominance improvement is the
reverse move, so a "SOSD shift decreases outcomes" statement translates
to positive gamma-deltas here, and vice versa.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .analytics import OUTCOME_NAMES, steady_state_outcomes
from .distributions import Empirical, Lognormal, mean_preserving_spread
from .dynamics import FirmParams
from .errors import UnsupportedOperationError, ValidationError

SUPPORTED_POWERS = (1.0 / 3.0, 1.0, 2.0)


def spread_predicted_signs(power: float) -> dict[str, int | None]:
    """Expected sign of each outcome delta under a gamma-spread, by baseline."""
    if math.isclose(power, 1.0 / 3.0):
        return dict.fromkeys(OUTCOME_NAMES, 1)
    if math.isclose(power, 1.0):
        signs: dict[str, int | None] = dict.fromkeys(OUTCOME_NAMES, -1)
        signs["profit"] = None  # genuinely ambiguous; see profit_ambiguity_search
        return signs
    if math.isclose(power, 2.0):
        return dict.fromkeys(OUTCOME_NAMES, -1)
    raise UnsupportedOperationError(f"unsupported lognormal power {power!r}")


@dataclass(frozen=True)
class SpreadExperiment:
    baseline: Lognormal
    gamma: float
    before: dict[str, float]
    after: dict[str, float]
    deltas: dict[str, float]
    predicted: dict[str, int | None]
    agrees: bool

    def rows(self) -> list[dict[str, object]]:
        out = []
        for name in OUTCOME_NAMES:
            pred = self.predicted[name]
            out.append(
                {
                    "baseline_power": self.baseline.power,
                    "gamma": self.gamma,
                    "outcome": name,
                    "before": self.before[name],
                    "after": self.after[name],
                    "delta": self.deltas[name],
                    "predicted_sign": "" if pred is None else pred,
                    "agrees": _delta_agrees(self.deltas[name], pred, self.gamma),
                }
            )
        return out


def _delta_agrees(delta: float, predicted: int | None, gamma: float) -> bool:
    if predicted is None:
        return True
    if gamma == 0.0:
        return delta == 0.0
    return delta * predicted > 0.0


def run_spread_experiment(fp: FirmParams, gamma: float) -> SpreadExperiment:
    """Steady-state outcomes before and after a mean-preserving spread.

    Worker utility is evaluated at the baseline mean ability, held fixed
    across the spread to isolate the distribution channel.
    """
    dist = fp.dist
    if not isinstance(dist, Lognormal):
        raise UnsupportedOperationError("spread experiments require a lognormal baseline")
    if not any(math.isclose(dist.power, p) for p in SUPPORTED_POWERS):
        raise UnsupportedOperationError(
            f"spread experiments support powers {SUPPORTED_POWERS}, got {dist.power!r}"
        )
    if gamma < 0.0:
        raise ValidationError("gamma must be >= 0")
    b_ref = fp.moments.m1
    before = steady_state_outcomes(fp, b_ref)
    spread_fp = replace(fp, dist=mean_preserving_spread(dist, gamma))
    after = steady_state_outcomes(spread_fp, b_ref)
    deltas = {name: after[name] - before[name] for name in OUTCOME_NAMES}
    predicted = spread_predicted_signs(dist.power)
    agrees = all(_delta_agrees(deltas[n], predicted[n], gamma) for n in OUTCOME_NAMES)
    return SpreadExperiment(
        baseline=dist,
        gamma=gamma,
        before=before,
        after=after,
        deltas=deltas,
        predicted=predicted,
        agrees=agrees,
    )


@dataclass(frozen=True)
class AmbiguityWitness:
    a_e: float
    a_k: float
    profit_delta: float


@dataclass(frozen=True)
class AmbiguityReport:
    """Witnesses that the spread's profit effect can go either way."""

    gamma: float
    positive: AmbiguityWitness | None  # a_e << a_k, spread raises profit
    negative: AmbiguityWitness | None  # a_e >> a_k, spread lowers profit

    @property
    def found_both(self) -> bool:
        return self.positive is not None and self.negative is not None


def profit_ambiguity_search(
    fp: FirmParams, gamma: float, grid_points: int = 7, span: float = 100.0
) -> AmbiguityReport:
    """Search a log-spaced (a_e, a_k) grid for opposite profit-delta signs.

    Only the ability-itself lognormal baseline is ambiguous: cheap
    productive effort (small a_e) lets the spread's boost to the
    second ability moment dominate, expensive productive effort lets the
    meaning-channel losses dominate. Absence of a witness is reported,
    not raised.
    """
    dist = fp.dist
    if not (isinstance(dist, Lognormal) and math.isclose(dist.power, 1.0)):
        raise UnsupportedOperationError(
            "profit ambiguity search requires the ability-itself lognormal baseline"
        )
    if gamma <= 0.0:
        raise ValidationError("gamma must be > 0 for the ambiguity search")

    scales = np.geomspace(1.0 / span, span, grid_points)
    positive = negative = None
    for a_e in scales:
        for a_k in scales:
            candidate = replace(fp, worker=replace(fp.worker, a_e=float(a_e), a_k=float(a_k)))
            exp = run_spread_experiment(candidate, gamma)
            delta = exp.deltas["profit"]
            if delta > 0.0 and a_e < a_k and (positive is None or delta > positive.profit_delta):
                positive = AmbiguityWitness(float(a_e), float(a_k), delta)
            if delta < 0.0 and a_e > a_k and (negative is None or delta < negative.profit_delta):
                negative = AmbiguityWitness(float(a_e), float(a_k), delta)
    return AmbiguityReport(gamma=gamma, positive=positive, negative=negative)


@dataclass(frozen=True)
class FosdExperiment:
    shift: float
    before: dict[str, float]
    after: dict[str, float]
    deltas: dict[str, float]

    @property
    def all_nonnegative(self) -> bool:
        return all(d >= -1e-12 for d in self.deltas.values())

    def rows(self) -> list[dict[str, object]]:
        return [
            {
                "shift": self.shift,
                "outcome": name,
                "before": self.before[name],
                "after": self.after[name],
                "delta": self.deltas[name],
            }
            for name in OUTCOME_NAMES
        ]


def run_fosd_experiment(fp: FirmParams, shift: float) -> FosdExperiment:
    """Shift every support point of an empirical ability law upward.

    The shifted law first-order dominates the original, so all five
    outcomes weakly increase. Utility is evaluated at the baseline mean
    ability, held fixed across the shift.
    """
    dist = fp.dist
    if not isinstance(dist, Empirical):
        raise UnsupportedOperationError("ability-shift experiments require an empirical law")
    if shift < 0.0:
        raise ValidationError("shift must be >= 0")
    b_ref = fp.moments.m1
    before = steady_state_outcomes(fp, b_ref)
    shifted = Empirical(
        support=tuple(v + shift for v in dist.support), weights=dist.weights
    )
    after = steady_state_outcomes(replace(fp, dist=shifted), b_ref)
    deltas = {name: after[name] - before[name] for name in OUTCOME_NAMES}
    return FosdExperiment(shift=shift, before=before, after=after, deltas=deltas)
