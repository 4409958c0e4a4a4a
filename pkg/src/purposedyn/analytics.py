"""Steady-state welfare, profit adjudication, comparative statics and the
worker-owned benchmark."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

from .distributions import moment_bundle
from .dynamics import FirmParams, SteadyState, reduced_objective, steady_state
from .errors import ValidationError
from .workers import PeriodState, WorkerParams, worker_utility


def steady_state_utility(b: float, fp: FirmParams) -> float:
    """Per-worker utility at the stationary equilibrium, in closed form."""
    w = fp.worker
    mb = fp.moments
    ss = steady_state(fp)
    p = fp.share_sum
    return (
        b ** (4.0 / 3.0) * (3.0 * p**2 / (8.0 * w.a_k)) * mb.m13**2 * ss.r_star
        + fp.lambda_ * p * b * ss.m_star
        + 0.5 * b**2 * w.alpha**2 / w.a_e
    )


def steady_state_utility_direct(b: float, fp: FirmParams) -> float:
    """Dual-path check: per-period worker utility evaluated at (r*, m*)."""
    ss = steady_state(fp)
    state = PeriodState(r=ss.r_star, m_prev=ss.m_star, lambda_=fp.lambda_)
    return worker_utility(b, state, fp.worker, fp.moments)


def steady_state_profit(fp: FirmParams) -> float:
    """Discounted firm value at the steady state, by direct evaluation.

    This is the authoritative definition: the stationary per-period
    payoff divided by (1 - delta). See profit_closed_form for the
    algebraically equivalent explicit expression and
    profit_alternative_bracket for a circulating variant that does NOT
    match it.
    """
    ss = steady_state(fp)
    return reduced_objective(ss.m_star, ss.m_star, fp) / (1.0 - fp.delta)


def _profit_bracket(fp: FirmParams, c_mid: float, c_last: float) -> float:
    w = fp.worker
    mb = fp.moments
    base = (1.0 - w.alpha) / (1.0 - fp.delta) * w.alpha / w.a_e * mb.m2
    scale = (1.0 - w.alpha) ** 2 * fp.share_sum**2 / ((1.0 - fp.delta) * 4.0 * fp.c * w.a_k**2)
    bracket = (
        0.5 * mb.m13**4 * mb.m43**2
        + c_mid * mb.m13**5 * mb.m1 * mb.m43
        + c_last * mb.m13**6 * mb.m1**2
    )
    return base + scale * bracket


def profit_closed_form(fp: FirmParams) -> float:
    """Explicit steady-state profit; agrees with the direct evaluation.

    Re-derived bracket coefficients: 1/2, lambda/(1-lambda), and
    delta*lambda^2*(2-delta-delta*lambda) / (2*(1-delta*lambda)^2*(1-lambda)).
    """
    d, l = fp.delta, fp.lambda_
    c_mid = l / (1.0 - l)
    c_last = d * l**2 * (2.0 - d - d * l) / (2.0 * (1.0 - d * l) ** 2 * (1.0 - l))
    return _profit_bracket(fp, c_mid, c_last)


def profit_alternative_bracket(fp: FirmParams) -> float:
    """A circulating closed-form variant of steady-state profit.

    Uses bracket coefficients lambda*(1+2*delta-3*delta*lambda) /
    ((1-lambda)*(1-delta*lambda)) and delta*lambda^2*(2-delta-delta*lambda)
    / (2*(1-delta*lambda)^2*(1-lambda)). It disagrees with the direct
    discounted evaluation whenever lambda > 0 (e.g. it gives ~0.8056
    instead of 13/18 on the unit point-mass benchmark) and is retained
    only so tests can document the discrepancy.
    """
    d, l = fp.delta, fp.lambda_
    c_mid = l * (1.0 + 2.0 * d - 3.0 * d * l) / ((1.0 - l) * (1.0 - d * l))
    c_last = d * l**2 * (2.0 - d - d * l) / (2.0 * (1.0 - d * l) ** 2 * (1.0 - l))
    return _profit_bracket(fp, c_mid, c_last)


OUTCOME_NAMES = ("m_star", "r_star", "k_star", "u_star", "profit")

# Parameters comparative_statics can perturb.
PARAMETER_NAMES = ("alpha", "beta", "delta", "lambda", "c", "a_e", "a_k")

_ZERO_DERIVATIVE_TOL = 1e-8


def steady_state_outcomes(fp: FirmParams, b_ref: float | None = None) -> dict[str, float]:
    """The five headline steady-state outcomes.

    Worker utility is reported at a fixed reference ability ``b_ref``
    (default: the distribution's mean ability) so that cross-parameter
    and cross-distribution comparisons isolate the equilibrium channel.
    """
    ss = steady_state(fp)
    b = fp.moments.m1 if b_ref is None else b_ref
    return {
        "m_star": ss.m_star,
        "r_star": ss.r_star,
        "k_star": ss.k_star,
        "u_star": steady_state_utility(b, fp),
        "profit": steady_state_profit(fp),
    }


def _with_parameter(fp: FirmParams, name: str, value: float) -> FirmParams:
    if name in ("alpha", "beta", "a_e", "a_k"):
        return replace(fp, worker=replace(fp.worker, **{name: value}))
    if name == "delta":
        return replace(fp, delta=value)
    if name == "lambda":
        return replace(fp, lambda_=value)
    if name == "c":
        return replace(fp, c=value)
    raise ValidationError(f"unknown parameter {name!r}; expected one of {PARAMETER_NAMES}")


def _parameter_value(fp: FirmParams, name: str) -> float:
    if name in ("alpha", "beta", "a_e", "a_k"):
        return getattr(fp.worker, name)
    known = {"delta": fp.delta, "lambda": fp.lambda_, "c": fp.c}
    if name not in known:
        raise ValidationError(
            f"unknown parameter {name!r}; expected one of {PARAMETER_NAMES}"
        )
    return known[name]


def predicted_signs(fp: FirmParams, parameter: str) -> dict[str, int | None]:
    """Theoretical derivative signs of the five outcomes, where stated.

    +1 / -1 / 0 are firm predictions; None means the theory makes no
    unconditional claim (the alpha effect on utility and profit is only
    signed under sufficient conditions).
    """
    a, b = fp.worker.alpha, fp.worker.beta
    if parameter == "alpha":
        signs: dict[str, int | None] = {
            "m_star": _threshold_sign(2.0 - (3.0 * a + b)),
            "r_star": _threshold_sign(1.0 - (2.0 * a + b)),
            "k_star": _threshold_sign(3.0 - (4.0 * a + b)),
            "u_star": 1 if a < (1.0 - b) / 2.0 else None,
            "profit": 1 if 1.0 - 2.0 * a - b > 0.0 else (-1 if 1.0 - 2.0 * a < 0.0 else None),
        }
        return signs
    table = {
        "beta": 1,
        "delta": 1,
        "lambda": 1,
        "c": -1,
        "a_k": -1,
    }
    if parameter in table:
        return dict.fromkeys(OUTCOME_NAMES, table[parameter])
    if parameter == "a_e":
        return {"m_star": 0, "r_star": 0, "k_star": 0, "u_star": -1, "profit": -1}
    raise ValidationError(f"unknown parameter {parameter!r}")


def _threshold_sign(margin: float) -> int:
    if margin > 1e-12:
        return 1
    if margin < -1e-12:
        return -1
    return 0  # knife edge: derivative is exactly zero


@dataclass(frozen=True)
class ComparativeReport:
    """Central-difference sensitivities of the five outcomes to one parameter."""

    parameter: str
    base_value: float
    derivatives: dict[str, float]
    predicted: dict[str, int | None]
    agrees: bool

    def rows(self) -> list[dict[str, object]]:
        out = []
        for name in OUTCOME_NAMES:
            pred = self.predicted[name]
            out.append(
                {
                    "parameter": self.parameter,
                    "base_value": self.base_value,
                    "outcome": name,
                    "derivative": self.derivatives[name],
                    "predicted_sign": "" if pred is None else pred,
                    "agrees": _sign_agrees(self.derivatives[name], pred),
                }
            )
        return out


def _sign_agrees(derivative: float, predicted: int | None) -> bool:
    if predicted is None:
        return True
    if predicted == 0:
        return abs(derivative) < _ZERO_DERIVATIVE_TOL
    return derivative * predicted > 0.0


def comparative_statics(fp: FirmParams, parameter: str, step: float = 1e-5) -> ComparativeReport:
    """Finite-difference sensitivity report for one parameter.

    ``step`` is relative; the central difference must stay inside the
    parameter's valid domain or a ValidationError is raised.
    """
    if not (math.isfinite(step) and step > 0.0):
        raise ValidationError("step must be > 0")
    base = _parameter_value(fp, parameter)
    h = step * abs(base)
    if h == 0.0:
        raise ValidationError(f"cannot differentiate {parameter} at 0 with a relative step")
    b_ref = fp.moments.m1
    try:
        hi = steady_state_outcomes(_with_parameter(fp, parameter, base + h), b_ref)
        lo = steady_state_outcomes(_with_parameter(fp, parameter, base - h), b_ref)
    except ValidationError as exc:
        raise ValidationError(
            f"central difference for {parameter} leaves the valid domain: {exc}"
        ) from exc
    derivs = {name: (hi[name] - lo[name]) / (2.0 * h) for name in OUTCOME_NAMES}
    predicted = predicted_signs(fp, parameter)
    agrees = all(_sign_agrees(derivs[name], predicted[name]) for name in OUTCOME_NAMES)
    return ComparativeReport(
        parameter=parameter,
        base_value=base,
        derivatives=derivs,
        predicted=predicted,
        agrees=agrees,
    )


class OwnershipMode(enum.Enum):
    INVESTOR_OWNED = "investor_owned"
    WORKER_OWNED = "worker_owned"


@dataclass(frozen=True)
class WorkerOwnedResult:
    """Worker-owned steady state plus welfare aggregates.

    In the worker-owned firm the workers keep all output and the
    objective retains all of it too: the retained shares are set to one
    independently on both sides. ``surplus`` is the discounted stationary
    value of retained output net of purpose costs, the profit-equivalent
    of the investor-owned firm's value.
    """

    steady: SteadyState
    surplus: float
    u_star_ref: float  # utility at the reference ability (mean ability)


def worker_owned_utility(b: float, fp: FirmParams) -> float:
    """Per-worker steady-state utility in the worker-owned firm."""
    w = fp.worker
    mb = fp.moments
    p = 1.0 + w.beta
    res = worker_owned_steady_state(fp)
    return (
        b ** (4.0 / 3.0) * (3.0 * p**2 / (8.0 * w.a_k)) * mb.m13**2 * res.steady.r_star
        + fp.lambda_ * p * b * res.steady.m_star
        + 0.5 * b**2 / w.a_e
    )


def worker_owned_steady_state(fp: FirmParams) -> WorkerOwnedResult:
    """Steady state of the fully worker-owned firm.

    Closed forms are the investor-owned ones with (1 - alpha) -> 1 and
    (alpha + beta) -> (1 + beta); the worker's effort share is also 1.
    Dominates the investor-owned steady state componentwise.
    """
    w = fp.worker
    mb = fp.moments
    p = 1.0 + w.beta
    dl = fp.delta * fp.lambda_
    m_star = (
        p**2
        / (4.0 * fp.c * w.a_k**2 * (1.0 - fp.lambda_))
        * (mb.m43 * mb.m13**5 + dl / (1.0 - dl) * mb.m1 * mb.m13**6)
    )
    r_star = (
        p
        / (2.0 * fp.c * w.a_k)
        * (mb.m43 * mb.m13**2 + dl / (1.0 - dl) * mb.m1 * mb.m13**3)
    )
    k_star = p / (2.0 * w.a_k) * math.sqrt(r_star) * mb.m13
    ss = SteadyState(m_star=m_star, r_star=r_star, k_star=k_star)

    u_ref = (
        mb.m1 ** (4.0 / 3.0) * (3.0 * p**2 / (8.0 * w.a_k)) * mb.m13**2 * r_star
        + fp.lambda_ * p * mb.m1 * m_star
        + 0.5 * mb.m1**2 / w.a_e
    )
    gap = (1.0 - fp.lambda_) * m_star
    output = mb.m2 / w.a_e + gap * mb.m43 / mb.m13 + fp.lambda_ * mb.m1 * m_star
    surplus = (output - 0.5 * fp.c * r_star**2) / (1.0 - fp.delta)
    return WorkerOwnedResult(steady=ss, surplus=surplus, u_star_ref=u_ref)


# Re-export for callers that only need the bundle of one distribution.
__all__ = [
    "ComparativeReport",
    "OwnershipMode",
    "OUTCOME_NAMES",
    "PARAMETER_NAMES",
    "WorkerOwnedResult",
    "comparative_statics",
    "moment_bundle",
    "predicted_signs",
    "profit_alternative_bracket",
    "profit_closed_form",
    "steady_state_outcomes",
    "steady_state_profit",
    "steady_state_utility",
    "steady_state_utility_direct",
    "worker_owned_steady_state",
    "worker_owned_utility",
    "WorkerParams",
]
