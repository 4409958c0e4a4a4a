"""Single-period worker choices.

Workers split costly effort between a directly productive task and
socialization with coworkers. Given the firm's purpose flow ``r`` and
last period's average meaning, the optimal choices have closed forms:
productive effort scales linearly in ability, socialization as ability
to the 2/3 with a common factor shared by all workers. A golden-section
best-response search is included purely as a numerical oracle for those
closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .distributions import MomentBundle
from .errors import ValidationError


@dataclass(frozen=True)
class WorkerParams:
    """Preference and cost parameters of the worker problem."""

    alpha: float  # output share retained by the worker
    beta: float  # weight on job meaning in utility
    a_e: float  # quadratic cost coefficient of productive effort
    a_k: float  # quadratic cost coefficient of socialization effort

    def __post_init__(self) -> None:
        if not (0.0 < self.alpha < 1.0):
            raise ValidationError("alpha must lie in (0, 1)")
        for name in ("beta", "a_e", "a_k"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0.0):
                raise ValidationError(f"{name} must be finite and > 0")


@dataclass(frozen=True)
class PeriodState:
    """What a worker observes when choosing: purpose flow and inherited meaning."""

    r: float
    m_prev: float
    lambda_: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.r) and self.r >= 0.0):
            raise ValidationError("purpose flow r must be >= 0")
        if not (math.isfinite(self.m_prev) and self.m_prev >= 0.0):
            raise ValidationError("previous meaning must be >= 0")
        if not (0.0 <= self.lambda_ < 1.0):
            raise ValidationError("lambda must lie in [0, 1)")


def optimal_work_effort(b: float, p: WorkerParams) -> float:
    """Optimal productive effort b*alpha/a_e; independent of the meaning channel."""
    if b < 0.0:
        raise ValidationError("ability b must be >= 0")
    return b * p.alpha / p.a_e


def common_socialization(r: float, p: WorkerParams, mb: MomentBundle) -> float:
    """Common socialization factor; each worker chooses b**(2/3) times this."""
    if r < 0.0:
        raise ValidationError("purpose flow r must be >= 0")
    return (p.alpha + p.beta) / (2.0 * p.a_k) * math.sqrt(r) * mb.m13


def individual_meaning(b: float, s: PeriodState, p: WorkerParams, mb: MomentBundle) -> float:
    """Equilibrium job meaning of a worker with ability b."""
    own = (p.alpha + p.beta) / (2.0 * p.a_k) * s.r * b ** (1.0 / 3.0) * mb.m13**2
    return own + s.lambda_ * s.m_prev


def individual_output(b: float, s: PeriodState, p: WorkerParams, mb: MomentBundle) -> float:
    """Equilibrium output b*(effort + meaning); effort and meaning are substitutes."""
    return b * (optimal_work_effort(b, p) + individual_meaning(b, s, p, mb))


def worker_utility(b: float, s: PeriodState, p: WorkerParams, mb: MomentBundle) -> float:
    """Utility at the equilibrium effort pair.

    Meaning enters with weight (alpha+beta)*b: the worker enjoys meaning
    directly and is paid a share of the output it generates.
    """
    e = optimal_work_effort(b, p)
    k_i = b ** (2.0 / 3.0) * common_socialization(s.r, p, mb)
    m_i = individual_meaning(b, s, p, mb)
    return (
        (p.alpha + p.beta) * b * m_i
        + p.alpha * b * e
        - 0.5 * p.a_e * e**2
        - 0.5 * p.a_k * k_i**2
    )


def _golden_section_max(f, lo: float, hi: float, tol: float = 1e-12) -> float:
    """Maximize a strictly unimodal f on [lo, hi] by golden-section search."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def best_response_oracle(
    b: float,
    k_others: float,
    s: PeriodState,
    p: WorkerParams,
    bound_factor: float = 10.0,
) -> tuple[float, float]:
    """Numeric best response holding the socialization aggregate fixed.

    ``k_others`` is the population aggregate of root-socialization that an
    atomistic worker takes as given. The objective is strictly concave and
    separable in the two efforts, so two golden-section searches on
    [0, bound_factor * closed_form] recover the maximizer. Test oracle only.
    """
    if b < 0.0 or k_others < 0.0:
        raise ValidationError("b and k_others must be >= 0")

    def u_effort(e: float) -> float:
        return p.alpha * b * e - 0.5 * p.a_e * e**2

    def u_social(k: float) -> float:
        meaning = math.sqrt(k) * k_others * math.sqrt(s.r) + s.lambda_ * s.m_prev
        return (p.alpha + p.beta) * b * meaning - 0.5 * p.a_k * k**2

    e_guess = optimal_work_effort(b, p)
    e_star = _golden_section_max(u_effort, 0.0, max(bound_factor * e_guess, 1e-6))

    if s.r == 0.0 or k_others == 0.0 or b == 0.0:
        return e_star, 0.0
    k_guess = ((p.alpha + p.beta) * b * math.sqrt(s.r) * k_others / (2.0 * p.a_k)) ** (2.0 / 3.0)
    k_star = _golden_section_max(u_social, 0.0, max(bound_factor * k_guess, 1e-6))
    return e_star, k_star
