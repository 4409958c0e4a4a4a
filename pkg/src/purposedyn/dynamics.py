"""The firm's infinite-horizon purpose-investment problem.

After substituting the workers' closed-form responses, the firm's
per-period payoff is quadratic in the average-meaning state, so the
problem is a scalar linear-quadratic program: the steady state, the
Euler equation and the transition path all have closed forms. A
grid-based dynamic-programming oracle provides an independent check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .distributions import MomentBundle, TalentDistribution, moment_bundle
from .errors import InfeasiblePathError, ValidationError
from .workers import WorkerParams

FEASIBILITY_TOL = 1e-12


@dataclass(frozen=True)
class FirmParams:
    """Everything the firm problem depends on."""

    worker: WorkerParams
    delta: float  # discount factor
    lambda_: float  # meaning persistence
    c: float  # quadratic cost coefficient of the purpose flow
    dist: TalentDistribution
    moments: MomentBundle = field(init=False)

    def __post_init__(self) -> None:
        if not (0.0 < self.delta < 1.0):
            raise ValidationError("delta must lie in (0, 1)")
        if not (0.0 <= self.lambda_ < 1.0):
            raise ValidationError("lambda must lie in [0, 1)")
        if not (math.isfinite(self.c) and self.c > 0.0):
            raise ValidationError("c must be finite and > 0")
        object.__setattr__(self, "moments", moment_bundle(self.dist))

    @property
    def share_sum(self) -> float:
        return self.worker.alpha + self.worker.beta


@dataclass(frozen=True)
class SteadyState:
    m_star: float
    r_star: float
    k_star: float


@dataclass(frozen=True)
class TrajectoryPoint:
    """One period on a meaning path.

    ``r`` and ``per_period_profit`` describe the transition into this
    period; the t=0 point is the initial condition and carries zeros.
    """

    t: int
    m_bar: float
    r: float
    per_period_profit: float


@dataclass(frozen=True)
class Trajectory:
    points: tuple[TrajectoryPoint, ...]


def law_of_motion(m_prev: float, r: float, fp: FirmParams) -> float:
    """Next average meaning from the current purpose flow."""
    if m_prev < 0.0 or r < 0.0:
        raise ValidationError("m_prev and r must be >= 0")
    w = fp.worker
    return fp.share_sum / (2.0 * w.a_k) * r * fp.moments.m13**3 + fp.lambda_ * m_prev


def purpose_from_meaning(m_prev: float, m_next: float, fp: FirmParams) -> float:
    """Purpose flow needed to move average meaning from m_prev to m_next."""
    gap = m_next - fp.lambda_ * m_prev
    if gap < -FEASIBILITY_TOL * max(1.0, abs(m_next)):
        raise InfeasiblePathError(
            f"transition {m_prev!r} -> {m_next!r} requires negative purpose"
        )
    w = fp.worker
    return max(gap, 0.0) * 2.0 * w.a_k / (fp.share_sum * fp.moments.m13**3)


def reduced_objective(m_prev: float, m_next: float, fp: FirmParams) -> float:
    """Per-period firm payoff with the purpose flow substituted out."""
    w = fp.worker
    mb = fp.moments
    r = purpose_from_meaning(m_prev, m_next, fp)
    gap = m_next - fp.lambda_ * m_prev
    output = w.alpha / w.a_e * mb.m2 + gap * mb.m43 / mb.m13 + fp.lambda_ * mb.m1 * m_prev
    return (1.0 - w.alpha) * output - 0.5 * fp.c * r**2


def _curvature(fp: FirmParams) -> float:
    # Coefficient on the squared meaning gap in the purpose cost.
    return 4.0 * fp.c * fp.worker.a_k**2 / (fp.share_sum**2 * fp.moments.m13**6)


def euler_residual(m_prev: float, m_now: float, m_next: float, fp: FirmParams) -> float:
    """Closed-form Euler-equation residual at a triple of states.

    Zero along the optimal interior path; uses the analytic partials of
    the reduced objective, not numeric differentiation.
    """
    w = fp.worker
    mb = fp.moments
    d = _curvature(fp)
    # Feasibility of both transitions (raises otherwise).
    purpose_from_meaning(m_prev, m_now, fp)
    purpose_from_meaning(m_now, m_next, fp)
    d_now = (1.0 - w.alpha) * mb.m43 / mb.m13 - d * (m_now - fp.lambda_ * m_prev)
    d_next = (1.0 - w.alpha) * fp.lambda_ * (mb.m1 - mb.m43 / mb.m13) + d * fp.lambda_ * (
        m_next - fp.lambda_ * m_now
    )
    return d_now + fp.delta * d_next


def steady_state(fp: FirmParams) -> SteadyState:
    """Closed-form stationary meaning, purpose flow and socialization factor."""
    w = fp.worker
    mb = fp.moments
    p = fp.share_sum
    dl = fp.delta * fp.lambda_
    m_star = (
        (1.0 - w.alpha)
        * p**2
        / (4.0 * fp.c * w.a_k**2 * (1.0 - fp.lambda_))
        * (mb.m43 * mb.m13**5 + dl / (1.0 - dl) * mb.m1 * mb.m13**6)
    )
    r_star = (
        (1.0 - w.alpha)
        * p
        / (2.0 * fp.c * w.a_k)
        * (mb.m43 * mb.m13**2 + dl / (1.0 - dl) * mb.m1 * mb.m13**3)
    )
    k_star = p / (2.0 * w.a_k) * math.sqrt(r_star) * mb.m13
    return SteadyState(m_star=m_star, r_star=r_star, k_star=k_star)


def characteristic_roots(fp: FirmParams) -> tuple[float, float]:
    """Roots of the LQ characteristic equation; mu2 drives convergence.

    At lambda=0 the state decouples and adjustment is immediate; the root
    formula degenerates, so the convention (inf, 0.0) is returned.
    """
    if fp.lambda_ == 0.0:
        return math.inf, 0.0
    a = (1.0 + fp.delta * fp.lambda_**2) / (fp.delta * fp.lambda_)
    disc = math.sqrt(a * a - 4.0 / fp.delta)
    return 0.5 * (a + disc), 0.5 * (a - disc)


def saddle_condition(fp: FirmParams) -> float:
    """Closed-form saddle-path stability value; negative for all valid params."""
    w = fp.worker
    return (
        -4.0
        * fp.c
        * w.a_k**2
        * (1.0 - fp.lambda_)
        * (1.0 - fp.lambda_ * fp.delta)
        / (fp.share_sum**2 * fp.moments.m13**6)
    )


def transition_path(m0: float, horizon: int, fp: FirmParams) -> Trajectory:
    """Analytic saddle path from m0: geometric convergence at rate mu2.

    Raises InfeasiblePathError when the unconstrained path would need a
    negative purpose flow somewhere (possible for large m0); such starts
    are rejected rather than clamped.
    """
    if m0 < 0.0:
        raise ValidationError("initial meaning must be >= 0")
    if horizon < 1:
        raise ValidationError("horizon must be >= 1")
    ss = steady_state(fp)
    _, mu2 = characteristic_roots(fp)
    ts = np.arange(horizon + 1)
    m_path = ss.m_star + mu2**ts * (m0 - ss.m_star)
    points = [TrajectoryPoint(t=0, m_bar=float(m_path[0]), r=0.0, per_period_profit=0.0)]
    for t in range(1, horizon + 1):
        m_prev, m_now = float(m_path[t - 1]), float(m_path[t])
        try:
            r = purpose_from_meaning(m_prev, m_now, fp)
        except InfeasiblePathError as exc:
            raise InfeasiblePathError(
                f"path from m0={m0!r} infeasible at t={t}: {exc}"
            ) from exc
        points.append(
            TrajectoryPoint(
                t=t,
                m_bar=m_now,
                r=r,
                per_period_profit=reduced_objective(m_prev, m_now, fp),
            )
        )
    return Trajectory(points=tuple(points))


@dataclass(frozen=True)
class DpOracleResult:
    grid: np.ndarray
    fixed_point: float
    policy_path: np.ndarray  # greedy meaning path from m0, length horizon+1


def dp_oracle(
    fp: FirmParams,
    m_grid_size: int,
    horizon: int,
    m0: float = 0.0,
    grid_upper: float | None = None,
) -> DpOracleResult:
    """Brute-force check of the closed forms by value iteration on a grid.

    Backward induction over `horizon` periods on an evenly spaced meaning
    grid covering [0, 3*m_star] (or `grid_upper`), with transitions
    restricted to nonnegative purpose. Independent of the analytic path
    machinery: only the reduced objective is shared.
    """
    if m_grid_size < 3:
        raise ValidationError("m_grid_size must be >= 3")
    if horizon < 1:
        raise ValidationError("horizon must be >= 1")
    ss = steady_state(fp)
    upper = 3.0 * ss.m_star if grid_upper is None else grid_upper
    if upper <= 0.0:
        raise ValidationError("grid upper bound must be > 0")
    grid = np.linspace(0.0, upper, m_grid_size)
    cell = grid[1] - grid[0]

    w = fp.worker
    mb = fp.moments
    gap = grid[None, :] - fp.lambda_ * grid[:, None]  # gap[i, j] for m_i -> m_j
    feasible = gap >= -FEASIBILITY_TOL
    r = 2.0 * w.a_k * np.clip(gap, 0.0, None) / (fp.share_sum * mb.m13**3)
    output = (
        w.alpha / w.a_e * mb.m2
        + np.clip(gap, 0.0, None) * mb.m43 / mb.m13
        + fp.lambda_ * mb.m1 * grid[:, None]
    )
    payoff = np.where(feasible, (1.0 - w.alpha) * output - 0.5 * fp.c * r**2, -np.inf)

    value = np.zeros(m_grid_size)
    policy = np.zeros(m_grid_size, dtype=np.intp)
    for _ in range(horizon):
        total = payoff + fp.delta * value[None, :]
        policy = np.argmax(total, axis=1)
        value = total[np.arange(m_grid_size), policy]

    # Stationary point of the greedy policy, found by iterating it.
    idx = int(np.argmin(np.abs(grid - ss.m_star)))
    seen = set()
    while idx not in seen:
        seen.add(idx)
        idx = int(policy[idx])
    if idx in (0, m_grid_size - 1) and ss.m_star > cell:
        raise ValidationError("dp_oracle grid too coarse to bracket the fixed point")
    fixed_point = float(grid[idx])

    path = np.empty(horizon + 1)
    j = int(np.argmin(np.abs(grid - m0)))
    path[0] = grid[j]
    for t in range(1, horizon + 1):
        j = int(policy[j])
        path[t] = grid[j]
    return DpOracleResult(grid=grid, fixed_point=fixed_point, policy_path=path)
