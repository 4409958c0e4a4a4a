"""Dynamic model of purpose investment inside firms.

Closed-form worker equilibrium, the firm's scalar dynamic program
(steady state, Euler equation, transition path, grid-DP oracle),
steady-state analytics and ownership comparison, lognormal fractional
moments with stochastic-dominance checks, and distribution experiments.
"""

__version__ = "0.1.0"

from .analytics import (
    ComparativeReport,
    OwnershipMode,
    WorkerOwnedResult,
    comparative_statics,
    predicted_signs,
    profit_alternative_bracket,
    profit_closed_form,
    steady_state_outcomes,
    steady_state_profit,
    steady_state_utility,
    worker_owned_steady_state,
    worker_owned_utility,
)
from .distributions import (
    Dominance,
    Empirical,
    Lognormal,
    MomentBundle,
    fosd_check,
    fractional_moment,
    mean_preserving_spread,
    moment_bundle,
    sosd_check,
)
from .dynamics import (
    DpOracleResult,
    FirmParams,
    SteadyState,
    Trajectory,
    TrajectoryPoint,
    characteristic_roots,
    dp_oracle,
    euler_residual,
    law_of_motion,
    reduced_objective,
    saddle_condition,
    steady_state,
    transition_path,
)
from .errors import (
    InfeasiblePathError,
    PurposedynError,
    UnsupportedOperationError,
    ValidationError,
)
from .experiments import (
    AmbiguityReport,
    FosdExperiment,
    SpreadExperiment,
    profit_ambiguity_search,
    run_fosd_experiment,
    run_spread_experiment,
    spread_predicted_signs,
)
from .scenarios import Scenario, bundled_scenario_path, load_scenario, parse_scenario
from .workers import (
    PeriodState,
    WorkerParams,
    best_response_oracle,
    common_socialization,
    individual_meaning,
    individual_output,
    optimal_work_effort,
    worker_utility,
)
