"""Cost-optimal charging of buffer energy storage.

Typical use::

    from storeopt import StorageScenario, solve_scenario
    sol = solve_scenario(StorageScenario(d=demand, c=prices, C=9.0, S=14.71))
"""

from .loss_model import DecayModel, LossDataPoint, fit_decay_model, hourly_retention
from .problem import (
    ChargeSolution,
    CoreProblem,
    DimensionError,
    FeasibilityReport,
    InfeasibleError,
    check_feasible,
    instance_has_feasible_point,
    objective,
)
from .scenario import (
    CostModel,
    GridSearchResult,
    GridSpec,
    grid_search,
    solution_diagnostics,
    solve_scenario,
    total_cost,
)
from .solver import OpCounts, price_order, solve, solve_counted
from .transforms import (
    StorageScenario,
    TransformRecord,
    build_constant_loss,
    build_decay_loss,
    build_lossless,
    build_problem,
    recover_charges,
    storage_trajectory,
)

__version__ = "0.1.0"
