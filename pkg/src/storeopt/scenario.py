"""System sizing: total annual cost over a grid of charge powers and capacities."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .loss_model import DecayModel, hourly_retention
from .problem import ChargeSolution, InfeasibleError
from .solver import solve
from .transforms import StorageScenario, build_problem, recover_charges, storage_trajectory

MAX_CHARGE_RTOL = 1e-9


@dataclass(frozen=True)
class CostModel:
    """Linear annualized investment costs.

    ``converter_offset`` is the fixed part of the converter price fit. It does
    not move the optimum, so it is left out of the objective and only reported.
    """

    k_slope: float = 0.47  # EUR per kW and year
    l_slope: float = 0.95  # EUR per kWh and year
    converter_offset: float = 130.0  # EUR, one-off

    def __post_init__(self):
        if self.k_slope < 0 or self.l_slope < 0:
            raise ValueError("cost slopes must be nonnegative")

    def investment(self, C: float, S: float) -> float:
        return self.k_slope * C + self.l_slope * S


@dataclass(frozen=True)
class GridSpec:
    c_values: np.ndarray
    s_values: np.ndarray
    losses: bool = False

    def __post_init__(self):
        cv = np.array(self.c_values, dtype=float).reshape(-1)
        sv = np.array(self.s_values, dtype=float).reshape(-1)
        if cv.size == 0 or sv.size == 0:
            raise ValueError("grid axes must be nonempty")
        if np.any(cv <= 0) or np.any(sv < 0):
            raise ValueError("charge powers must be positive and capacities nonnegative")
        if np.any(np.diff(cv) <= 0) or np.any(np.diff(sv) <= 0):
            raise ValueError("grid axes must be strictly ascending")
        object.__setattr__(self, "c_values", cv)
        object.__setattr__(self, "s_values", sv)

    @classmethod
    def household(cls, losses: bool = False) -> "GridSpec":
        """3..100 kW in 1 kW steps, 0..410 kWh in 10 kWh steps."""
        return cls(np.arange(3.0, 101.0), np.arange(0.0, 411.0, 10.0), losses)


@dataclass
class GridSearchResult:
    c_values: np.ndarray
    s_values: np.ndarray
    surface: np.ndarray  # total cost, +inf where infeasible
    acquisition: np.ndarray  # optimal energy cost per cell, +inf where infeasible
    retention: np.ndarray  # hourly q used per capacity
    argmin: tuple[float, float, float]
    level_sets: dict[float, list[tuple[float, float]]]
    cost_model: CostModel = field(default_factory=CostModel)

    @property
    def feasible(self) -> np.ndarray:
        return np.isfinite(self.surface)


def solve_scenario(s: StorageScenario, zero_as: str = "positive") -> ChargeSolution:
    """Optimal charges in physical units for ``s``."""
    problem, record = build_problem(s)
    scaled = solve(problem, zero_as)
    x = recover_charges(scaled.x, record)
    return ChargeSolution(
        x=x,
        objective=float(np.dot(s.c, x)),
        feasibility_residual=scaled.feasibility_residual,
        meta={"kind": record.kind, "scaled_objective": scaled.objective, **record.meta},
    )


def acquisition_cost(s: StorageScenario) -> float:
    """Optimal energy purchase cost, ``inf`` if the scenario is infeasible."""
    try:
        return solve_scenario(s).objective
    except InfeasibleError:
        return math.inf


def total_cost(s: StorageScenario, cm: CostModel) -> float:
    return cm.investment(s.C, s.S) + acquisition_cost(s)


def _cell(args):
    d, c, C, S, q = args
    if np.isnan(q):
        return math.inf
    return acquisition_cost(StorageScenario(d=d, c=c, C=C, S=S, q=q))


def level_set(result_surface, c_values, s_values, best: float, p: float):
    """Cells within ``p`` (fractional) of the best total cost.

    The threshold is ``best + p * |best|`` so it also works for a negative best.
    """
    limit = best + p * abs(best)
    rows, cols = np.nonzero(result_surface <= limit)
    return [(float(c_values[r]), float(s_values[k])) for r, k in zip(rows, cols)]


def grid_search(
    demands,
    prices,
    spec: GridSpec,
    cm: CostModel,
    model: DecayModel | None = None,
    levels=(0.05, 0.10),
    workers: int | None = None,
) -> GridSearchResult:
    """Evaluate total cost on every (C, S) cell of ``spec``.

    With ``spec.losses`` each capacity gets its own hourly retention from
    ``model``; a zero capacity stores nothing and is evaluated lossless.
    Infeasible cells hold ``inf``. ``workers > 1`` spreads cells over
    processes; the result does not depend on the worker count.
    """
    d = np.asarray(demands, dtype=float)
    c = np.asarray(prices, dtype=float)
    if spec.losses and model is None:
        raise ValueError("a DecayModel is required when losses are enabled")

    retention = np.ones(spec.s_values.size)
    if spec.losses:
        for k, S in enumerate(spec.s_values):
            if S > 0:
                try:
                    retention[k] = hourly_retention(model, S)
                except ValueError:
                    retention[k] = np.nan  # store too small to hold anything overnight

    tasks = [
        (d, c, C, S, retention[k])
        for C in spec.c_values
        for k, S in enumerate(spec.s_values)
    ]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(_cell, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        values = [_cell(t) for t in tasks]

    acquisition = np.array(values, dtype=float).reshape(spec.c_values.size, spec.s_values.size)
    invest = cm.k_slope * spec.c_values[:, None] + cm.l_slope * spec.s_values[None, :]
    surface = invest + acquisition
    if not np.isfinite(surface).any():
        raise InfeasibleError("every grid cell is infeasible")

    r, k = np.unravel_index(int(np.argmin(surface)), surface.shape)
    best = float(surface[r, k])
    return GridSearchResult(
        c_values=spec.c_values,
        s_values=spec.s_values,
        surface=surface,
        acquisition=acquisition,
        retention=retention,
        argmin=(float(spec.c_values[r]), float(spec.s_values[k]), best),
        level_sets={p: level_set(surface, spec.c_values, spec.s_values, best, p) for p in levels},
        cost_model=cm,
    )


@dataclass
class Diagnostics:
    zero_charges: int
    max_charges: int
    intermediate_charges: int
    total_energy: float
    end_level: float
    feasible: bool
    histogram: np.ndarray
    bin_edges: np.ndarray

    def as_dict(self) -> dict:
        return {
            "zero_charges": self.zero_charges,
            "max_charges": self.max_charges,
            "intermediate_charges": self.intermediate_charges,
            "total_energy": self.total_energy,
            "end_level": self.end_level,
            "feasible": self.feasible,
            "histogram": [int(v) for v in self.histogram],
            "bin_edges": [float(v) for v in self.bin_edges],
        }


def solution_diagnostics(s: StorageScenario, x, bins: int = 10) -> Diagnostics:
    """Charge statistics: how often the converter idles, runs flat out, or in between."""
    x = np.asarray(x, dtype=float)
    zero = x <= MAX_CHARGE_RTOL * s.C
    full = x >= s.C * (1 - MAX_CHARGE_RTOL)
    traj = storage_trajectory(s, x)
    hist, edges = np.histogram(np.clip(x, 0.0, s.C), bins=bins, range=(0.0, s.C))
    return Diagnostics(
        zero_charges=int(zero.sum()),
        max_charges=int(full.sum()),
        intermediate_charges=int((~zero & ~full).sum()),
        total_energy=float(x.sum()),
        end_level=float(traj.levels[-1]),
        feasible=traj.ok,
        histogram=hist,
        bin_edges=edges,
    )
