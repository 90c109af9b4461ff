"""Command line front end.

Exit codes: 0 success, 1 other error, 2 parse error, 3 infeasible,
4 numerical range error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import io
from .bench import DEFAULT_SIZES, run_bench
from .loss_model import fit_decay_model, retention_table
from .problem import DimensionError, InfeasibleError
from .scenario import CostModel, GridSpec, acquisition_cost, grid_search, solution_diagnostics, solve_scenario
from .transforms import NumericalRangeError, StorageScenario, storage_trajectory

EXIT_OK, EXIT_OTHER, EXIT_PARSE, EXIT_INFEASIBLE, EXIT_RANGE = 0, 1, 2, 3, 4


def _load_inputs(args):
    prices = io.read_series(args.prices)
    demand = io.read_series(args.demand)
    if len(prices) != len(demand):
        raise DimensionError(f"{len(prices)} prices but {len(demand)} demands")
    losses = None
    if getattr(args, "losses_csv", None):
        losses = io.read_series(args.losses_csv)
        if len(losses) != len(demand):
            raise DimensionError(f"{len(losses)} losses but {len(demand)} demands")
    return prices, demand, losses


def cmd_solve(args) -> int:
    prices, demand, losses = _load_inputs(args)
    kw = dict(
        d=demand.values,
        c=prices.values,
        C=args.C,
        q=1.0 if args.q is None else args.q,
        l=None if losses is None else losses.values,
        combine_losses=args.combine_losses,
    )
    scenario = StorageScenario(S=args.S, **kw)
    sol = solve_scenario(scenario, args.zero_as)
    traj = storage_trajectory(scenario, sol.x)
    diag = solution_diagnostics(scenario, sol.x)
    reference = acquisition_cost(StorageScenario(S=0.0, **kw))

    stamps = prices.timestamps or demand.timestamps
    if args.format == "csv":
        io.write_solution_csv(args.output, sol.x, traj.levels, stamps)
    else:
        io.write_json(
            args.output,
            {
                "schema_version": io.SCHEMA_VERSION,
                "objective": sol.objective,
                "no_storage_cost": io.finite_or_none(reference),
                "charges": [float(v) for v in sol.x],
                "levels": [float(v) for v in traj.levels],
                "diagnostics": diag.as_dict(),
                "parameters": {
                    "C": scenario.C,
                    "S": scenario.S,
                    "q": scenario.q,
                    "constant_losses": losses is not None,
                    "zero_as": args.zero_as,
                },
                "metadata": {k: v for k, v in sol.meta.items() if k != "scaled_objective"},
            },
        )
    print(f"objective: {sol.objective:.6f} EUR")
    if np.isfinite(reference):
        print(f"no-storage reference: {reference:.6f} EUR")
    else:
        print("no-storage reference: infeasible (C below some interval's demand)")
    return EXIT_OK


def _axis(lo: float, hi: float, step: float) -> np.ndarray:
    if step <= 0:
        raise ValueError("grid step must be positive")
    count = int(np.floor((hi - lo) / step + 1e-9)) + 1
    return lo + step * np.arange(count)


def cmd_gridsearch(args) -> int:
    prices, demand, _ = _load_inputs(args)
    model = None
    if args.losses:
        if not args.loss_data:
            raise ValueError("--losses needs --loss-data")
        model = fit_decay_model(io.read_loss_data(args.loss_data, liters=args.liters))
    spec = GridSpec(
        _axis(args.c_min, args.c_max, args.c_step),
        _axis(args.s_min, args.s_max, args.s_step),
        losses=args.losses,
    )
    cm = CostModel(k_slope=args.k_slope, l_slope=args.l_slope)
    result = grid_search(demand.values, prices.values, spec, cm, model, args.levels, args.workers)

    prefix = args.output
    io.write_surface_csv(f"{prefix}_surface.csv", result.c_values, result.s_values, result.surface)
    C, S, cost = result.argmin
    summary = {
        "schema_version": io.SCHEMA_VERSION,
        "argmin": {"C": C, "S": S, "total_cost": cost},
        "cost_model": {
            "k_slope": cm.k_slope,
            "l_slope": cm.l_slope,
            "converter_offset_excluded": cm.converter_offset,
        },
        "losses": args.losses,
        "decay_model": None if model is None else {"alpha": model.alpha, "beta": model.beta},
        "retention": {repr(float(s)): float(q) for s, q in zip(result.s_values, result.retention)},
        "feasible_cells": int(result.feasible.sum()),
        "total_cells": int(result.surface.size),
        "level_sets": {
            f"{p:g}": {
                "threshold": cost + p * abs(cost),
                "count": len(cells),
                "cells": [[c, s] for c, s in cells],
            }
            for p, cells in result.level_sets.items()
        },
    }
    io.write_json(f"{prefix}_summary.json", summary)
    print(f"minimum total cost {cost:.6f} EUR at C={C:g} kW, S={S:g} kWh")
    return EXIT_OK


def cmd_fit_loss(args) -> int:
    points = io.read_loss_data(args.loss_data, liters=args.liters)
    model = fit_decay_model(points)
    table = retention_table(model, [p.capacity for p in points])
    io.write_json(
        args.output,
        {
            "schema_version": io.SCHEMA_VERSION,
            "alpha": model.alpha,
            "beta": model.beta,
            "retention": [
                {"capacity_kwh": c, "daily_loss_kwh": p.daily_loss, "hourly_retention": q}
                for (c, q), p in zip(table, points)
            ],
        },
    )
    print(f"alpha={model.alpha:.7f} beta={model.beta:.5f}")
    return EXIT_OK


def cmd_bench(args) -> int:
    report = run_bench(args.sizes, args.repeats, args.seed)
    if args.output:
        io.write_json(args.output, {"schema_version": io.SCHEMA_VERSION, **report.as_dict()})
    for n, t, ops in zip(report.sizes, report.wall_times, report.op_counts):
        print(f"n={n:6d}  {t:9.5f} s  flops={ops.flops}  comparisons={ops.comparisons}")
    return EXIT_OK


def cmd_gen_synthetic(args) -> int:
    demand, price, stamps = io.synthetic_series(args.n, args.seed, args.demand_shape, args.price_shape)
    Path(args.output).parent.mkdir(parents=True, exist_ok=True)
    io.write_series(f"{args.output}_prices.csv", price, "price_eur_per_kwh", stamps)
    io.write_series(f"{args.output}_demand.csv", demand, "demand_kwh", stamps)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="storeopt", description="Cost-optimal storage charging")
    sub = parser.add_subparsers(dest="command", required=True)

    def inputs(p):
        p.add_argument("--prices", required=True, help="price CSV [EUR/kWh]")
        p.add_argument("--demand", required=True, help="demand CSV [kWh per hour]")

    p = sub.add_parser("solve", help="optimal charge schedule for one system")
    inputs(p)
    p.add_argument("--C", type=float, required=True, help="charge power [kW]")
    p.add_argument("--S", type=float, required=True, help="storage capacity [kWh]")
    p.add_argument("--q", type=float, default=None, help="hourly retention factor (default 1)")
    p.add_argument("--losses-csv", help="constant standby losses per hour [kWh]")
    p.add_argument("--combine-losses", action="store_true", help="allow --losses-csv with q < 1")
    p.add_argument("--zero-as", choices=["positive", "negative"], default="positive")
    p.add_argument("--format", choices=["csv", "json"], default="json")
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("gridsearch", help="total cost over a (C, S) grid")
    inputs(p)
    p.add_argument("--c-min", type=float, default=3.0)
    p.add_argument("--c-max", type=float, default=100.0)
    p.add_argument("--c-step", type=float, default=1.0)
    p.add_argument("--s-min", type=float, default=0.0)
    p.add_argument("--s-max", type=float, default=410.0)
    p.add_argument("--s-step", type=float, default=10.0)
    p.add_argument("--k-slope", type=float, default=0.47, help="EUR per kW and year")
    p.add_argument("--l-slope", type=float, default=0.95, help="EUR per kWh and year")
    p.add_argument("--losses", action="store_true", help="capacity-dependent standby losses")
    p.add_argument("--loss-data", help="loss data CSV (capacity, daily loss)")
    p.add_argument("--liters", action="store_true", help="loss data capacities are liters")
    p.add_argument("--levels", type=float, nargs="+", default=[0.05, 0.10])
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--output", required=True, help="output prefix")
    p.set_defaults(func=cmd_gridsearch)

    p = sub.add_parser("fit-loss", help="fit the standby-loss power law")
    p.add_argument("--loss-data", required=True)
    p.add_argument("--liters", action="store_true")
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_fit_loss)

    p = sub.add_parser("bench", help="runtime and op-count scaling")
    p.add_argument("--sizes", type=int, nargs="+", default=list(DEFAULT_SIZES))
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gen-synthetic", help="write reproducible price/demand CSVs")
    p.add_argument("--n", type=int, default=8760)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--demand-shape", choices=["flat", "seasonal"], default="seasonal")
    p.add_argument("--price-shape", choices=["flat", "diurnal-with-negatives"], default="diurnal-with-negatives")
    p.add_argument("--output", required=True, help="output prefix")
    p.set_defaults(func=cmd_gen_synthetic)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except io.ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except NumericalRangeError as exc:
        print(f"numerical range: {exc}", file=sys.stderr)
        return EXIT_RANGE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OTHER


if __name__ == "__main__":
    sys.exit(main())
