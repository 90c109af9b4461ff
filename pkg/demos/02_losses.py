"""Standby losses: constant per-hour losses and exponential decay.

Run with ``python demos/02_losses.py``.
"""
# %%
import numpy as np

from storeopt import StorageScenario, build_problem, recover_charges, solve, storage_trajectory
from storeopt.io import synthetic_series

demand, price, _ = synthetic_series(24 * 14, seed=3)

# %%
# Lossless reference for a two-week horizon.
base = dict(d=demand, c=price, C=6.0, S=30.0)
lossless = solve(build_problem(StorageScenario(**base))[0])
print("lossless:", round(lossless.objective, 4), "EUR")

# %%
# Constant losses are simply added to the demand of each hour.
flat_loss = StorageScenario(**base, l=np.full(demand.size, 0.05))
sol = solve(build_problem(flat_loss)[0])
print("0.05 kWh/h constant loss:", round(sol.objective, 4), "EUR")

# %%
# Decay keeps a fraction q of the content each hour. The builder rescales
# the charges so the same solver applies; recover_charges undoes the scaling.
for q in (0.999, 0.996, 0.99):
    s = StorageScenario(**base, q=q)
    problem, rec = build_problem(s)
    x = recover_charges(solve(problem).x, rec)
    traj = storage_trajectory(s, x)
    print(f"q={q}: {np.dot(price, x):.4f} EUR, bought {x.sum():.1f} kWh"
          f" for {demand.sum():.1f} kWh demand, levels ok: {traj.ok}")
