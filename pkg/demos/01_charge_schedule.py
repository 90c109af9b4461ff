"""Cheapest way to cover a day of heat demand with a small store.

Run with ``python demos/01_charge_schedule.py``.
"""
# %%
import numpy as np

from storeopt import StorageScenario, build_problem, solve, storage_trajectory

# A day of hourly demand (kWh) and spot prices (EUR/kWh). Night hours are
# cheap and one afternoon hour has a negative price.
demand = np.array([0.8, 0.7, 0.7, 0.6, 0.6, 0.8, 1.2, 1.5, 1.3, 1.0, 0.9, 0.8,
                   0.8, 0.9, 0.9, 1.0, 1.2, 1.5, 1.6, 1.5, 1.3, 1.1, 1.0, 0.9])
price = np.array([0.030, 0.025, 0.022, 0.020, 0.021, 0.028, 0.045, 0.060, 0.055, 0.048, 0.042, 0.038,
                  0.035, -0.010, 0.033, 0.040, 0.050, 0.065, 0.070, 0.062, 0.052, 0.044, 0.038, 0.033])

# %%
# Without a store every hour buys exactly its demand.
no_store = StorageScenario(d=demand, c=price, C=3.0, S=0.0)
print("no storage:", round(solve(build_problem(no_store)[0]).objective, 4), "EUR")

# %%
# A 6 kWh store charged at up to 3 kW shifts purchases to cheap hours.
scenario = StorageScenario(d=demand, c=price, C=3.0, S=6.0)
problem, _ = build_problem(scenario)
sol = solve(problem)
print("with storage:", round(sol.objective, 4), "EUR")

# %%
# The schedule charges fully in the negative-price hour and keeps the store
# within [0, S] throughout.
traj = storage_trajectory(scenario, sol.x)
for hour, (x, level) in enumerate(zip(sol.x, traj.levels)):
    print(f"{hour:2d}h  price {price[hour]:+.3f}  charge {x:5.2f}  level {level:5.2f}")
print("levels within bounds:", traj.ok)
