"""Choose charge power and capacity by minimizing investment plus energy cost.

Run with ``python demos/04_sizing_grid.py``. A coarse grid over two synthetic
months keeps the run short; the CLI ``gridsearch`` command does full years.
"""
# %%
import numpy as np

from storeopt import CostModel, GridSpec, grid_search
from storeopt.io import synthetic_series
from storeopt.loss_model import fit_decay_model, reference_points

demand, price, _ = synthetic_series(24 * 60, seed=11)
# scale the yearly investment slopes down to the two-month horizon
cm = CostModel(k_slope=0.47 * 60 / 365, l_slope=0.95 * 60 / 365)

# %%
spec = GridSpec(np.arange(4.0, 61.0, 8.0), np.arange(0.0, 70.0, 10.0))
lossless = grid_search(demand, price, spec, cm)
print("lossless optimum (C, S, EUR):", lossless.argmin)

# %%
# With losses every capacity gets its own hourly retention factor.
lossy_spec = GridSpec(spec.c_values, spec.s_values, losses=True)
lossy = grid_search(demand, price, lossy_spec, cm, fit_decay_model(reference_points()))
print("lossy optimum (C, S, EUR):", lossy.argmin)
print("retention per capacity:", np.round(lossy.retention, 5))

# %%
# Near-optimal systems: within 5 % and 10 % of the best total cost.
for p, cells in lossy.level_sets.items():
    print(f"within {p:.0%}: {len(cells)} cells")
