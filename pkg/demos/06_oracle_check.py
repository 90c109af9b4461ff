"""Cross-check the greedy solver against an exact simplex on small instances.

Run with ``python demos/06_oracle_check.py``.
"""
# %%
import numpy as np

from storeopt import solve
from storeopt.oracle import oracle_solve, random_instance

rng = np.random.default_rng(0)
worst = 0.0
for _ in range(200):
    p = random_instance(rng, int(rng.integers(1, 13)))
    worst = max(worst, abs(solve(p).objective - oracle_solve(p).objective))
print(f"largest objective gap over 200 instances: {worst:.2e}")

# %%
# On tiny instances a brute-force lattice search gives an independent bound:
# its best point can never beat the LP optimum.
p = random_instance(rng, 3)
grid = oracle_solve(p, "grid_enumeration", step=0.05)
print("greedy", round(solve(p).objective, 6), "<= lattice", round(grid.objective, 6))
