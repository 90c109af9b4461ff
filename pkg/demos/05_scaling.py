"""Runtime and operation counts against the quadratic bounds.

Run with ``python demos/05_scaling.py``.
"""
# %%
from storeopt.bench import run_bench
from storeopt.solver import OpCounts

report = run_bench(sizes=(100, 500, 1000, 2500, 5000), repeats=3, seed=0)

# %%
for n, t, ops in zip(report.sizes, report.wall_times, report.op_counts):
    print(f"n={n:5d}  {t * 1000:7.1f} ms  flops {ops.flops:>9d} <= {OpCounts.flop_bound(n):>9d}"
          f"  comparisons {ops.comparisons:>9d} <= {OpCounts.comparison_bound(n):>11.0f}")
print("all within bounds:", report.within_bounds())
