"""Runtime and operation-count scaling of the greedy solver."""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass

import numpy as np

from .oracle import random_instance
from .solver import OpCounts, solve_counted

DEFAULT_SIZES = (100, 500, 1000, 2500, 5000)


@dataclass
class BenchReport:
    sizes: list[int]
    wall_times: list[float]
    op_counts: list[OpCounts]
    seed: int
    repeats: int

    def within_bounds(self) -> bool:
        return all(c.within_bounds(n) for n, c in zip(self.sizes, self.op_counts))

    def as_dict(self) -> dict:
        return {
            "sizes": self.sizes,
            "wall_times": self.wall_times,
            "op_counts": [
                {
                    "flops": c.flops,
                    "comparisons": c.comparisons,
                    "flop_bound": OpCounts.flop_bound(n),
                    "comparison_bound": OpCounts.comparison_bound(n),
                }
                for n, c in zip(self.sizes, self.op_counts)
            ],
            "seed": self.seed,
            "repeats": self.repeats,
        }


def bench_instance(n: int, seed: int):
    """Feasible random instance for size ``n``; the same (n, seed) always gives the same one."""
    return random_instance(np.random.default_rng([seed, n]), n)


def run_bench(sizes=DEFAULT_SIZES, repeats: int = 3, seed: int = 0) -> BenchReport:
    if repeats < 1:
        raise ValueError("repeats must be at least 1")
    sizes = [int(n) for n in sizes]
    if any(n < 1 for n in sizes):
        raise ValueError("sizes must be positive")
    times, counts = [], []
    for n in sizes:
        problem = bench_instance(n, seed)
        runs = []
        for _ in range(repeats):
            t0 = time.perf_counter()
            _, ops = solve_counted(problem)
            runs.append(time.perf_counter() - t0)
        times.append(statistics.median(runs))
        counts.append(ops)
    return BenchReport(sizes=sizes, wall_times=times, op_counts=counts, seed=seed, repeats=repeats)
