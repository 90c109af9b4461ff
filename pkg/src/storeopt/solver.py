"""Price-ordered greedy solver for :class:`~storeopt.problem.CoreProblem`.

Intervals are visited from cheapest to most expensive. Each visit fixes the
charge of one interval from the current bounds and then shifts the cumulative
bounds of that interval and every later one down by the fixed amount. The
result is an exact minimizer; see the README for the argument sketch.

Cost: at most ``n**2 + 3n`` additions/subtractions and ``1.5 n**2 + 2.5 n``
comparisons, not counting the initial sort.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .problem import (
    ChargeSolution,
    CoreProblem,
    InfeasibleError,
    check_feasible,
    first_infeasible_index,
)

ZeroAs = Literal["positive", "negative"]


@dataclass(frozen=True)
class OpCounts:
    flops: int = 0
    comparisons: int = 0

    @staticmethod
    def flop_bound(n: int) -> int:
        return n * n + 3 * n

    @staticmethod
    def comparison_bound(n: int) -> float:
        return 1.5 * n * n + 2.5 * n

    def within_bounds(self, n: int) -> bool:
        return self.flops <= self.flop_bound(n) and self.comparisons <= self.comparison_bound(n)


def price_order(c) -> np.ndarray:
    """0-based interval indices by ascending price; ties keep original order."""
    return np.argsort(np.asarray(c, dtype=float), kind="stable")


def _check_zero_as(zero_as: str) -> None:
    if zero_as not in ("positive", "negative"):
        raise ValueError(f"zero_as must be 'positive' or 'negative', got {zero_as!r}")


def _run(problem: CoreProblem, zero_as: ZeroAs, count: bool):
    _check_zero_as(zero_as)
    tol = problem.tolerance()
    bad = first_infeasible_index(problem, tol)
    if bad is not None:
        raise InfeasibleError(
            f"no feasible charge schedule: cumulative bound at interval {bad} cannot be met",
            index=bad,
        )

    n = problem.n
    a = problem.a.copy()
    b = problem.b.copy()
    u = problem.u
    c = problem.c
    x = np.zeros(n)
    flops = comparisons = 0

    for i in price_order(c):
        i = int(i)
        lower_before = max(0.0, a[:i].max()) if i else 0.0
        # The 0 in the suffix maximum is redundant: lower_before >= 0 already
        # clamps the difference below at 0.
        lower_after = a[i:].max()
        upper_after = b[i:].min()
        room = min(u[i], upper_after - lower_before)
        if c[i] > 0 or (c[i] == 0 and zero_as == "positive"):
            xi = min(max(0.0, lower_after - lower_before), room)
            step_flops, step_cmp = 2, 3
        else:
            xi = room
            step_flops, step_cmp = 1, 1
        x[i] = xi
        a[i:] -= xi
        b[i:] -= xi
        if count:
            tail = n - i
            flops += step_flops + 2 * tail
            # prefix max over {0, a_0..a_{i-1}}, suffix max and min, sign test
            comparisons += i + 2 * (tail - 1) + 1 + step_cmp

    report = check_feasible(problem, x, tol)
    solution = ChargeSolution(
        x=x,
        objective=float(np.dot(c, x)),
        feasibility_residual=report.residual,
        meta={"zero_as": zero_as},
    )
    return solution, OpCounts(flops, comparisons)


def solve(problem: CoreProblem, zero_as: ZeroAs = "positive") -> ChargeSolution:
    """Return a minimizer of ``problem``.

    ``zero_as`` decides whether zero-price intervals are handled like
    positive prices (charge only what is needed) or like negative ones
    (charge as much as fits). Both give the same optimal cost.

    Raises :class:`InfeasibleError` if the instance has no feasible point.
    """
    return _run(problem, zero_as, count=False)[0]


def solve_counted(
    problem: CoreProblem, zero_as: ZeroAs = "positive"
) -> tuple[ChargeSolution, OpCounts]:
    """Like :func:`solve`, also returning the arithmetic/comparison tally."""
    return _run(problem, zero_as, count=True)
