"""Canonical structured LP for storage charging.

    min  sum_j c_j x_j
    s.t. 0 <= x_i <= u_i
         a_i <= x_1 + ... + x_i <= b_i        for all i

Every builder in :mod:`storeopt.transforms` produces a :class:`CoreProblem`
and every solver consumes one.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

REL_TOL = 1e-9


class DimensionError(ValueError):
    """Sequence lengths do not agree."""


class InfeasibleError(ValueError):
    """The instance has no feasible point.

    ``index`` is the 0-based interval of the first violated cumulative bound.
    """

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


def _frozen(values, name: str) -> np.ndarray:
    arr = np.array(values, dtype=float, copy=True).reshape(-1)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class CoreProblem:
    """One instance of the structured LP.

    ``row_scale`` is set by builders that rescale constraint i (and variable i)
    by a positive factor; feasibility tolerances are then scaled per row so
    they mean the same thing in physical units for every interval.
    """

    a: np.ndarray
    b: np.ndarray
    u: np.ndarray
    c: np.ndarray
    row_scale: np.ndarray | None = None

    def __post_init__(self):
        for name in ("a", "b", "u", "c"):
            object.__setattr__(self, name, _frozen(getattr(self, name), name))
        if self.row_scale is not None:
            scale = _frozen(self.row_scale, "row_scale")
            if scale.size != self.a.size or np.any(scale <= 0):
                raise ValueError("row_scale must be positive with one entry per interval")
            object.__setattr__(self, "row_scale", scale)
        n = self.a.size
        if n == 0:
            raise ValueError("problem must have at least one interval")
        if not (self.b.size == self.u.size == self.c.size == n):
            raise DimensionError(
                f"lengths differ: a={n}, b={self.b.size}, u={self.u.size}, c={self.c.size}"
            )
        if np.any(self.a > self.b):
            i = int(np.argmax(self.a > self.b))
            raise ValueError(f"a[{i}] > b[{i}]")
        if np.any(self.u < 0):
            i = int(np.argmax(self.u < 0))
            raise ValueError(f"u[{i}] is negative")

    @property
    def n(self) -> int:
        return self.a.size

    def tolerance(self, rel: float = REL_TOL):
        """Feasibility tolerance ``rel * max(1, max|b|)``.

        With ``row_scale`` the bound is taken in unscaled units and the result
        is a per-row array.
        """
        if self.row_scale is None:
            return rel * max(1.0, float(np.max(np.abs(self.b))))
        unscaled = np.abs(self.b) / self.row_scale
        return rel * max(1.0, float(np.max(unscaled))) * self.row_scale


@dataclass(frozen=True)
class FeasibilityReport:
    ok: bool
    residual: float
    index: int | None = None
    kind: str | None = None

    def __bool__(self):
        return self.ok


@dataclass
class ChargeSolution:
    x: np.ndarray
    objective: float
    feasibility_residual: float
    meta: dict = field(default_factory=dict)


def _as_charge(problem: CoreProblem, x) -> np.ndarray:
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.size != problem.n:
        raise DimensionError(f"expected {problem.n} charges, got {x.size}")
    return x


def objective(problem: CoreProblem, x) -> float:
    x = _as_charge(problem, x)
    return float(np.dot(problem.c, x))


def check_feasible(problem: CoreProblem, x, tol=0.0) -> FeasibilityReport:
    """Check box and cumulative constraints of ``x`` against ``problem``.

    ``tol`` is a scalar or a per-interval array. The residual is the largest
    violation over all 4n constraints; index/kind point at that constraint.
    """
    if np.any(np.asarray(tol) < 0):
        raise ValueError("tol must be nonnegative")
    x = _as_charge(problem, x)
    prefix = np.cumsum(x)
    violations = {
        "box_lower": -x,
        "box_upper": x - problem.u,
        "cumulative_lower": problem.a - prefix,
        "cumulative_upper": prefix - problem.b,
    }
    worst, where, kind = 0.0, None, None
    ok = True
    for name, v in violations.items():
        ok = ok and bool(np.all(v <= tol))
        i = int(np.argmax(v))
        if v[i] > worst:
            worst, where, kind = float(v[i]), i, name
    return FeasibilityReport(ok=ok, residual=worst, index=where, kind=kind)


def max_prefix_fill(problem: CoreProblem) -> np.ndarray:
    """Largest attainable prefix sums, charging as early and as much as allowed.

    Prefix sums never decrease, so the cap at step i is the smallest upper
    bound from i onward, not just ``b_i``.
    """
    cap = np.minimum.accumulate(problem.b[::-1])[::-1]
    filled = np.empty(problem.n)
    total = 0.0
    for i in range(problem.n):
        total = min(total + problem.u[i], cap[i])
        filled[i] = total
    return filled


def first_infeasible_index(problem: CoreProblem, tol=0.0) -> int | None:
    """Index of the first cumulative bound no feasible point can meet, else None."""
    if np.any(problem.b < -tol):
        return int(np.argmax(problem.b < -tol))
    short = problem.a - max_prefix_fill(problem) > tol
    if np.any(short):
        return int(np.argmax(short))
    return None


def instance_has_feasible_point(problem: CoreProblem, tol=0.0) -> bool:
    return first_infeasible_index(problem, tol) is None
