"""Independent reference solvers, for testing the greedy solver.

Two routes, neither sharing code with :mod:`storeopt.solver`:

* ``exact_lp``: dense two-phase tableau simplex with Bland's rule.
* ``grid_enumeration``: exhaustive search over charges on a lattice of step h,
  done as a shortest path over lattice prefix sums.

Both are meant for test-sized instances only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .problem import CoreProblem, InfeasibleError, REL_TOL, check_feasible

EXACT_MAX_N = 50
GRID_MAX_N = 5


class SizeError(ValueError):
    pass


@dataclass
class OracleResult:
    objective: float
    x: np.ndarray
    method: str


def _pivot(T: np.ndarray, row: int, col: int) -> None:
    T[row] /= T[row, col]
    colvals = T[:, col].copy()
    colvals[row] = 0.0
    T -= np.outer(colvals, T[row])


def _bland(T: np.ndarray, basis: list[int], ncols: int, eps: float) -> None:
    """Run simplex iterations on tableau ``T`` (last row = reduced costs)."""
    m = len(basis)
    while True:
        reduced = T[-1, :ncols]
        entering = next((j for j in range(ncols) if reduced[j] < -eps), None)
        if entering is None:
            return
        column = T[:m, entering]
        best, leave = None, None
        for r in range(m):
            if column[r] > eps:
                ratio = T[r, -1] / column[r]
                if (
                    best is None
                    or ratio < best - eps
                    or (abs(ratio - best) <= eps and basis[r] < basis[leave])
                ):
                    best, leave = ratio, r
        if leave is None:
            raise RuntimeError("LP is unbounded")
        _pivot(T, leave, entering)
        basis[leave] = entering


def simplex_min(c, A_ub, b_ub, eps: float = 1e-10) -> tuple[np.ndarray, float]:
    """Minimize ``c @ x`` subject to ``A_ub @ x <= b_ub`` and ``x >= 0``."""
    c = np.asarray(c, dtype=float)
    A = np.asarray(A_ub, dtype=float)
    rhs = np.asarray(b_ub, dtype=float)
    m, n = A.shape

    # columns: x (n) | slacks (m) | artificials (one per negative rhs row) | rhs
    neg = np.flatnonzero(rhs < 0)
    n_art = neg.size
    width = n + m + n_art
    T = np.zeros((m + 1, width + 1))
    T[:m, :n] = A
    T[:m, n : n + m] = np.eye(m)
    T[:m, -1] = rhs
    T[neg, : n + m] *= -1
    T[neg, -1] *= -1
    basis = list(range(n, n + m))
    for k, r in enumerate(neg):
        T[r, n + m + k] = 1.0
        basis[r] = n + m + k

    if n_art:
        T[-1, n + m : width] = 1.0
        for r in neg:
            T[-1] -= T[r]
        _bland(T, basis, width, eps)
        if T[-1, -1] < -1e-8 * max(1.0, np.abs(rhs).max()):
            raise InfeasibleError("LP has no feasible point")
        # drive zero-level artificials out of the basis; rows left with no
        # structural entries are redundant and dropped
        keep = []
        for r in range(m):
            if basis[r] >= n + m:
                candidates = np.flatnonzero(np.abs(T[r, : n + m]) > eps)
                if candidates.size == 0:
                    continue
                _pivot(T, r, int(candidates[0]))
                basis[r] = int(candidates[0])
            keep.append(r)
        T = np.hstack([T[keep, : n + m], T[keep, -1:]])
        T = np.vstack([T, np.zeros((1, n + m + 1))])
        basis = [basis[r] for r in keep]

    cost = np.zeros(n + m)
    cost[:n] = c
    T[-1, :] = 0.0
    T[-1, : n + m] = cost
    for r, j in enumerate(basis):
        T[-1] -= cost[j] * T[r]
    _bland(T, basis, n + m, eps)

    x = np.zeros(n + m)
    for r, j in enumerate(basis):
        x[j] = T[r, -1]
    x = x[:n]
    return x, float(c @ x)


def _as_inequalities(problem: CoreProblem):
    n = problem.n
    lower = np.tril(np.ones((n, n)))
    A = np.vstack([np.eye(n), lower, -lower])
    rhs = np.concatenate([problem.u, problem.b, -problem.a])
    return A, rhs


def grid_search_lattice(problem: CoreProblem, step: float) -> tuple[np.ndarray, float]:
    """Best charge vector with every x_i a multiple of ``step`` in [0, u_i].

    Exhaustive over the lattice: states are lattice prefix sums, so the search
    visits every admissible combination without listing them one by one.
    """
    n = problem.n
    tol = problem.tolerance()
    caps = [int(np.floor(u / step + 1e-9)) for u in problem.u]
    K = sum(caps)
    levels = np.arange(K + 1) * step
    cost = np.full(K + 1, np.inf)
    cost[0] = 0.0
    choices = []
    for i in range(n):
        new = np.full(K + 1, np.inf)
        pick = np.zeros(K + 1, dtype=int)
        for t in range(caps[i] + 1):
            cand = cost[: K + 1 - t] + problem.c[i] * t * step
            better = cand < new[t:]
            new[t:][better] = cand[better]
            pick[t:][better] = t
        ok = (levels >= problem.a[i] - tol) & (levels <= problem.b[i] + tol)
        new[~ok] = np.inf
        cost = new
        choices.append(pick)
    s = int(np.argmin(cost))
    if not np.isfinite(cost[s]):
        raise InfeasibleError("no feasible point on the charge lattice")
    x = np.zeros(n)
    for i in range(n - 1, -1, -1):
        t = choices[i][s]
        x[i] = t * step
        s -= t
    return x, float(problem.c @ x)


def oracle_solve(problem: CoreProblem, method: str = "exact_lp", step: float | None = None) -> OracleResult:
    if method == "exact_lp":
        if problem.n > EXACT_MAX_N:
            raise SizeError(f"exact_lp is limited to n <= {EXACT_MAX_N}")
        A, rhs = _as_inequalities(problem)
        x, value = simplex_min(problem.c, A, rhs)
    elif method == "grid_enumeration":
        if problem.n > GRID_MAX_N:
            raise SizeError(f"grid_enumeration is limited to n <= {GRID_MAX_N}")
        if step is None or step <= 0:
            raise ValueError("grid_enumeration needs a positive step")
        x, value = grid_search_lattice(problem, step)
    else:
        raise ValueError(f"unknown method {method!r}")
    # clean pivoting round-off before handing the point out
    report = check_feasible(problem, x, problem.tolerance(REL_TOL))
    if not report.ok:
        raise RuntimeError(f"oracle produced an infeasible point (residual {report.residual:g})")
    return OracleResult(objective=value, x=x, method=method)


def random_prices(rng: np.random.Generator, n: int, band: float = 1e-3) -> np.ndarray:
    """Distinct prices uniform on [-1, 1] with |c| >= band."""
    while True:
        c = rng.uniform(band, 1.0, n) * rng.choice([-1.0, 1.0], n)
        if np.unique(c).size == n:
            return c


def random_instance(
    rng: np.random.Generator,
    n: int,
    prices: np.ndarray | None = None,
    max_tries: int = 1000,
) -> CoreProblem:
    """Random feasible lossless storage instance.

    Demands uniform on [0, 2], capacity on [1, 5], charge cap on [0.5, 3];
    draws without a feasible point are discarded.
    """
    from .problem import instance_has_feasible_point

    for _ in range(max_tries):
        d = rng.uniform(0.0, 2.0, n)
        S = rng.uniform(1.0, 5.0)
        C = rng.uniform(0.5, 3.0)
        c = random_prices(rng, n) if prices is None else np.asarray(prices, dtype=float)
        a = np.cumsum(d)
        p = CoreProblem(a=a, b=a + S, u=np.full(n, C), c=c)
        if instance_has_feasible_point(p):
            return p
    raise RuntimeError("could not draw a feasible instance")
