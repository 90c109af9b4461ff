import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from storeopt.oracle import oracle_solve, random_instance
from storeopt.problem import CoreProblem, InfeasibleError, check_feasible
from storeopt.solver import OpCounts, price_order, solve, solve_counted

from conftest import tied_prices


@pytest.mark.parametrize(
    "c, expected",
    [([3, 1, 2], [2, 3, 1]), ([5, 5, 5], [1, 2, 3]), ([0.04, -0.01, 0.04], [2, 1, 3])],
)
def test_price_order(c, expected):
    assert list(price_order(c) + 1) == expected


def test_nonnegative_price_without_demand_buys_nothing():
    s = solve(CoreProblem(a=[0], b=[10], u=[5], c=[1]))
    assert list(s.x) == [0.0] and s.objective == 0.0


def test_negative_price_fills_to_cap():
    s = solve(CoreProblem(a=[0], b=[10], u=[5], c=[-1]))
    assert list(s.x) == [5.0] and s.objective == -5.0


def test_small_instance_matches_lattice_search():
    p = CoreProblem(a=[1, 1, 3], b=[4, 4, 5], u=[2, 2, 2], c=[3, 1, 2])
    grid = oracle_solve(p, "grid_enumeration", step=0.01)
    s = solve(p)
    # exact optimum is 5 (x = [1, 2, 0]); the lattice contains it
    assert grid.objective == pytest.approx(5.0)
    assert s.objective == pytest.approx(grid.objective, abs=1e-12)
    np.testing.assert_allclose(s.x, [1, 2, 0], atol=1e-12)


def test_inputs_not_mutated():
    p = CoreProblem(a=[1, 2], b=[3, 4], u=[2, 2], c=[1, -1])
    a, b = p.a.copy(), p.b.copy()
    solve(p)
    assert np.array_equal(p.a, a) and np.array_equal(p.b, b)


def test_infeasible_instance_names_interval():
    p = CoreProblem(a=[0, 0, 9], b=[10, 10, 10], u=[2, 2, 2], c=[1, 1, 1])
    with pytest.raises(InfeasibleError) as exc:
        solve(p)
    assert exc.value.index == 2
    assert "interval 2" in str(exc.value)


def test_zero_as_flag_validated():
    with pytest.raises(ValueError):
        solve(CoreProblem(a=[0], b=[1], u=[1], c=[0]), zero_as="maybe")


def test_zero_price_variants():
    p = CoreProblem(a=[0, 1], b=[3, 3], u=[2, 2], c=[0.0, 1.0])
    pos = solve(p, "positive")
    neg = solve(p, "negative")
    np.testing.assert_allclose(pos.x, [1, 0])
    np.testing.assert_allclose(neg.x, [2, 0])
    assert pos.objective == neg.objective == 0.0


def test_counted_matches_plain(rng):
    p = random_instance(rng, 40)
    plain = solve(p)
    counted, ops = solve_counted(p)
    assert np.array_equal(plain.x, counted.x)
    assert ops.flops > 0 and ops.comparisons > 0


@pytest.mark.parametrize("n, flop_limit", [(1, 4), (10, 130)])
def test_flop_bound_small(rng, n, flop_limit):
    _, ops = solve_counted(random_instance(rng, n))
    assert ops.flops <= flop_limit
    assert ops.within_bounds(n)


def test_comparison_bound_n100(rng):
    _, ops = solve_counted(random_instance(rng, 100))
    assert ops.comparisons <= 15250


def test_counts_hit_bound_when_all_prices_nonnegative():
    n = 7
    p = CoreProblem(a=np.arange(1, n + 1), b=np.arange(1, n + 1) + 2.0, u=np.full(n, 3.0), c=np.arange(n, 0, -1))
    _, ops = solve_counted(p)
    assert ops == OpCounts(n * n + 3 * n, int(1.5 * n * n + 2.5 * n))


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 12), st.integers(0, 2**32 - 1))
def test_price_order_invariance(n, seed):
    rng = np.random.default_rng(seed)
    p = random_instance(rng, n)
    rank = np.empty(n)
    rank[np.argsort(p.c)] = np.arange(n)
    # strictly order- and sign-preserving remap: |c| >= 1e-3 so eps*rank stays small
    warped = 2 * p.c + 1e-6 * rank
    q = CoreProblem(a=p.a, b=p.b, u=p.u, c=warped)
    assert np.array_equal(solve(p).x, solve(q).x)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 12), st.integers(0, 2**32 - 1))
def test_solution_feasible_and_optimal(n, seed):
    rng = np.random.default_rng(seed)
    p = random_instance(rng, n)
    s = solve(p)
    assert check_feasible(p, s.x, p.tolerance()).ok
    ref = oracle_solve(p)
    assert s.objective == pytest.approx(ref.objective, rel=1e-6, abs=1e-9)
    np.testing.assert_allclose(s.x, ref.x, atol=1e-6)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 12), st.integers(0, 2**32 - 1))
def test_tie_variants_agree(n, seed):
    rng = np.random.default_rng(seed)
    p = random_instance(rng, n, prices=tied_prices(rng, n))
    pos, neg = solve(p, "positive"), solve(p, "negative")
    assert pos.objective == pytest.approx(neg.objective, abs=1e-9)
    assert pos.objective == pytest.approx(oracle_solve(p).objective, abs=1e-8)
    assert check_feasible(p, neg.x, p.tolerance()).ok
