import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from storeopt.problem import (
    CoreProblem,
    DimensionError,
    check_feasible,
    instance_has_feasible_point,
    objective,
)


def P(a, b, u, c=None):
    return CoreProblem(a=a, b=b, u=u, c=np.zeros(len(a)) if c is None else c)


@pytest.mark.parametrize(
    "c, x, expected",
    [([1, 2, 3], [0, 0, 0], 0.0), ([2], [3], 6.0), ([0.5, -1, 2], [2, 1, 1], 2.0)],
)
def test_objective(c, x, expected):
    p = CoreProblem(a=np.zeros(len(c)), b=np.full(len(c), 10.0), u=np.full(len(c), 5.0), c=c)
    assert objective(p, x) == expected


def test_objective_length_mismatch():
    p = P([0], [1], [1], [1])
    with pytest.raises(DimensionError):
        objective(p, [1, 2])


def test_construction_rejects_bad_input():
    with pytest.raises(ValueError):
        P([], [], [])
    with pytest.raises(ValueError):
        P([2], [1], [1])
    with pytest.raises(ValueError):
        P([0], [1], [-1])
    with pytest.raises(DimensionError):
        CoreProblem(a=[0, 0], b=[1], u=[1, 1], c=[0, 0])


def test_problem_arrays_are_read_only():
    a = np.array([0.0, 1.0])
    p = P(a, [2, 3], [1, 1])
    a[0] = 5.0
    assert p.a[0] == 0.0
    with pytest.raises(ValueError):
        p.a[0] = 1.0


def test_check_feasible_pass():
    r = check_feasible(P([0], [5], [2]), [1], tol=0)
    assert r.ok and r.residual == 0


def test_check_feasible_cumulative_lower_violation():
    r = check_feasible(P([2], [5], [2]), [1], tol=0)
    assert not r.ok
    assert r.index == 0 and r.kind == "cumulative_lower"
    assert r.residual == 1.0


def test_check_feasible_two_intervals():
    assert check_feasible(P([0, 3], [2, 4], [3, 3]), [2, 2], tol=0).ok


def test_check_feasible_tolerance():
    p = P([0], [1], [1])
    assert not check_feasible(p, [1 + 1e-6]).ok
    assert check_feasible(p, [1 + 1e-6], tol=1e-5).ok
    with pytest.raises(ValueError):
        check_feasible(p, [0], tol=-1)


@pytest.mark.parametrize(
    "a, b, u, expected",
    [
        ([3], [5], [2], False),
        ([0, 2], [5, 5], [1, 1], True),
        ([0], [0], [5], True),
        # a later, tighter upper bound caps the early fill
        ([0, 2], [5, 2], [5, 5], True),
        ([0, -1], [1, -0.5], [1, 1], False),
    ],
)
def test_instance_has_feasible_point(a, b, u, expected):
    assert instance_has_feasible_point(P(a, b, u)) is expected


def _enumerate_feasible(a, b, u):
    for x in itertools.product(*[range(int(ui) + 1) for ui in u]):
        if check_feasible(P(a, b, u), x).ok:
            return True
    return False


@settings(max_examples=300, deadline=None)
@given(
    st.integers(1, 4).flatmap(
        lambda n: st.tuples(
            st.lists(st.integers(-2, 6), min_size=n, max_size=n),
            st.lists(st.integers(0, 4), min_size=n, max_size=n),
            st.lists(st.integers(0, 3), min_size=n, max_size=n),
        )
    )
)
def test_feasibility_matches_enumeration(data):
    # integer bounds: interval constraint matrices are totally unimodular, so
    # an integer point exists whenever any point does
    a, width, u = data
    b = [ai + wi for ai, wi in zip(a, width)]
    assert instance_has_feasible_point(P(a, b, u)) == _enumerate_feasible(a, b, u)
