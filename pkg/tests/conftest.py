import numpy as np
import pytest

from storeopt.problem import instance_has_feasible_point
from storeopt.transforms import StorageScenario, build_problem


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def random_scenario(rng, n, q=1.0, prices=None, max_tries=1000):
    """Feasible random storage scenario (demand [0, 2], S [1, 5], C [0.5, 3])."""
    for _ in range(max_tries):
        d = rng.uniform(0.0, 2.0, n)
        c = rng.uniform(-1.0, 1.0, n) if prices is None else prices(rng, n)
        s = StorageScenario(d=d, c=c, C=rng.uniform(0.5, 3.0), S=rng.uniform(1.0, 5.0), q=q)
        problem, _ = build_problem(s)
        if instance_has_feasible_point(problem, problem.tolerance()):
            return s
    raise RuntimeError("no feasible scenario drawn")


def tied_prices(rng, n):
    """Prices from a small menu so ties and zeros are frequent."""
    return rng.choice([-0.5, -0.1, 0.0, 0.0, 0.2, 0.2, 0.7], size=n)
