"""Build :class:`CoreProblem` instances from physical storage scenarios.

Three loss models are supported:

* lossless: the store keeps its content,
* constant loss: a fixed standby loss ``l_i`` per interval, added to demand,
* decay: the content shrinks by a retention factor ``q`` every interval.

Decay is turned into the canonical form by rescaling the charges,
``y_j = q**(n - j) * x_j`` (1-based j). Anchoring the exponent at the horizon
end keeps every factor in (0, 1]; a factor of ``q**-j`` overflows on
year-long hourly horizons.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .problem import CoreProblem, DimensionError, REL_TOL

MIN_SCALE = 1e-280


class BuilderError(ValueError):
    """The scenario does not match the requested builder."""


class NumericalRangeError(ValueError):
    """Decay factors over the horizon underflow double precision."""


@dataclass(frozen=True, eq=False)
class StorageScenario:
    """Physical storage setup; energies in kWh, prices in EUR/kWh.

    ``C`` is the largest energy one interval can charge (charge power times
    interval length), ``S`` the capacity, ``q`` the retention per interval.
    ``combine_losses`` must be set to use constant losses together with q < 1.
    """

    d: np.ndarray
    c: np.ndarray
    C: float
    S: float
    q: float = 1.0
    l: np.ndarray | None = None
    combine_losses: bool = False

    def __post_init__(self):
        d = np.array(self.d, dtype=float).reshape(-1)
        c = np.array(self.c, dtype=float).reshape(-1)
        if d.size == 0:
            raise ValueError("scenario must have at least one interval")
        if c.size != d.size:
            raise DimensionError(f"{d.size} demands but {c.size} prices")
        if np.any(d < 0):
            raise ValueError("demand must be nonnegative")
        if not self.C > 0:
            raise ValueError("charge cap C must be positive")
        if not self.S >= 0:
            raise ValueError("capacity S must be nonnegative")
        if not 0 < self.q <= 1:
            raise ValueError(f"retention q must lie in (0, 1], got {self.q}")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "C", float(self.C))
        object.__setattr__(self, "S", float(self.S))
        object.__setattr__(self, "q", float(self.q))
        if self.l is not None:
            l = np.array(self.l, dtype=float).reshape(-1)
            if l.size != d.size:
                raise DimensionError(f"{d.size} demands but {l.size} losses")
            if np.any(l < 0):
                raise ValueError("losses must be nonnegative")
            object.__setattr__(self, "l", l)
            if self.q != 1 and not self.combine_losses:
                raise ValueError("constant losses with q < 1 need combine_losses=True")

    @property
    def n(self) -> int:
        return self.d.size

    def effective_demand(self) -> np.ndarray:
        return self.d if self.l is None else self.d + self.l


@dataclass(frozen=True)
class TransformRecord:
    kind: str
    scale: np.ndarray
    meta: dict = field(default_factory=dict)


def _cumulative(s: StorageScenario, demand: np.ndarray, kind: str, meta=None):
    a = np.cumsum(demand)
    problem = CoreProblem(a=a, b=s.S + a, u=np.full(s.n, s.C), c=s.c)
    return problem, TransformRecord(kind=kind, scale=np.ones(s.n), meta=meta or {})


def build_lossless(s: StorageScenario):
    if s.q != 1 or s.l is not None:
        raise BuilderError("build_lossless needs q == 1 and no constant losses")
    return _cumulative(s, s.d, "lossless")


def build_constant_loss(s: StorageScenario):
    """Standby losses are added to demand interval by interval.

    Cumulative bounds use ``sum_{j<=i} (d_j + l_j)``.
    """
    if s.l is None:
        raise BuilderError("build_constant_loss needs constant losses l")
    if s.q != 1:
        raise BuilderError("build_constant_loss needs q == 1; use build_problem for combined losses")
    return _cumulative(s, s.d + s.l, "constant_loss", {"loss_reading": "per-interval l_j"})


def decay_scale(q: float, n: int) -> np.ndarray:
    """``q**(n-1), ..., q, 1``: the per-interval anchored substitution factors."""
    if not 0 < q <= 1:
        raise ValueError(f"retention q must lie in (0, 1], got {q}")
    scale = q ** np.arange(n - 1, -1, -1, dtype=float)
    if scale[0] < MIN_SCALE:
        raise NumericalRangeError(
            f"q**(n-1) = {scale[0]:.3g} underflows for q={q}, n={n}; "
            "split the horizon into chained shorter runs"
        )
    return scale


def build_decay_loss(s: StorageScenario):
    """Canonical instance for a store that retains ``q`` of its content per interval.

    Solutions of the returned problem are in scaled units; map them back with
    :func:`recover_charges`.
    """
    if s.l is not None and not s.combine_losses:
        raise BuilderError("build_decay_loss takes no constant losses unless combine_losses is set")
    demand = s.effective_demand()
    if s.q == 1:
        return _cumulative(s, demand, "decay")
    scale = decay_scale(s.q, s.n)
    decayed = np.empty(s.n)
    total = 0.0
    for i, di in enumerate(demand):
        total = s.q * total + di
        decayed[i] = total
    problem = CoreProblem(
        a=scale * decayed,
        b=scale * (s.S + decayed),
        u=scale * s.C,
        c=s.c / scale,
        row_scale=scale,
    )
    meta = {"q": s.q}
    if s.l is not None:
        meta["loss_reading"] = "per-interval l_j"
    return problem, TransformRecord(kind="decay", scale=scale, meta=meta)


def build_problem(s: StorageScenario):
    """Pick the builder matching the scenario's loss settings."""
    if s.q < 1:
        return build_decay_loss(s)
    if s.l is not None:
        return build_constant_loss(s)
    return build_lossless(s)


def recover_charges(y, rec: TransformRecord) -> np.ndarray:
    y = np.asarray(y, dtype=float)
    if y.size != rec.scale.size:
        raise DimensionError(f"{y.size} values for {rec.scale.size} scale factors")
    return y / rec.scale


@dataclass
class Trajectory:
    levels: np.ndarray
    violations: np.ndarray  # True where a level leaves [0, S] beyond tolerance

    @property
    def ok(self) -> bool:
        return not bool(self.violations.any())


def storage_trajectory(s: StorageScenario, x, tol: float | None = None) -> Trajectory:
    """Storage level after each interval, starting empty.

    ``level_i = q * level_{i-1} + x_i - d_i - l_i``.
    """
    x = np.asarray(x, dtype=float)
    if x.size != s.n:
        raise DimensionError(f"{x.size} charges for {s.n} intervals")
    if tol is None:
        tol = REL_TOL * max(1.0, s.S + float(np.sum(s.effective_demand())))
    net = x - s.effective_demand()
    levels = np.empty(s.n)
    level = 0.0
    for i in range(s.n):
        level = s.q * level + net[i]
        levels[i] = level
    violations = (levels < -tol) | (levels > s.S + tol)
    return Trajectory(levels=levels, violations=violations)
