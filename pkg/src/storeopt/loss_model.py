"""Standby-loss regression for hot-water stores.

Daily standby loss is modelled as a power law in capacity,
``loss = alpha * capacity**beta``, fitted by least squares on the logarithms.
Assuming the content decays exponentially, the hourly retention of a store of
capacity ``c`` is ``((c - alpha * c**beta) / c) ** (1/24)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

WATER_SPECIFIC_HEAT = 4200.0  # J/(kg K)
TEMPERATURE_SPREAD = 60.0  # K
WATER_DENSITY = 1000.0  # kg/m^3
# 4200 * 60 * 1000 J/m^3 = 70 kWh/m^3
KWH_PER_M3 = WATER_SPECIFIC_HEAT * TEMPERATURE_SPREAD * WATER_DENSITY / 3.6e6

HOURS_PER_DAY = 24

# manufacturer data: capacity [kWh], standby loss [kWh per 24 h]
REFERENCE_LOSS_DATA = (
    (3.5, 0.54),
    (5.6, 0.66),
    (7.0, 0.79),
    (8.4, 0.92),
    (14.0, 1.4),
    (21.0, 1.6),
    (28.0, 1.8),
)


class FitError(ValueError):
    pass


@dataclass(frozen=True)
class LossDataPoint:
    capacity: float
    daily_loss: float

    def __post_init__(self):
        if not (self.capacity > 0 and self.daily_loss > 0):
            raise FitError(f"capacity and loss must be positive: {self}")
        if self.daily_loss >= self.capacity:
            raise FitError(f"daily loss {self.daily_loss} is not below capacity {self.capacity}")


@dataclass(frozen=True)
class DecayModel:
    alpha: float
    beta: float

    def daily_loss(self, capacity):
        return self.alpha * np.power(capacity, self.beta)


def liters_to_kwh(liters, kwh_per_m3: float = KWH_PER_M3):
    return np.asarray(liters, dtype=float) / 1000.0 * kwh_per_m3


def reference_points() -> list[LossDataPoint]:
    return [LossDataPoint(c, l) for c, l in REFERENCE_LOSS_DATA]


def fit_decay_model(points) -> DecayModel:
    """Least-squares line through (ln capacity, ln daily loss)."""
    points = list(points)
    if len(points) < 2:
        raise FitError(f"need at least 2 data points, got {len(points)}")
    cap = np.array([p.capacity for p in points], dtype=float)
    loss = np.array([p.daily_loss for p in points], dtype=float)
    if np.unique(cap).size < 2:
        raise FitError("need at least two distinct capacities")
    slope, intercept = np.polyfit(np.log(cap), np.log(loss), 1)
    return DecayModel(alpha=float(np.exp(intercept)), beta=float(slope))


def hourly_retention(model: DecayModel, capacity: float) -> float:
    if not capacity > 0:
        raise ValueError(f"capacity must be positive, got {capacity}")
    loss = model.daily_loss(capacity)
    if loss >= capacity:
        raise ValueError(
            f"predicted daily loss {loss:.4g} kWh is not below capacity {capacity:.4g} kWh"
        )
    return float(((capacity - loss) / capacity) ** (1.0 / HOURS_PER_DAY))


def retention_table(model: DecayModel, capacities) -> list[tuple[float, float]]:
    return [(float(c), hourly_retention(model, c)) for c in capacities]
