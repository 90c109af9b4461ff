"""Fit the standby-loss power law and turn it into hourly retention factors.

Run with ``python demos/03_loss_fit.py``.
"""
# %%
from storeopt.loss_model import fit_decay_model, hourly_retention, reference_points

# Daily standby losses of seven hot-water tanks, capacities in kWh.
points = reference_points()
for p in points:
    print(f"capacity {p.capacity:6.2f} kWh  loss {p.daily_loss:.2f} kWh/day")

# %%
# Least squares on log(loss) = log(alpha) + beta log(capacity).
model = fit_decay_model(points)
print(f"alpha = {model.alpha:.7f}, beta = {model.beta:.5f}")

# %%
# The daily loss spread evenly as a geometric decay gives the hourly factor.
for capacity in (3.5, 14.71, 28.0, 100.0, 411.99):
    print(f"{capacity:7.2f} kWh -> q = {hourly_retention(model, capacity):.5f}")
