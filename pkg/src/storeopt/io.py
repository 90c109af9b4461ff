"""CSV/JSON formats and synthetic input data.

All CSV files are comma-separated, UTF-8, dot decimal, with a header row.
Time series files hold one value column and optionally a ``timestamp``
column with hourly ISO-8601 stamps. Units never come from headers: prices
are EUR/kWh, demands and losses kWh per interval, one interval is one hour.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from datetime import datetime, timedelta
from pathlib import Path

import numpy as np

from .loss_model import LossDataPoint, liters_to_kwh

SCHEMA_VERSION = 1
HOUR = timedelta(hours=1)
SYNTHETIC_START = datetime(2012, 7, 1)


class ParseError(ValueError):
    def __init__(self, message: str, path=None, line: int | None = None):
        where = ""
        if path is not None:
            where = f"{path}"
            if line is not None:
                where += f":{line}"
            where += ": "
        super().__init__(where + message)
        self.path = path
        self.line = line


@dataclass
class TimeSeriesFile:
    values: np.ndarray
    timestamps: list[str] | None = None
    name: str = "value"

    def __len__(self):
        return self.values.size


def _float(text: str, path, line: int) -> float:
    try:
        v = float(text)
    except ValueError:
        raise ParseError(f"not a number: {text!r}", path, line) from None
    if not math.isfinite(v):
        raise ParseError(f"non-finite value: {text!r}", path, line)
    return v


def _rows(path):
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise ParseError("empty file, header row required", path, 1)
        header = [h.strip() for h in header]
        rows = []
        for row in reader:
            if not row or all(not f.strip() for f in row):
                continue
            if len(row) != len(header):
                raise ParseError(
                    f"expected {len(header)} fields, found {len(row)}", path, reader.line_num
                )
            rows.append((reader.line_num, [f.strip() for f in row]))
    if not rows:
        raise ParseError("no data rows", path, 2)
    return header, rows


def read_series(path) -> TimeSeriesFile:
    header, rows = _rows(path)
    lowered = [h.lower() for h in header]
    ts_col = lowered.index("timestamp") if "timestamp" in lowered else None
    value_cols = [k for k in range(len(header)) if k != ts_col]
    if len(value_cols) != 1:
        raise ParseError(
            f"expected one value column (plus optional timestamp), got {header}", path, 1
        )
    vc = value_cols[0]
    values = np.array([_float(r[vc], path, ln) for ln, r in rows])
    stamps = None
    if ts_col is not None:
        stamps = [r[ts_col] for _, r in rows]
        prev = None
        for (ln, _), s in zip(rows, stamps):
            try:
                t = datetime.fromisoformat(s)
            except ValueError:
                raise ParseError(f"bad ISO-8601 timestamp {s!r}", path, ln) from None
            if prev is not None and t - prev != HOUR:
                raise ParseError(f"timestamps not hourly and gap-free at {s}", path, ln)
            prev = t
    return TimeSeriesFile(values=values, timestamps=stamps, name=header[vc])


def write_series(path, values, name: str, timestamps=None) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        if timestamps is None:
            w.writerow([name])
            w.writerows([repr(float(v))] for v in values)
        else:
            w.writerow(["timestamp", name])
            w.writerows([t, repr(float(v))] for t, v in zip(timestamps, values))


def read_loss_data(path, liters: bool = False) -> list[LossDataPoint]:
    """Two columns by position: capacity, daily loss [kWh/24h].

    Capacity is kWh, or liters of water when ``liters`` is set.
    """
    header, rows = _rows(path)
    if len(header) != 2:
        raise ParseError(f"expected 2 columns (capacity, daily loss), got {len(header)}", path, 1)
    points = []
    for ln, (cap, loss) in rows:
        capacity = _float(cap, path, ln)
        if liters:
            capacity = float(liters_to_kwh(capacity))
        try:
            points.append(LossDataPoint(capacity, _float(loss, path, ln)))
        except ValueError as exc:
            raise ParseError(str(exc), path, ln) from None
    return points


def write_json(path, payload: dict) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True, allow_nan=False)
    Path(path).write_text(text + "\n", encoding="utf-8")


def finite_or_none(v: float):
    return float(v) if math.isfinite(v) else None


def write_solution_csv(path, x, levels, timestamps=None) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        head = ["interval"] + (["timestamp"] if timestamps else []) + ["charge_kwh", "level_kwh"]
        w.writerow(head)
        for i, (xi, li) in enumerate(zip(x, levels)):
            row = [i] + ([timestamps[i]] if timestamps else []) + [repr(float(xi)), repr(float(li))]
            w.writerow(row)


def write_surface_csv(path, c_values, s_values, surface) -> None:
    """Rows are charge powers, columns capacities; infeasible cells are ``inf``."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["C_kw"] + [repr(float(s)) for s in s_values])
        for C, row in zip(c_values, surface):
            w.writerow([repr(float(C))] + [repr(float(v)) for v in row])


def synthetic_series(
    n: int,
    seed: int,
    demand_shape: str = "seasonal",
    price_shape: str = "diurnal-with-negatives",
) -> tuple[np.ndarray, np.ndarray, list[str]]:
    """Reproducible hourly demand and price series starting 1 July.

    Seasonal demand is a yearly sinusoid peaking in mid-January, plus noise.
    The diurnal price has a daily cycle, noise and occasional negative hours.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = np.random.default_rng(seed)
    t = np.arange(n, dtype=float)
    if demand_shape == "flat":
        demand = np.full(n, 1.2)
    elif demand_shape == "seasonal":
        winter = np.cos(2 * np.pi * (t - 4740.0) / 8760.0)
        demand = 1.2 * (1.0 + 0.7 * winter) * rng.uniform(0.6, 1.4, n)
        demand = np.clip(demand, 0.0, None)
    else:
        raise ValueError(f"unknown demand shape {demand_shape!r}")
    if price_shape == "flat":
        price = np.full(n, 0.04)
    elif price_shape == "diurnal-with-negatives":
        daily = np.sin(2 * np.pi * (t % 24 - 6.0) / 24.0)
        price = 0.04 + 0.015 * daily + rng.normal(0.0, 0.01, n)
        dips = rng.random(n) < 0.01
        price[dips] = -rng.uniform(0.0, 0.05, int(dips.sum()))
    else:
        raise ValueError(f"unknown price shape {price_shape!r}")
    stamps = [(SYNTHETIC_START + k * HOUR).isoformat() for k in range(n)]
    return demand, price, stamps
