"""Uniformly sampled scalar time series with provenance metadata.

The on-disk format is a two-column CSV (``index,value``) plus a JSON
sidecar of the same stem carrying the sampling step and the full
parameter snapshot of whatever generated the series.  Values are written
with shortest round-trip formatting, so a load/save cycle is lossless
and reruns are byte-identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np


@dataclass
class TimeSeries:
    """Scalar series sampled every ``dt`` (dimensionless or physical units)."""

    values: np.ndarray
    dt: float
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim != 1:
            raise ValueError("time series values must be one-dimensional")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("time series contains non-finite values")
        if self.dt <= 0:
            raise ValueError("dt must be positive")

    def __len__(self):
        return self.values.size

    def prefix(self, n: int) -> "TimeSeries":
        """First ``n`` samples, with metadata noting the truncation."""
        if n > len(self):
            raise ValueError(f"prefix of {n} samples from a series of {len(self)}")
        meta = dict(self.meta)
        meta["prefix_of"] = len(self)
        return TimeSeries(self.values[:n].copy(), self.dt, meta)


def _sidecar(path: Path) -> Path:
    return path.with_suffix(".json")


def save_series(series: TimeSeries, path: str | Path) -> Path:
    """Write ``<path>.csv`` and a ``<path>.json`` sidecar; returns the CSV path."""
    path = Path(path)
    if path.suffix != ".csv":
        path = path.with_suffix(".csv")
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = ["index,value"]
    lines.extend(f"{i},{v!r}" for i, v in enumerate(series.values.tolist()))
    path.write_text("\n".join(lines) + "\n")
    sidecar = {"dt": series.dt, "n_values": len(series), "meta": series.meta}
    _sidecar(path).write_text(
        json.dumps(sidecar, sort_keys=True, indent=2, default=str) + "\n"
    )
    return path


def load_series(path: str | Path) -> TimeSeries:
    """Load a series written by :func:`save_series`."""
    path = Path(path)
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    sidecar = json.loads(_sidecar(path).read_text())
    values = data[:, 1] if data.size else np.empty(0)
    return TimeSeries(values, float(sidecar["dt"]), sidecar.get("meta", {}))
