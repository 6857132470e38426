#!/usr/bin/env python3
# -*- coding:utf-8 -*-

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

import torch

from einfields.metrics import ChartId, MetricParams
from einfields.utils import write_csv

__all__ = ["GeodesicState", "Trajectory", "TRAJECTORY_COLUMNS"]

TRAJECTORY_COLUMNS = (
    "tau", "x0", "x1", "x2", "x3", "v0", "v1", "v2", "v3", "E", "L_z", "norm",
)


@dataclass
class GeodesicState:
    """Position x^mu, 4-velocity dx^mu/dtau and affine parameter tau."""

    x: torch.Tensor
    v: torch.Tensor
    tau: float = 0.0

    def __post_init__(self):
        self.x = torch.as_tensor(self.x, dtype=torch.float64).reshape(4)
        self.v = torch.as_tensor(self.v, dtype=torch.float64).reshape(4)

    def as_array(self):
        return np.concatenate([self.x.numpy(), self.v.numpy()])

    @classmethod
    def from_array(cls, y, tau=0.0):
        y = torch.as_tensor(np.asarray(y), dtype=torch.float64)
        return cls(y[:4], y[4:], float(tau))

    def norm(self, metric_field):
        """g_ab v^a v^b at the current position."""
        g = metric_field(self.x)
        return float(self.v @ g @ self.v)


@dataclass
class Trajectory:
    """
    Accepted steps of an integration.

    `states` is (K, 8) with position then velocity; `conserved` is (K, 3) with the
    Killing energy, the axial angular momentum and g(v, v) (NaN where a chart has no
    such symmetry).
    """

    tau: np.ndarray
    states: np.ndarray
    chart: ChartId
    params: MetricParams
    stats: dict = field(default_factory=dict)
    conserved: Optional[np.ndarray] = None
    dense: object = None

    def __post_init__(self):
        steps = np.diff(self.tau)
        assert len(self.tau) >= 1, "empty trajectory"
        assert np.all(steps > 0) or np.all(steps < 0), "affine parameter must be monotone"

    def __len__(self):
        return len(self.tau)

    @property
    def positions(self):
        return self.states[:, :4]

    @property
    def velocities(self):
        return self.states[:, 4:]

    def state_at(self, tau):
        """Interpolated (8,) state; uses the integrator's dense output when available."""
        if self.dense is not None:
            return self.dense(tau)
        from scipy.interpolate import CubicSpline

        if getattr(self, "_spline", None) is None:
            self._spline = CubicSpline(self.tau, self.states, axis=0)
        return self._spline(tau)

    def final_state(self):
        return GeodesicState.from_array(self.states[-1], self.tau[-1])

    def drift(self):
        """Max relative change of E, L_z and g(v, v) from their initial values."""
        if self.conserved is None:
            return {}
        out = {}
        for j, name in enumerate(("E", "L_z", "norm")):
            q = self.conserved[:, j]
            if np.isnan(q[0]):
                out[name] = float("nan")
                continue
            scale = abs(q[0]) if abs(q[0]) > 1e-12 else 1.0
            out[name] = float(np.max(np.abs(q - q[0])) / scale)
        return out

    def to_csv(self, path, meta=None):
        conserved = self.conserved
        if conserved is None:
            conserved = np.full((len(self), 3), np.nan)
        rows = np.concatenate([self.tau[:, None], self.states, conserved], axis=1)
        info = {"chart": self.chart.value, "params": self.params.as_dict()}
        info.update({k: v for k, v in self.stats.items() if not isinstance(v, np.ndarray)})
        info.update(meta or {})
        return write_csv(path, TRAJECTORY_COLUMNS, rows, info)
