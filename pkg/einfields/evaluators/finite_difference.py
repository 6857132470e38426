#!/usr/bin/env python3
# -*- coding:utf-8 -*-

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

import torch

from einfields.metrics import ChartId, MetricParams, as_coords, check_domain

__all__ = [
    "FORWARD_COEFFS",
    "FDStencil",
    "fd_partial",
    "fd_gradient",
    "pull_inward",
    "observed_order",
]

FORWARD_COEFFS = {
    4: (Fraction(-25, 12), Fraction(4), Fraction(-3), Fraction(4, 3), Fraction(-1, 4)),
    6: (
        Fraction(-49, 20), Fraction(6), Fraction(-15, 2), Fraction(20, 3),
        Fraction(-15, 4), Fraction(6, 5), Fraction(-1, 6),
    ),
}


@dataclass(frozen=True)
class FDStencil:
    """One-sided forward first-derivative stencil on `order` + 1 nodes."""

    order: int
    h: float
    axis: int
    scheme: str = "forward"

    def __post_init__(self):
        if self.order not in FORWARD_COEFFS:
            raise ValueError("stencil order must be one of {}".format(sorted(FORWARD_COEFFS)))
        if not self.h > 0:
            raise ValueError("stencil spacing must be positive, got {}".format(self.h))
        assert 0 <= self.axis < 4, "axis out of range"
        assert self.scheme == "forward", "only forward stencils are available"

    @property
    def weights(self):
        return tuple(float(c) for c in FORWARD_COEFFS[self.order])

    @property
    def offsets(self):
        return tuple(k * self.h for k in range(self.order + 1))

    def moments(self):
        """(sum of c_k / h, sum of c_k k h / h); 0 and 1 for a consistent stencil."""
        c = FORWARD_COEFFS[self.order]
        return float(sum(c)) / self.h, float(sum(ck * k for k, ck in enumerate(c)))

    def nodes(self, x):
        x = as_coords(x)
        shift = torch.zeros(self.order + 1, 4, dtype=torch.float64)
        shift[:, self.axis] = torch.tensor(self.offsets, dtype=torch.float64)
        return x[..., None, :] + shift

    def apply(self, values):
        """Combine field values stacked on dim 0 in node order."""
        out = 0.0
        for w, v in zip(self.weights, values):
            out = out + w * v
        return out / self.h


def pull_inward(x, axis, h, order, upper):
    """Move points back along `axis` so that the whole forward stencil stays below `upper`."""
    x = as_coords(x).clone()
    x[..., axis] = torch.clamp(x[..., axis], max=float(upper) - order * h)
    return x


def fd_partial(f, x, axis, h, order=6, chart=None, params=None):
    """
    Forward-difference estimate of d f / d x^axis at x.

    Args:
        f (callable): field on (..., 4) float64 tensors.
        chart, params: when given, every stencil node must lie inside the chart domain.

    Return:
        tensor: derivative estimate with the shape of f(x).
    """
    stencil = FDStencil(order, h, axis)
    nodes = stencil.nodes(x)
    if chart is not None:
        check_domain(ChartId.parse(chart), params or MetricParams(), nodes)
    values = f(nodes)
    return stencil.apply(torch.movedim(values, nodes.dim() - 2, 0))


def fd_gradient(f, x, h, order=6, chart=None, params=None):
    """All four partials, derivative index first like the jets."""
    return torch.stack([fd_partial(f, x, mu, h, order, chart, params) for mu in range(4)])


def observed_order(steps, errors):
    """Least-squares slope of log(error) against log(h)."""
    steps = np.log(np.asarray(steps, dtype=np.float64))
    errors = np.log(np.maximum(np.asarray(errors, dtype=np.float64), np.finfo(float).tiny))
    if len(steps) < 2:
        return math.nan
    slope, _ = np.polyfit(steps, errors, 1)
    return float(slope)
