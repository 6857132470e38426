#!/usr/bin/env python3
# -*- coding:utf-8 -*-

from dataclasses import asdict, dataclass
from typing import Tuple

import torch

from einfields.utils.errors import ConfigError

__all__ = ["AxisSpec", "GridSpec"]


@dataclass(frozen=True)
class AxisSpec:
    """
    `count` uniformly spaced nodes on [lo, hi]. An open end drops the end node and
    keeps the spacing uniform, e.g. theta in (0, pi) or phi in [0, 2 pi).
    """

    lo: float
    hi: float
    count: int
    closed_lo: bool = True
    closed_hi: bool = True

    def __post_init__(self):
        if self.count < 1:
            raise ConfigError("axis needs at least one node, got {}".format(self.count))
        if self.count > 1 and not self.hi > self.lo:
            raise ConfigError("axis bounds must satisfy lo < hi, got [{}, {}]".format(
                self.lo, self.hi))

    @property
    def spacing(self):
        intervals = self.count - 1 + (not self.closed_lo) + (not self.closed_hi)
        return (self.hi - self.lo) / intervals if intervals > 0 else 0.0

    def nodes(self):
        if self.count == 1:
            value = self.lo if self.closed_lo else 0.5 * (self.lo + self.hi)
            return torch.tensor([value], dtype=torch.float64)
        h = self.spacing
        start = self.lo if self.closed_lo else self.lo + h
        return start + h * torch.arange(self.count, dtype=torch.float64)

    def midpoints(self):
        """Staggered nodes between consecutive grid nodes."""
        nodes = self.nodes()
        if self.count == 1:
            return nodes
        return 0.5 * (nodes[1:] + nodes[:-1])


@dataclass(frozen=True)
class GridSpec:
    axes: Tuple[AxisSpec, AxisSpec, AxisSpec, AxisSpec]

    def __post_init__(self):
        assert len(self.axes) == 4, "a spacetime grid needs 4 axes"
        object.__setattr__(self, "axes", tuple(
            a if isinstance(a, AxisSpec) else AxisSpec(*a) for a in self.axes))

    @property
    def shape(self):
        return tuple(a.count for a in self.axes)

    @property
    def size(self):
        n = 1
        for a in self.axes:
            n *= a.count
        return n

    @property
    def lower(self):
        return torch.tensor([a.lo for a in self.axes], dtype=torch.float64)

    @property
    def upper(self):
        return torch.tensor([a.hi for a in self.axes], dtype=torch.float64)

    @staticmethod
    def _mesh(nodes):
        mesh = torch.meshgrid(*nodes, indexing="ij")
        return torch.stack(mesh, dim=-1).reshape(-1, 4)

    def points(self):
        """(N, 4) nodes in row-major order over (x0, x1, x2, x3)."""
        return self._mesh([a.nodes() for a in self.axes])

    def staggered(self):
        """Grid of mid-cell nodes, disjoint from `points`, for held-out evaluation."""
        axes = []
        for a in self.axes:
            mids = a.midpoints()
            if a.count == 1:
                axes.append(a)
            else:
                axes.append(AxisSpec(float(mids[0]), float(mids[-1]), len(mids)))
        return GridSpec(tuple(axes))

    def as_dict(self):
        return {"axes": [asdict(a) for a in self.axes]}

    @classmethod
    def from_dict(cls, d):
        return cls(tuple(AxisSpec(**a) for a in d["axes"]))
