#!/usr/bin/env python3
# -*- coding:utf-8 -*-

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import torch

from einfields.autodiff import metric_jet
from einfields.diffgeo import check_field_domain, curvature_from_jet
from einfields.metrics import ChartId
from einfields.tensor import PACKED_INDEX, pack_symmetric
from einfields.utils.csv_io import write_csv

__all__ = ["PlaneSpec", "TomographyResult", "tomography"]


@dataclass(frozen=True)
class PlaneSpec:
    """
    2D slice through a chart: coordinates `axes` sweep `ranges`, the other two stay at
    their values in `base`.
    """

    chart: ChartId
    base: Tuple[float, float, float, float]
    axes: Tuple[int, int]
    ranges: Tuple[Tuple[float, float], Tuple[float, float]]

    def __post_init__(self):
        object.__setattr__(self, "chart", ChartId.parse(self.chart))
        assert len(self.base) == 4, "base point needs 4 coordinates"
        assert self.axes[0] != self.axes[1], "slice axes must differ"

    def points(self, resolution):
        assert resolution >= 2, "resolution must be at least 2"
        u = torch.linspace(*self.ranges[0], resolution, dtype=torch.float64)
        v = torch.linspace(*self.ranges[1], resolution, dtype=torch.float64)
        uu, vv = torch.meshgrid(u, v, indexing="ij")
        pts = torch.tensor(self.base, dtype=torch.float64).expand(resolution, resolution, 4).clone()
        pts[..., self.axes[0]] = uu
        pts[..., self.axes[1]] = vv
        return u, v, pts


@dataclass
class TomographyResult:
    plane: PlaneSpec
    u: torch.Tensor
    v: torch.Tensor
    errors: torch.Tensor  # (R, R, C)
    components: Sequence[str]
    quantity: str

    def write_csv(self, path, meta=None):
        names = self.plane.chart.coordinate_names
        cols = [names[self.plane.axes[0]], names[self.plane.axes[1]]] + list(self.components)
        uu, vv = torch.meshgrid(self.u, self.v, indexing="ij")
        rows = torch.cat([uu[..., None], vv[..., None], self.errors], dim=-1).reshape(-1, len(cols))
        info = {"quantity": self.quantity, "chart": self.plane.chart.value}
        info.update(meta or {})
        return write_csv(path, cols, rows, info)


def _sample(field, pts, quantity):
    if quantity == "metric":
        return pack_symmetric(field(pts))
    bundle = curvature_from_jet(metric_jet(field, pts))
    return bundle.kretschmann[..., None]


def tomography(field_a, field_b, plane: PlaneSpec, resolution, quantity="metric",
               components: Optional[Sequence[int]] = None):
    """
    Absolute error |a - b| of two metric fields over a 2D slice.

    Args:
        quantity (str): "metric" (10 packed components) or "kretschmann".
        components (sequence of int): packed component indices to keep (metric only).

    Return:
        TomographyResult with errors of shape (resolution, resolution, C).
    """
    assert quantity in ("metric", "kretschmann"), "unknown quantity {}".format(quantity)
    u, v, pts = plane.points(resolution)
    check_field_domain(field_a, pts)
    check_field_domain(field_b, pts)
    err = (_sample(field_a, pts, quantity) - _sample(field_b, pts, quantity)).abs()
    if quantity == "metric":
        components = list(range(10)) if components is None else list(components)
        err = err[..., components]
        names = ["g{}{}".format(*PACKED_INDEX[c]) for c in components]
    else:
        names = ["kretschmann"]
    return TomographyResult(plane, u, v, err.detach(), names, quantity)
