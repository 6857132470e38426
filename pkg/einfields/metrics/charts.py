#!/usr/bin/env python3
# -*- coding:utf-8 -*-

import math
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Tuple

import torch

from einfields.utils.errors import DomainError

__all__ = [
    "ChartId",
    "MetricParams",
    "SpacetimePoint",
    "STRAIN_BOUND",
    "as_coords",
    "domain_mask",
    "check_domain",
]

STRAIN_BOUND = 1e-2
# radius below which Cartesian charts are considered on the central singularity
_ORIGIN_TOL = 1e-8


class ChartId(str, Enum):
    SCHWARZSCHILD_SPHERICAL = "SchwarzschildSpherical"
    SCHWARZSCHILD_KS = "SchwarzschildKS"
    SCHWARZSCHILD_EF = "SchwarzschildEF"
    KERR_BL = "KerrBL"
    KERR_KS = "KerrKS"
    KERR_EF = "KerrEF"
    GW_CARTESIAN_TT = "GWCartesianTT"
    MINKOWSKI_CARTESIAN = "MinkowskiCartesian"

    @classmethod
    def parse(cls, name):
        if isinstance(name, cls):
            return name
        for chart in cls:
            if name in (chart.value, chart.name, chart.name.lower()):
                return chart
        raise ValueError("unknown chart {}, choose from {}".format(name, [c.value for c in cls]))

    @property
    def family(self):
        if self in (ChartId.SCHWARZSCHILD_SPHERICAL, ChartId.SCHWARZSCHILD_KS,
                    ChartId.SCHWARZSCHILD_EF):
            return "schwarzschild"
        if self in (ChartId.KERR_BL, ChartId.KERR_KS, ChartId.KERR_EF):
            return "kerr"
        return self.value

    @property
    def is_spherical(self):
        """Charts with (x0, r, theta, phi) coordinates."""
        return self in (ChartId.SCHWARZSCHILD_SPHERICAL, ChartId.SCHWARZSCHILD_EF,
                        ChartId.KERR_BL, ChartId.KERR_EF)

    @property
    def coordinate_names(self):
        if self in (ChartId.SCHWARZSCHILD_EF, ChartId.KERR_EF):
            return ("v", "r", "theta", "phi")
        if self.is_spherical:
            return ("t", "r", "theta", "phi")
        return ("t", "x", "y", "z")


@dataclass(frozen=True)
class MetricParams:
    """Physical parameters shared by every chart, in geometric units c = G = 1."""

    M: float = 1.0
    a: float = 0.0
    h_plus: float = 0.0
    h_cross: float = 0.0
    omega: float = 1.0
    # GW strain on yy: +h_plus as printed in the TT matrix, or -h_plus (traceless)
    standard_tt: bool = False
    # exclusion zone outside the outer horizon of spherical-like charts
    horizon_margin: float = 0.5

    def __post_init__(self):
        if self.M < 0:
            raise DomainError("mass must be non-negative, got {}".format(self.M))
        if self.a < 0 or self.a > self.M:
            raise DomainError("spin must satisfy 0 <= a <= M, got a={}, M={}".format(
                self.a, self.M))
        for name in ("h_plus", "h_cross"):
            if abs(getattr(self, name)) > STRAIN_BOUND:
                raise DomainError("|{}| must be <= {}, got {}".format(
                    name, STRAIN_BOUND, getattr(self, name)))
        if self.omega < 0:
            raise DomainError("omega must be non-negative, got {}".format(self.omega))
        if self.horizon_margin < 0:
            raise DomainError("horizon margin must be non-negative")

    @property
    def r_plus(self):
        return self.M + math.sqrt(self.M ** 2 - self.a ** 2)

    @property
    def r_minus(self):
        return self.M - math.sqrt(self.M ** 2 - self.a ** 2)

    def as_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class SpacetimePoint:
    x: Tuple[float, float, float, float]
    chart: ChartId

    def __post_init__(self):
        coords = tuple(float(c) for c in torch.as_tensor(self.x, dtype=torch.float64).tolist())
        assert len(coords) == 4, "a spacetime point needs 4 coordinates, got {}".format(coords)
        assert all(math.isfinite(c) for c in coords), "coordinates must be finite"
        object.__setattr__(self, "x", coords)
        object.__setattr__(self, "chart", ChartId.parse(self.chart))

    def tensor(self):
        return torch.tensor(self.x, dtype=torch.float64)

    def in_domain(self, params: MetricParams):
        return bool(domain_mask(self.chart, params, self.tensor()))


def as_coords(x):
    """SpacetimePoint or array-like -> float64 tensor (..., 4)."""
    if isinstance(x, SpacetimePoint):
        return x.tensor()
    x = torch.as_tensor(x, dtype=torch.float64)
    assert x.shape[-1] == 4, "coordinates need a trailing dimension of 4"
    return x


def _ks_radius_squared(x, y, z, a):
    rho2_a2 = x * x + y * y + z * z - a * a
    return 0.5 * rho2_a2 + torch.sqrt(0.25 * rho2_a2 * rho2_a2 + a * a * z * z)


def domain_mask(chart: ChartId, params: MetricParams, x):
    """Boolean mask (...) of points inside the validity domain of `chart`."""
    chart = ChartId.parse(chart)
    x = as_coords(x)
    finite = torch.isfinite(x).all(-1)
    if chart in (ChartId.GW_CARTESIAN_TT, ChartId.MINKOWSKI_CARTESIAN):
        return finite

    if chart.is_spherical:
        r, theta = x[..., 1], x[..., 2]
        angular = (theta > 0) & (theta < math.pi)
        if chart is ChartId.SCHWARZSCHILD_SPHERICAL:
            r_min = 2 * params.M + params.horizon_margin if params.M > 0 else 0.0
            radial = r >= r_min if params.M > 0 else r > 0
        elif chart is ChartId.KERR_BL:
            r_min = params.r_plus + params.horizon_margin if params.M > 0 else 0.0
            radial = r > r_min
        else:
            radial = r > 0
        return finite & angular & radial

    # Kerr-Schild Cartesian charts, excluding the central singularity or ring
    a = params.a if chart is ChartId.KERR_KS else 0.0
    r2 = _ks_radius_squared(x[..., 1], x[..., 2], x[..., 3], a)
    return finite & (r2 > _ORIGIN_TOL ** 2)


def check_domain(chart: ChartId, params: MetricParams, x):
    mask = domain_mask(chart, params, x)
    if not bool(mask.all()):
        x = as_coords(x).reshape(-1, 4)
        bad = x[(~mask).reshape(-1)][0].tolist()
        raise DomainError("point {} is outside the domain of chart {}".format(
            bad, ChartId.parse(chart).value))
