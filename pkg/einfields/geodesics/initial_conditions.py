#!/usr/bin/env python3
# -*- coding:utf-8 -*-

import math

import torch

from einfields.metrics import AnalyticMetric, ChartId, MetricParams, check_domain
from einfields.utils.errors import DomainError

from .state import GeodesicState

__all__ = [
    "schwarzschild_ic",
    "circular_b0",
    "kerr_equatorial_ic",
    "complete_velocity",
]


def circular_b0(M=1.0):
    """Impact parameter giving a circular Schwarzschild orbit for `schwarzschild_ic`."""
    return math.sqrt(M)


def schwarzschild_ic(a0, b0, M=1.0, phi0=0.0):
    """
    Timelike initial state in Schwarzschild spherical coordinates.

    The particle starts on the equator at r0 = a0 * r_s with local speed
    v0 = b0 / sqrt(r0 - r_s), pointing at angle phi0 from the azimuthal direction
    towards the radial one.

    Args:
        a0 (float): initial radius in units of the Schwarzschild radius r_s = 2M.
        b0 (float): speed parameter; 0 releases the particle from rest.
        M (float): mass.
        phi0 (float): launch angle, 0 for purely tangential.
    """
    rs = 2.0 * M
    r0 = a0 * rs
    if r0 <= rs:
        raise DomainError("initial radius {} is not outside the horizon r_s={}".format(r0, rs))
    v0 = b0 / math.sqrt(r0 - rs)
    if abs(v0) >= 1.0:
        raise DomainError("initial speed v0={} is not subluminal".format(v0))
    lapse = 1.0 - rs / r0
    gamma = 1.0 / math.sqrt(1.0 - v0 * v0)
    vt = gamma / math.sqrt(lapse)
    vr = v0 * math.sin(phi0) * math.sqrt(lapse) * gamma
    vphi = v0 * math.cos(phi0) * gamma / r0
    return GeodesicState((0.0, r0, math.pi / 2, 0.0), (vt, vr, 0.0, vphi))


def _axis_metric(chart, params, x):
    field = AnalyticMetric(chart, params)
    check_domain(chart, params, x)
    return field(x)


def kerr_equatorial_ic(E, Lz, r0, params: MetricParams, chart=ChartId.KERR_BL, radial_sign=1.0):
    """
    Equatorial timelike state with Killing energy E and axial angular momentum L_z.

    v^t and v^phi solve E = -g_tt v^t - g_tphi v^phi and L_z = g_tphi v^t + g_phiphi v^phi;
    v^r follows from g(v, v) = -1 with sign `radial_sign`.
    """
    chart = ChartId.parse(chart)
    if chart not in (ChartId.KERR_BL, ChartId.SCHWARZSCHILD_SPHERICAL):
        raise DomainError("equatorial initial data needs a Boyer-Lindquist-like chart, "
                          "got {}".format(chart.value))
    x = torch.tensor([0.0, r0, math.pi / 2, 0.0], dtype=torch.float64)
    g = _axis_metric(chart, params, x)
    system = torch.stack([
        torch.stack([-g[0, 0], -g[0, 3]]),
        torch.stack([g[0, 3], g[3, 3]]),
    ])
    vt, vphi = torch.linalg.solve(system, torch.tensor([E, Lz], dtype=torch.float64)).tolist()
    rest = g[0, 0] * vt * vt + 2.0 * g[0, 3] * vt * vphi + g[3, 3] * vphi * vphi
    vr2 = float((-1.0 - rest) / g[1, 1])
    if vr2 < -1e-12:
        raise DomainError("E={}, L_z={} is radially forbidden at r0={}".format(E, Lz, r0))
    vr = math.copysign(math.sqrt(max(vr2, 0.0)), radial_sign)
    return GeodesicState(x, (vt, vr, 0.0, vphi))


def complete_velocity(x, spatial, metric_field, null=False):
    """
    Future-directed v^t making (v^t, spatial) timelike-normalized or null at x.

    Solves g_tt (v^t)^2 + 2 g_ti v^i v^t + g_ij v^i v^j = -1 (or 0 when `null`).
    """
    x = torch.as_tensor(x, dtype=torch.float64)
    check = getattr(metric_field, "check", None)
    if check is not None:
        check(x)
    g = metric_field(x)
    s = torch.as_tensor(spatial, dtype=torch.float64)
    qa = float(g[0, 0])
    qb = 2.0 * float(g[0, 1:] @ s)
    qc = float(s @ g[1:, 1:] @ s) + (0.0 if null else 1.0)
    disc = qb * qb - 4.0 * qa * qc
    if qa == 0.0 or disc < 0.0:
        raise DomainError("no real time component for velocity {} at {}".format(
            s.tolist(), x.tolist()))
    roots = ((-qb + math.sqrt(disc)) / (2.0 * qa), (-qb - math.sqrt(disc)) / (2.0 * qa))
    vt = max(roots)
    if vt <= 0.0:
        raise DomainError("no future-directed velocity for {} at {}".format(s.tolist(), x.tolist()))
    v = torch.cat([torch.tensor([vt], dtype=torch.float64), s])
    return GeodesicState(x, v)
