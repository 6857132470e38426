#!/usr/bin/env python3
# -*- coding:utf-8 -*-

import math
from dataclasses import dataclass

import torch
from torch.func import jacfwd, vmap

from einfields.utils.errors import DomainError

from .charts import ChartId, MetricParams, SpacetimePoint, as_coords, check_domain
from .kerr import ks_radius_tensor

__all__ = [
    "KerrRegions",
    "kerr_regions",
    "ks_radius",
    "horizon_time",
    "horizon_angle",
    "transform_fn",
    "chart_transform",
    "transform_jacobian",
    "pullback_metric",
]

# |r - r_root| below which the ingoing-coordinate integrals are considered singular
_HORIZON_TOL = 1e-10
_RING_TOL = 1e-12


@dataclass(frozen=True)
class KerrRegions:
    M: float
    a: float
    r_plus: float
    r_minus: float

    def r_ergo_outer(self, theta):
        c = torch.cos(torch.as_tensor(theta, dtype=torch.float64))
        return self.M + torch.sqrt(self.M ** 2 - self.a ** 2 * c * c)

    def r_ergo_inner(self, theta):
        c = torch.cos(torch.as_tensor(theta, dtype=torch.float64))
        return self.M - torch.sqrt(self.M ** 2 - self.a ** 2 * c * c)


def kerr_regions(params: MetricParams):
    """Horizon and ergosurface radii of a Kerr black hole."""
    if params.a > params.M:
        raise DomainError("over-extremal spin a={} > M={}".format(params.a, params.M))
    return KerrRegions(params.M, params.a, params.r_plus, params.r_minus)


def ks_radius(x, y, z, a):
    """
    Kerr-Schild radius: the non-negative root of (x^2+y^2)/(r^2+a^2) + z^2/r^2 = 1.

    Accepts floats or tensors; floats in, float out.
    """
    scalar = not any(torch.is_tensor(v) for v in (x, y, z))
    x, y, z = (torch.as_tensor(v, dtype=torch.float64) for v in (x, y, z))
    rho2_a2 = x * x + y * y + z * z - a * a
    r2 = 0.5 * rho2_a2 + torch.sqrt(0.25 * rho2_a2 * rho2_a2 + a * a * z * z)
    if bool((r2 <= _RING_TOL).any()):
        raise DomainError("point on the ring singularity (x^2+y^2={}, z=0), a={}".format(
            a * a, a))
    r = ks_radius_tensor(x, y, z, a)
    return float(r) if scalar else r


def _effective_spin(chart, params):
    return params.a if chart.family == "kerr" else 0.0


def horizon_time(r, M, a):
    """T(r) = integral of (r^2+a^2)/Delta dr, the ingoing time shift v - t."""
    if M == 0:
        return r
    disc = M * M - a * a
    if disc <= 0:
        return r + 2.0 * M * torch.log(torch.abs((r - M) / M)) - 2.0 * M * M / (r - M)
    root = math.sqrt(disc)
    rp, rm = M + root, M - root
    d = rp - rm
    out = r + 2.0 * M / d * rp * torch.log(torch.abs((r - rp) / d))
    if rm > 0:
        out = out - 2.0 * M / d * rm * torch.log(torch.abs((r - rm) / d))
    return out


def horizon_angle(r, M, a):
    """Phi(r) = integral of a/Delta dr, the ingoing azimuth shift."""
    if M == 0 or a == 0:
        return torch.zeros_like(r)
    disc = M * M - a * a
    if disc <= 0:
        return -a / (r - M)
    root = math.sqrt(disc)
    rp, rm = M + root, M - root
    return a / (rp - rm) * torch.log(torch.abs((r - rp) / (r - rm)))


def _stack(*cols):
    return torch.stack(cols, dim=-1)


def _hub_to_ef(x, M, a):
    t, r, theta, phi = x.unbind(-1)
    return _stack(t + horizon_time(r, M, a), r, theta, phi + horizon_angle(r, M, a))


def _ef_to_hub(x, M, a):
    v, r, theta, phi = x.unbind(-1)
    return _stack(v - horizon_time(r, M, a), r, theta, phi - horizon_angle(r, M, a))


def _hub_to_ks(x, M, a, spatial_only):
    t, r, theta, phi = x.unbind(-1)
    s, c = torch.sin(theta), torch.cos(theta)
    if spatial_only:
        rho = torch.sqrt(r * r + a * a)
        return _stack(t, rho * s * torch.cos(phi), rho * s * torch.sin(phi), r * c)
    psi = phi + horizon_angle(r, M, a)
    cx = (r * torch.cos(psi) - a * torch.sin(psi)) * s
    cy = (r * torch.sin(psi) + a * torch.cos(psi)) * s
    return _stack(t + horizon_time(r, M, a) - r, cx, cy, r * c)


def _ks_to_hub(x, M, a, spatial_only):
    tk, cx, cy, cz = x.unbind(-1)
    r = ks_radius_tensor(cx, cy, cz, a)
    theta = torch.acos(torch.clamp(cz / r, -1.0, 1.0))
    if spatial_only:
        return _stack(tk, r, theta, torch.atan2(cy, cx))
    psi = torch.atan2(cy, cx) - torch.atan2(a * torch.ones_like(r), r)
    phi = psi - horizon_angle(r, M, a)
    return _stack(tk - horizon_time(r, M, a) + r, r, theta, phi)


_EF = (ChartId.SCHWARZSCHILD_EF, ChartId.KERR_EF)
_KS = (ChartId.SCHWARZSCHILD_KS, ChartId.KERR_KS)


def _to_hub(chart, M, a, spatial_only):
    if chart in _EF:
        return lambda x: _ef_to_hub(x, M, a)
    if chart in _KS:
        return lambda x: _ks_to_hub(x, M, a, spatial_only)
    return lambda x: x


def _from_hub(chart, M, a, spatial_only):
    if chart in _EF:
        return lambda x: _hub_to_ef(x, M, a)
    if chart in _KS:
        return lambda x: _hub_to_ks(x, M, a, spatial_only)
    return lambda x: x


def transform_fn(frm, to, params: MetricParams, spatial_only=False):
    """
    Differentiable map (..., 4) -> (..., 4) from chart `frm` to chart `to`.

    Charts of one geometry family are connected through the spherical (Schwarzschild)
    or Boyer-Lindquist (Kerr) chart. `spatial_only` replaces the Kerr-Schild map by the
    oblate-spheroidal one, keeping time and azimuth unchanged.
    """
    frm, to = ChartId.parse(frm), ChartId.parse(to)
    if frm is to:
        return lambda x: x
    if frm.family != to.family or frm.family not in ("schwarzschild", "kerr"):
        raise DomainError("unsupported chart transform {} -> {}".format(frm.value, to.value))
    M, a = params.M, _effective_spin(frm, params)
    to_hub = _to_hub(frm, M, a, spatial_only)
    from_hub = _from_hub(to, M, a, spatial_only)
    return lambda x: from_hub(to_hub(x))


def _needs_horizon_integral(frm, to, spatial_only):
    charts = {frm, to}
    return bool(charts & set(_EF)) or (bool(charts & set(_KS)) and not spatial_only)


def _hub_radius(frm, x, a):
    if frm in _KS:
        return ks_radius_tensor(x[..., 1], x[..., 2], x[..., 3], a)
    return x[..., 1]


def chart_transform(x, to, params: MetricParams, frm=None, spatial_only=False):
    """
    Express the event `x` in chart `to`.

    Args:
        x (SpacetimePoint or tensor (..., 4)): event(s); tensors need `frm`.
        to (ChartId): target chart.
        params (MetricParams): geometry parameters.
        frm (ChartId): source chart when `x` is a tensor.
        spatial_only (bool): oblate-spheroidal Cartesian map instead of Kerr-Schild.

    Return:
        SpacetimePoint if a point was given, otherwise a float64 tensor.
    """
    point = isinstance(x, SpacetimePoint)
    frm = ChartId.parse(x.chart if point else frm)
    to = ChartId.parse(to)
    coords = as_coords(x)
    check_domain(frm, params, coords)

    fn = transform_fn(frm, to, params, spatial_only=spatial_only)
    a = _effective_spin(frm, params)
    if frm in _KS:
        ks_radius(coords[..., 1], coords[..., 2], coords[..., 3], a)
    if frm is not to and _needs_horizon_integral(frm, to, spatial_only) and params.M > 0:
        r = _hub_radius(frm, coords, a)
        roots = [params.r_plus, params.r_minus] if a > 0 else [2.0 * params.M]
        for root in roots:
            if bool(((r - root).abs() < _HORIZON_TOL).any()):
                raise DomainError("horizon crossing at r={} in ingoing-coordinate integral".format(
                    root))

    out = fn(coords)
    if point:
        return SpacetimePoint(tuple(out.tolist()), to)
    return out


def transform_jacobian(frm, to, params, x, spatial_only=False):
    """d x_to^mu / d x_frm^nu at each point, (..., 4, 4)."""
    fn = transform_fn(frm, to, params, spatial_only=spatial_only)
    x = as_coords(x)
    flat = x.reshape(-1, 4)
    jac = vmap(jacfwd(fn))(flat)
    return jac.reshape(x.shape[:-1] + (4, 4))


def pullback_metric(metric_fn, frm, to, params, x):
    """
    Pull the metric `metric_fn` of chart `to` back to chart `frm`:
    g_frm = J^T g_to(f(x)) J.
    """
    fn = transform_fn(frm, to, params)
    x = as_coords(x)
    jac = transform_jacobian(frm, to, params, x)
    g = metric_fn(fn(x), params)
    return jac.transpose(-1, -2) @ g @ jac
