#!/usr/bin/env python3
# -*- coding:utf-8 -*-

from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import CubicSpline

import torch
from torch.func import jacfwd

from einfields.tensor import Tensor4
from einfields.utils.errors import IntegrationError

from .christoffel import check_field_domain, christoffel_field
from .derivatives import _connection_terms

__all__ = ["SampledCurve", "TransportResult", "transport_history", "parallel_transport"]


class SampledCurve:
    """Curve through sampled points, interpolated by a cubic spline per coordinate."""

    def __init__(self, lam, points):
        lam = np.asarray(lam, dtype=np.float64)
        points = np.asarray(points, dtype=np.float64)
        assert points.ndim == 2 and points.shape[1] == 4, "points must be (K, 4)"
        assert len(lam) == len(points) >= 4, "need at least 4 samples"
        self.spline = CubicSpline(lam, points, axis=0)
        self.span = (float(lam[0]), float(lam[-1]))

    def position(self, lam):
        return torch.as_tensor(self.spline(lam), dtype=torch.float64)

    def tangent(self, lam):
        return torch.as_tensor(self.spline(lam, 1), dtype=torch.float64)


class _CallableCurve:
    def __init__(self, fn, span):
        self.fn = fn
        self.span = span
        self._tangent = jacfwd(fn)

    def position(self, lam):
        return self.fn(torch.as_tensor(lam, dtype=torch.float64))

    def tangent(self, lam):
        return self._tangent(torch.as_tensor(lam, dtype=torch.float64))


@dataclass
class TransportResult:
    tensor: Tensor4
    lam: np.ndarray
    samples: np.ndarray
    nfev: int


def _as_curve(curve, span):
    if isinstance(curve, SampledCurve):
        return curve
    assert span is not None, "a callable curve needs its parameter span"
    return _CallableCurve(curve, tuple(float(s) for s in span))


def transport_history(tensor: Tensor4, curve, metric_field, span=None, rtol=1e-11, atol=1e-12,
                      method="DOP853"):
    """
    Integrate D T / d lambda = 0 along `curve`.

    Args:
        tensor (Tensor4): initial tensor at the curve start.
        curve (SampledCurve or callable): path, a callable maps lambda to (4,) coords.
        metric_field (callable): metric field defining the connection.
        span (tuple): parameter range for callable curves.

    Return:
        TransportResult with the final tensor and the accepted samples.
    """
    curve = _as_curve(curve, span)
    gamma_fn = christoffel_field(metric_field)
    ru, rd = tensor.rank_up, tensor.rank_down
    shape = tensor.data.shape

    def rhs(lam, y):
        x = curve.position(lam)
        check_field_domain(metric_field, x)
        u = curve.tangent(lam)
        t = torch.as_tensor(y, dtype=torch.float64).reshape(shape)
        terms = _connection_terms(t, gamma_fn(x), ru, rd)
        return -(terms @ u).reshape(-1).numpy()

    sol = solve_ivp(rhs, curve.span, tensor.flat().numpy(), method=method, rtol=rtol, atol=atol)
    if not sol.success:
        raise IntegrationError("parallel transport failed: {}".format(sol.message))
    final = Tensor4(ru, rd, torch.as_tensor(sol.y[:, -1]).reshape(shape))
    return TransportResult(final, sol.t, sol.y.T, sol.nfev)


def parallel_transport(tensor: Tensor4, curve, metric_field, span=None, **kwargs):
    """Parallel-transported tensor at the end of `curve`."""
    return transport_history(tensor, curve, metric_field, span=span, **kwargs).tensor
