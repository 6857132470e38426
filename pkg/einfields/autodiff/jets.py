#!/usr/bin/env python3
# -*- coding:utf-8 -*-

from dataclasses import dataclass

import torch
from torch.func import jacfwd, vmap

from einfields.metrics.charts import as_coords
from einfields.tensor import SymMetric, inverse4, pack_symmetric, unpack_symmetric
from einfields.utils.errors import NonDifferentiablePointError

__all__ = [
    "Jet2",
    "MetricJet",
    "jet_fn",
    "metric_jet_fn",
    "derivatives",
    "jet_scalar",
    "metric_jet",
    "nested_jet",
    "check_jet",
]


@dataclass(frozen=True)
class Jet2:
    """Scalar value with its gradient (..., 4) and Hessian (..., 4, 4)."""

    value: torch.Tensor
    grad: torch.Tensor
    hess: torch.Tensor


@dataclass(frozen=True)
class MetricJet:
    """
    Metric with first and second coordinate derivatives.

    Layout (batch dims first): g[..., a, b], jac[..., mu, a, b] = d_mu g_ab,
    hess[..., mu, nu, a, b] = d_mu d_nu g_ab.
    """

    g: torch.Tensor
    jac: torch.Tensor
    hess: torch.Tensor

    @property
    def batch_shape(self):
        return self.g.shape[:-2]

    def packed(self):
        return SymMetric(pack_symmetric(self.g))

    def inverse(self):
        return inverse4(self.g)

    def __add__(self, other):
        return MetricJet(self.g + other.g, self.jac + other.jac, self.hess + other.hess)


def _lift(fn):
    def inner(x):
        top, lower = fn(x)
        return top, lower + (top,)

    return jacfwd(inner, has_aux=True)


def jet_fn(f, order=2):
    """
    Single-point derivative stack of `f`: x (4,) -> (f, df, ..., d^order f).

    The k-th entry carries its k derivative indices first, then the output shape of f.
    Pure, so it composes with further `torch.func` transforms.
    """
    fn = lambda x: (f(x), ())  # noqa: E731
    for _ in range(order):
        fn = _lift(fn)

    def stack(x):
        top, lower = fn(x)
        out = lower + (top,)
        return tuple(
            torch.movedim(d, tuple(range(-k, 0)), tuple(range(k))) if k else d
            for k, d in enumerate(out)
        )

    return stack


def metric_jet_fn(field, order=2):
    """
    Single-point jet of a metric-valued field (4,) -> (4, 4).

    Only the 10 packed components are differentiated; results are unpacked to full
    (4, 4) blocks.
    """
    stack = jet_fn(lambda x: pack_symmetric(field(x)), order)

    def fn(x):
        return tuple(unpack_symmetric(d) for d in stack(x))

    return fn


def check_jet(*blocks, x=None, what="jet"):
    for block in blocks:
        finite = torch.isfinite(block)
        if bool(finite.all()):
            continue
        msg = "non-finite {} entries".format(what)
        if x is not None:
            n = x.reshape(-1, 4).shape[0]
            bad = (~finite).reshape(n, -1).any(-1).nonzero()
            if len(bad):
                msg += " at x={}".format(x.reshape(-1, 4)[bad[0, 0]].tolist())
        raise NonDifferentiablePointError(msg)


def _batched(fn, x):
    x = as_coords(x)
    batch = x.shape[:-1]
    flat = x.reshape(-1, 4)
    outs = vmap(fn)(flat)
    return x, tuple(o.reshape(batch + o.shape[1:]) for o in outs)


def derivatives(f, x, order=2):
    """
    Derivative stack of `f` at one or many points.

    Args:
        f (callable): single-point field (4,) -> tensor.
        x (tensor (..., 4) or SpacetimePoint): evaluation points.
        order (int): highest derivative order.

    Return:
        tuple: (value, d1, ..., d_order), batch dims first.
    """
    x, outs = _batched(jet_fn(f, order), x)
    check_jet(*outs, x=x)
    return outs


def jet_scalar(f, x):
    """Value, gradient and Hessian of a scalar field."""
    value, grad, hess = derivatives(f, x, order=2)
    assert value.shape == as_coords(x).shape[:-1], "jet_scalar expects a scalar field"
    return Jet2(value, grad, hess)


def metric_jet(field, x):
    """`MetricJet` of a metric field (..., 4) -> (..., 4, 4)."""
    x, (g, jac, hess) = _batched(metric_jet_fn(field, 2), x)
    check_jet(g, jac, hess, x=x, what="metric jet")
    return MetricJet(g, jac, hess)


def nested_jet(field, x):
    """
    Third derivatives d_rho d_mu d_nu g_ab, (..., 4, 4, 4, 4, 4), by differentiating
    the Hessian channel of the metric jet once more.
    """
    hess_fn = lambda y: metric_jet_fn(field, 2)(y)[2]  # noqa: E731
    x, (_, third) = _batched(jet_fn(hess_fn, 1), x)
    check_jet(third, x=x, what="third-order jet")
    return third
