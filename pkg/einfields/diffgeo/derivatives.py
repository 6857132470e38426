#!/usr/bin/env python3
# -*- coding:utf-8 -*-

import string

import torch

from einfields.autodiff import derivatives, metric_jet
from einfields.metrics.charts import SpacetimePoint, as_coords
from einfields.tensor import Tensor4, check_invertible

from .christoffel import check_field_domain, christoffel_symbols

__all__ = [
    "covariant_derivative_from",
    "covariant_derivative",
    "lie_derivative_from",
    "lie_derivative",
]

_SLOTS = string.ascii_lowercase[:8]


def _replace(letters, i, new):
    return letters[:i] + new + letters[i + 1:]


def _connection_terms(t, gamma, rank_up, rank_down):
    """
    Sum over slots of +Gamma^a_{s l} T^{..l..} (upper) and -Gamma^l_{s b} T_{..l..}
    (lower), indexed [..., slots, s].
    """
    rank = rank_up + rank_down
    idx = _SLOTS[:rank]
    out = torch.zeros(t.shape + (4,), dtype=t.dtype)
    for i in range(rank):
        t_idx = _replace(idx, i, "y")
        if i < rank_up:
            expr = "...{},...{}zy->...{}z".format(t_idx, idx[i], idx)
            out = out + torch.einsum(expr, t, gamma)
        else:
            expr = "...{},...yz{}->...{}z".format(t_idx, idx[i], idx)
            out = out - torch.einsum(expr, t, gamma)
    return out


def covariant_derivative_from(t, dt, gamma, rank_up, rank_down):
    """
    nabla_s T from the values t[..., slots], partial derivatives dt[..., s, slots] and
    Christoffel symbols; the derivative slot is appended last.
    """
    rank = rank_up + rank_down
    partial = torch.movedim(dt, dt.dim() - rank - 1, -1)
    return partial + _connection_terms(t, gamma, rank_up, rank_down)


def _wrap(data, x, rank_up, rank_down):
    single = isinstance(x, SpacetimePoint) or as_coords(x).dim() == 1
    return Tensor4(rank_up, rank_down, data) if single else data


def covariant_derivative(tensor_field, rank_up, rank_down, metric_field, x):
    """
    Covariant derivative of a rank-(rank_up, rank_down) tensor field.

    Args:
        tensor_field (callable): single-point field (4,) -> (4,) * rank, contravariant
            slots first.
        metric_field (callable): metric field defining the Levi-Civita connection.
        x (SpacetimePoint or tensor): evaluation point(s).

    Return:
        Tensor4 of rank (rank_up, rank_down + 1) for a single point, otherwise the
        batched data with the derivative slot last.
    """
    check_field_domain(metric_field, x)
    mj = metric_jet(metric_field, x)
    check_invertible(mj.g)
    gamma = christoffel_symbols(mj.g, mj.jac)
    t, dt = derivatives(tensor_field, x, order=1)
    data = covariant_derivative_from(t, dt, gamma, rank_up, rank_down)
    return _wrap(data, x, rank_up, rank_down + 1)


def lie_derivative_from(t, dt, v, dv, rank_up, rank_down):
    """
    L_v T = v^s d_s T - sum_upper T^{..s..} d_s v^a + sum_lower T_{..s..} d_b v^s.

    `dt` and `dv` carry the derivative index last. Passing covariant derivatives for
    both gives the connection-independent covariant form.
    """
    rank = rank_up + rank_down
    idx = _SLOTS[:rank]
    out = torch.einsum("...{}z,...z->...{}".format(idx, idx), dt, v)
    for i in range(rank):
        t_idx = _replace(idx, i, "y")
        if i < rank_up:
            out = out - torch.einsum("...{},...{}y->...{}".format(t_idx, idx[i], idx), t, dv)
        else:
            out = out + torch.einsum("...{},...y{}->...{}".format(t_idx, idx[i], idx), t, dv)
    return out


def lie_derivative(tensor_field, rank_up, rank_down, vector_field, x, metric_field=None):
    """
    Lie derivative of a tensor field along a vector field.

    With `metric_field` the partial derivatives are replaced by Levi-Civita covariant
    derivatives; both forms agree.
    """
    t, dt = derivatives(tensor_field, x, order=1)
    v, dv = derivatives(vector_field, x, order=1)
    rank = rank_up + rank_down
    if metric_field is None:
        dt_last = torch.movedim(dt, dt.dim() - rank - 1, -1)
        dv_last = torch.movedim(dv, -2, -1)
    else:
        check_field_domain(metric_field, x)
        mj = metric_jet(metric_field, x)
        check_invertible(mj.g)
        gamma = christoffel_symbols(mj.g, mj.jac)
        dt_last = covariant_derivative_from(t, dt, gamma, rank_up, rank_down)
        dv_last = covariant_derivative_from(v, dv, gamma, 1, 0)
    data = lie_derivative_from(t, dt_last, v, dv_last, rank_up, rank_down)
    return _wrap(data, x, rank_up, rank_down)
